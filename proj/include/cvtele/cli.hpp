#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cvtele/entanglement.hpp"

namespace cvtele::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2 };

//! Entry point of the `cvtele` tool; argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SweepConfig
{
  std::vector<int> n_list{2, 3, 4, 8, 20, 50};
  double n1 = 1.0;
  double n2 = 1.0;
  double rbar_min = 0.0;
  double rbar_max = 2.0;
  int steps = 41;
  LogBase base = LogBase::two;
};

struct SweepRow
{
  int n;
  double rbar;
  double f_opt;
  double f_equal;
  double f_unbiased;
  double f_worst;
  double eta_n;
  double e_t;
  double e_f_loc;
  std::optional<double> e_tau;
};

//! One row per (N, rbar), N-major. Rows are computed in parallel.
std::vector<SweepRow> sweep(const SweepConfig& config);

inline constexpr const char* kSweepHeader = "N,rbar,F_opt,F_equal,F_unbiased,F_worst,eta_N,E_T,E_F_loc,E_tau";

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const std::vector<SweepRow>& rows, const SweepConfig& config);

struct VerifyConfig
{
  std::uint64_t seed = 42;
  std::uint64_t samples = 200'000;
  bool inject_fault = false;
};

struct SuiteResult
{
  std::string name;
  double max_deviation;
  double tolerance;
  bool passed;
  std::string worst_point; //!< grid point of the largest deviation
};

//! Cross-checks closed forms, CM pipeline, numerical optimizer, localization
//! and Monte Carlo against each other.
std::vector<SuiteResult> verify(const VerifyConfig& config);

} // namespace cvtele::cli
