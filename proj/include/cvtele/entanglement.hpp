#pragma once

#include <limits>
#include <optional>

#include "cvtele/gaussian.hpp"

namespace cvtele {

//! Logarithm base for entropic quantities. Base 2 reports ebits.
enum class LogBase { two, e };

//! Block form sigma = [[alpha, gamma], [gamma^T, beta]] of a two-mode CM.
struct TwoModeBlocks
{
  Eigen::Matrix2d alpha;
  Eigen::Matrix2d beta;
  Eigen::Matrix2d gamma;

  static TwoModeBlocks from(const CovarianceMatrix& sigma);
  Eigen::Matrix4d assemble() const;
};

//! Smallest symplectic eigenvalue of the partial transpose of a two-mode CM,
//! 2 eta^2 = S - sqrt(S^2 - 4 det sigma) with S = det alpha + det beta - 2 det gamma.
double eta_two_mode(const CovarianceMatrix& sigma);

//! sqrt(n1 n2) e^{-(r1 + r2)} for the two-mode noisy squeezed resource.
double eta_closed_form(double n1, double n2, double r1, double r2);

//! PPT violation: eta < 1.
bool is_entangled(double eta);

//! Coefficients a = (1+x)^2/4x and b = (1-x)^2/4x of f(x); a - b = 1.
struct EntropyCoefficients
{
  double a;
  double b;
};
EntropyCoefficients entropy_coefficients(double x);

//! f(x) = a log a - b log b.
double entropy_function(double x, LogBase base = LogBase::two);

//! Entanglement of formation of a symmetric two-mode Gaussian state,
//! max{0, f(eta)}.
double eof_symmetric(double eta, LogBase base = LogBase::two);

//! Generalized eigenvalue of the N-mode resource,
//! sqrt(N n1 n2 / (2 e^{4 rbar} + (N-2) n1/n2)). The bias d is ignored.
double eta_generalized(const ResourceSpec& spec);

//! max{0, (1 - eta_N) / (1 + eta_N)}.
double entanglement_of_teleportation(double eta_n);

//! Inverse of the Moebius map above, (1 - E_T) / (1 + E_T).
double eta_from_teleportation(double e_t);

//! f((1 - E_T) / (1 + E_T)).
double eof_localizable(double e_t, LogBase base = LogBase::two);

//! Returned by contangle_from_ET once E_T is within 1e-12 of 1 (GHZ limit).
inline constexpr double kContangleDivergent = std::numeric_limits<double>::infinity();

//! Residual contangle of a pure symmetric three-mode resource as a function
//! of its entanglement of teleportation. Only meaningful for that family;
//! see contangle_if_pure for the gated entry point.
double contangle_from_ET(double e_t, LogBase base = LogBase::two);

//! contangle_from_ET(E_T) when sigma is a three-mode state with purity 1
//! (within 1e-9); nullopt otherwise.
std::optional<double> contangle_if_pure(const CovarianceMatrix& sigma, double e_t,
                                        LogBase base = LogBase::two);

//! (<(x1 - x2)^2> + <(p1 + p2)^2>) / 4 evaluated on sigma as given.
double epr_quarter_sum(const CovarianceMatrix& sigma);

//! EPR estimate of eta for a symmetric two-mode state (det alpha = det beta).
//!
//! Equal local squeezing of both modes rescales <(x1 - x2)^2> by e^{2s} and
//! <(p1 + p2)^2> by e^{-2s}; at the balancing s the quarter-sum equals
//! sqrt(<(x1 - x2)^2> <(p1 + p2)^2>) / 2, which is what is returned. For
//! EPR-correlated states (x-p uncorrelated, <x1 x2> > 0 > <p1 p2>) this is
//! eta exactly; without balancing the raw quarter-sum only bounds it.
double epr_eta_symmetric(const CovarianceMatrix& sigma);

//! Entanglement figures for one resource.
struct EntanglementReport
{
  double eta;                 //!< PPT eigenvalue, bipartition mode 0 | rest
  double eta_n;               //!< generalized eigenvalue eta_N
  std::optional<double> e_f;  //!< two-mode EoF, only for N = 2
  double e_t;                 //!< entanglement of teleportation
  double e_f_loc;             //!< localizable entanglement of formation
  std::optional<double> e_tau; //!< contangle, only for pure three-mode resources
};

EntanglementReport entanglement_report(const ResourceSpec& spec, LogBase base = LogBase::two,
                                       BiasMode mode = BiasMode::clamped);

} // namespace cvtele
