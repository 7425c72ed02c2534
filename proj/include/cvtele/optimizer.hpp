#pragma once

#include <functional>

#include "cvtele/gaussian.hpp"
#include "cvtele/scalar_search.hpp"

namespace cvtele {

enum class OptimizationMethod { closed_form, numerical };

struct OptimizationResult
{
  double d_opt;
  double g_opt;
  double fidelity_opt;
  double eta_n;
  OptimizationMethod method;
  //! The unconstrained optimum fell outside [-rbar, rbar] and d_opt was clamped.
  bool at_boundary = false;
};

//! (1/4) ln(n1 / n2).
double d_opt_two_mode(double n1, double n2);

//! 1 - N / [(N-2) + 2 e^{4 rbar} n2/n1]. Independent of d. For N = 2 the
//! gain multiplies nothing and 1 is returned.
double g_N_opt(int n_modes, double n1, double n2, double rbar);

//! rbar + ln{N / [(N-2) + 2 e^{4 rbar} n2/n1]} / 4, unclamped.
double d_N_opt(int n_modes, double n1, double n2, double rbar);

//! d clipped into [-rbar, rbar].
double clamp_bias(double d, double rbar);

//! Optimal gain and bias with the resulting fidelity.
//!
//! Unconstrained: fidelity 1 / (1 + eta_N). Clamped: when the raw d_N^opt
//! lies outside [-rbar, rbar] the fidelity is evaluated at the clamped bias
//! (phi is convex in d, so that is the constrained optimum) and
//! `at_boundary` is set.
OptimizationResult optimal_fidelity(const ResourceFamily& family, BiasMode mode = BiasMode::clamped);

//! phi(d, g) to be minimized; F = phi^{-1/2}.
using PhiObjective = std::function<double(double d, double g)>;

//! phi from the closed-form network variances.
PhiObjective closed_form_phi(const ResourceFamily& family);

//! phi from quadratic forms on the built covariance matrix.
PhiObjective pipeline_phi(const ResourceFamily& family);

//! Default gain bracket [-N, 2]; contains g_N^opt for every N >= 3.
SearchBounds default_gain_bounds(int n_modes);

//! argmin over g of phi(d, g) at fixed d.
double minimize_gain(const PhiObjective& phi, double d, SearchBounds gain_bounds);

//! Nested golden-section minimization of phi over (d, g): the inner search
//! optimizes g at each trial d, the outer one d. Both axes are convex.
//! Independent of the closed-form optimizer; used as its oracle.
OptimizationResult numerical_optimum(const ResourceFamily& family, SearchBounds d_bounds,
                                     const PhiObjective& phi = {});

struct WorstCase
{
  double d_worst;
  double fidelity_worst;
  bool r1_zero; //!< true when the worst boundary is d = -rbar
};

//! Lowest optimal-gain fidelity over d in [-rbar, rbar]. By convexity of phi
//! it sits on a boundary; both are evaluated and the lower one returned.
WorstCase worst_case(const ResourceFamily& family);

//! Threshold form of the boundary choice: r1 = 0 is the worse preparation
//! iff n1 > 2 n2 e^{4 rbar} / (N e^{4 rbar} + 2 - N). Ties go to r2 = 0.
bool worst_is_r1_zero(const ResourceFamily& family);

struct UnbiasedBias
{
  double d;
  bool at_boundary; //!< no interior root; d is the nearer endpoint
};

//! Bias giving equal x and p variances on every output mode:
//! n1 sinh(2(rbar + d)) = (N-1) n2 sinh(2(rbar - d)), solved by bisection.
UnbiasedBias d_unbiased(const ResourceFamily& family);

} // namespace cvtele
