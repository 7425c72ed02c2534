#include "cvtele/optimizer.hpp"

#include <algorithm>
#include <cmath>

#include "cvtele/entanglement.hpp"
#include "cvtele/errors.hpp"
#include "cvtele/teleportation.hpp"

namespace cvtele {

namespace {

// N / [(N-2) + 2 e^{4 rbar} n2/n1], shared by the gain and bias optima.
double optimum_ratio(int n_modes, double n1, double n2, double rbar)
{
  const double n = n_modes;
  return n / ((n - 2.0) + 2.0 * std::exp(4.0 * rbar) * n2 / n1);
}

void check_family(int n_modes, double n1, double n2, double rbar)
{
  validate(ResourceFamily{n_modes, n1, n2, rbar});
}

} // namespace

double d_opt_two_mode(double n1, double n2)
{
  check_family(2, n1, n2, 0.0);
  return 0.25 * std::log(n1 / n2);
}

double g_N_opt(int n_modes, double n1, double n2, double rbar)
{
  check_family(n_modes, n1, n2, rbar);
  if (n_modes == 2)
    return 1.0;
  return 1.0 - optimum_ratio(n_modes, n1, n2, rbar);
}

double d_N_opt(int n_modes, double n1, double n2, double rbar)
{
  check_family(n_modes, n1, n2, rbar);
  return rbar + 0.25 * std::log(optimum_ratio(n_modes, n1, n2, rbar));
}

double clamp_bias(double d, double rbar)
{
  return std::clamp(d, -rbar, rbar);
}

OptimizationResult optimal_fidelity(const ResourceFamily& family, BiasMode mode)
{
  validate(family);
  const double raw = d_N_opt(family.modes, family.n1, family.n2, family.rbar);
  const double g = g_N_opt(family.modes, family.n1, family.n2, family.rbar);
  const double eta_n = eta_generalized(family.at(0.0));

  OptimizationResult result{raw, g, 1.0 / (1.0 + eta_n), eta_n, OptimizationMethod::closed_form, false};
  if (mode == BiasMode::clamped) {
    const double d = clamp_bias(raw, family.rbar);
    if (d != raw) {
      result.d_opt = d;
      result.at_boundary = true;
      result.fidelity_opt = fidelity_network_closed_form(family.at(d), g).fidelity;
    }
  }
  return result;
}

PhiObjective closed_form_phi(const ResourceFamily& family)
{
  validate(family);
  return [family](double d, double g) {
    const auto v = variances_closed_form_network(family.at(d), g);
    return (v.x_rel + 2.0) * (v.p_tot + 2.0) / 4.0;
  };
}

PhiObjective pipeline_phi(const ResourceFamily& family)
{
  validate(family);
  return [family](double d, double g) {
    const auto sigma = build_resource(family.at(d), BiasMode::unconstrained);
    const auto v = teleported_variances(sigma, ProtocolParams{0, 1, g});
    return (v.x_rel + 2.0) * (v.p_tot + 2.0) / 4.0;
  };
}

SearchBounds default_gain_bounds(int n_modes)
{
  return {-static_cast<double>(n_modes), 2.0};
}

double minimize_gain(const PhiObjective& phi, double d, SearchBounds gain_bounds)
{
  return minimize_convex([&](double g) { return phi(d, g); }, gain_bounds);
}

OptimizationResult numerical_optimum(const ResourceFamily& family, SearchBounds d_bounds, const PhiObjective& phi)
{
  validate(family);
  const PhiObjective objective = phi ? phi : closed_form_phi(family);
  const SearchBounds g_bounds = default_gain_bounds(family.modes);
  const bool gain_inert = family.modes == 2;

  const auto profile = [&](double d) {
    const double g = gain_inert ? 1.0 : minimize_gain(objective, d, g_bounds);
    return objective(d, g);
  };
  const double d = minimize_convex(profile, d_bounds);
  const double g = gain_inert ? 1.0 : minimize_gain(objective, d, g_bounds);
  const double phi_min = objective(d, g);
  if (!std::isfinite(phi_min) || !(phi_min > 0.0))
    throw NumericalFailure("numerical_optimum: non-finite objective at the optimum");

  const double fidelity = 1.0 / std::sqrt(phi_min);
  // phi_min = (1 + eta)^2 at the optimum
  return {d, g, fidelity, 1.0 / fidelity - 1.0, OptimizationMethod::numerical, false};
}

WorstCase worst_case(const ResourceFamily& family)
{
  validate(family);
  const double lo = fidelity_network_closed_form(family.at(-family.rbar)).fidelity;
  const double hi = fidelity_network_closed_form(family.at(family.rbar)).fidelity;
  if (lo < hi)
    return {-family.rbar, lo, true};
  return {family.rbar, hi, false};
}

bool worst_is_r1_zero(const ResourceFamily& family)
{
  validate(family);
  const double n = family.modes;
  const double e4 = std::exp(4.0 * family.rbar);
  return family.n1 > 2.0 * family.n2 * e4 / (n * e4 + 2.0 - n);
}

UnbiasedBias d_unbiased(const ResourceFamily& family)
{
  validate(family);
  const double rbar = family.rbar;
  const double others = family.modes - 1.0;
  const auto imbalance = [&](double d) {
    return family.n1 * std::sinh(2.0 * (rbar + d)) - others * family.n2 * std::sinh(2.0 * (rbar - d));
  };
  if (rbar == 0.0)
    return {0.0, false};
  const double at_lo = imbalance(-rbar);
  const double at_hi = imbalance(rbar);
  if (at_lo > 0.0)
    return {-rbar, true};
  if (at_hi < 0.0)
    return {rbar, true};
  return {bisect_root(imbalance, {-rbar, rbar}), false};
}

} // namespace cvtele
