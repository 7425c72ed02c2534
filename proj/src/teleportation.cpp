#include "cvtele/teleportation.hpp"

#include <cmath>
#include <string>

#include "cvtele/errors.hpp"
#include "cvtele/optimizer.hpp"

namespace cvtele {

namespace {

void check_params(const ProtocolParams& params, int n_modes)
{
  const auto in_range = [n_modes](int m) { return m >= 0 && m < n_modes; };
  if (!in_range(params.sender) || !in_range(params.receiver))
    throw InvalidArgument("ProtocolParams: sender/receiver index out of range for " +
                          std::to_string(n_modes) + " modes");
  if (params.sender == params.receiver)
    throw InvalidArgument("ProtocolParams: sender and receiver must differ");
  if (params.gain && !std::isfinite(*params.gain))
    throw InvalidArgument("ProtocolParams: gain must be finite");
}

double resolve_gain(const ResourceSpec& spec, const std::optional<double>& gain)
{
  return gain ? *gain : g_N_opt(spec.modes, spec.n1, spec.n2, spec.rbar);
}

} // namespace

TeleportVariances teleported_variances(const CovarianceMatrix& sigma, const ProtocolParams& params)
{
  const int n = sigma.n_modes();
  check_params(params, n);
  if (!params.gain)
    throw InvalidArgument("teleported_variances: an explicit gain is required");
  const double g = *params.gain;

  Vector u = Vector::Zero(2 * n);
  u(2 * params.sender) = 1.0;
  u(2 * params.receiver) = -1.0;

  Vector v = Vector::Constant(2 * n, 0.0);
  for (int j = 0; j < n; ++j)
    v(2 * j + 1) = (j == params.sender || j == params.receiver) ? 1.0 : g;

  return {quadratic_form(sigma, u), quadratic_form(sigma, v)};
}

double fidelity_from_variances(double var_x_rel, double var_p_tot)
{
  if (!(var_x_rel >= 0.0) || !(var_p_tot >= 0.0))
    throw InvalidArgument("fidelity_from_variances: variances must be nonnegative");
  return 1.0 / std::sqrt((var_x_rel + 2.0) * (var_p_tot + 2.0) / 4.0);
}

double phi_two_mode(double rbar, double d, double n1, double n2)
{
  return std::exp(-4.0 * rbar) * (std::exp(2.0 * (rbar + d)) + n1) * (std::exp(2.0 * (rbar - d)) + n2);
}

TeleportVariances variances_closed_form_network(const ResourceSpec& spec, double gain)
{
  validate(spec, BiasMode::unconstrained);
  const double n = spec.modes;
  const double coop = n - 2.0;
  const double x_rel = 2.0 * spec.n2 * std::exp(-2.0 * spec.r2());
  const double lead = 2.0 + coop * gain;
  const double p_tot = (lead * lead * spec.n1 * std::exp(-2.0 * spec.r1()) +
                        2.0 * (gain - 1.0) * (gain - 1.0) * coop * spec.n2 * std::exp(2.0 * spec.r2())) /
                       n;
  return {x_rel, p_tot};
}

TeleportOutcome fidelity_network(const ResourceSpec& spec, const ProtocolParams& params, BiasMode mode)
{
  validate(spec, mode);
  check_params(params, spec.modes);
  const double g = resolve_gain(spec, params.gain);
  ProtocolParams explicit_params = params;
  explicit_params.gain = g;
  const auto v = teleported_variances(build_resource(spec, mode), explicit_params);
  return {v.x_rel, v.p_tot, g, fidelity_from_variances(v.x_rel, v.p_tot)};
}

TeleportOutcome fidelity_network_closed_form(const ResourceSpec& spec, std::optional<double> gain, BiasMode mode)
{
  validate(spec, mode);
  const double g = resolve_gain(spec, gain);
  const auto v = variances_closed_form_network(spec, g);
  return {v.x_rel, v.p_tot, g, fidelity_from_variances(v.x_rel, v.p_tot)};
}

} // namespace cvtele
