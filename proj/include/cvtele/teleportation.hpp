#pragma once

#include <optional>

#include "cvtele/gaussian.hpp"

namespace cvtele {

//! Sender/receiver choice and feed-forward gain of the network protocol.
struct ProtocolParams
{
  int sender = 0;
  int receiver = 1;
  //! nullopt selects the optimal gain g_N^opt.
  std::optional<double> gain;
};

//! Variances of x_rel = x_k - x_l and p_tot = p_k + p_l + g sum_{j != k,l} p_j.
struct TeleportVariances
{
  double x_rel;
  double p_tot;
};

struct TeleportOutcome
{
  double var_x_rel;
  double var_p_tot;
  double gain_used;
  double fidelity;
};

//! Quadratic forms of x_rel and p_tot on sigma. `params.gain` must be set.
TeleportVariances teleported_variances(const CovarianceMatrix& sigma, const ProtocolParams& params);

//! Coherent-state fidelity [(Vx + 2)(Vp + 2) / 4]^{-1/2}; the unit input
//! variance is included in each teleported quadrature.
double fidelity_from_variances(double var_x_rel, double var_p_tot);

//! phi = e^{-4 rbar} (e^{2(rbar + d)} + n1)(e^{2(rbar - d)} + n2), so that
//! F = phi^{-1/2} for the two-user protocol.
double phi_two_mode(double rbar, double d, double n1, double n2);

//! Closed-form network variances:
//!   Vx = 2 n2 e^{-2(rbar - d)}
//!   Vp = {[2 + (N-2) g]^2 n1 e^{-2(rbar + d)} + 2 (g-1)^2 (N-2) n2 e^{2(rbar - d)}} / N
TeleportVariances variances_closed_form_network(const ResourceSpec& spec, double gain);

//! Fidelity of the network protocol evaluated on the built covariance matrix.
TeleportOutcome fidelity_network(const ResourceSpec& spec, const ProtocolParams& params = {},
                                 BiasMode mode = BiasMode::clamped);

//! Same outcome from the closed-form variances (sender/receiver are
//! irrelevant by symmetry); used for dense scans.
TeleportOutcome fidelity_network_closed_form(const ResourceSpec& spec, std::optional<double> gain = std::nullopt,
                                             BiasMode mode = BiasMode::clamped);

} // namespace cvtele
