#pragma once

#include <span>
#include <utility>
#include <vector>

#include "cvtele/entanglement.hpp"
#include "cvtele/gaussian.hpp"
#include "cvtele/scalar_search.hpp"

namespace cvtele {

//! State of the unmeasured modes after Gaussian homodyne detections. The CM
//! does not depend on the measurement outcomes.
struct ConditionalState
{
  CovarianceMatrix cm;
  std::vector<int> kept_modes;      //!< original indices of the modes in cm, in order
  std::vector<int> measured_modes;  //!< original indices, in measurement order
  std::vector<Quadrature> quadratures;
};

//! Homodyne detection of one quadrature of one mode:
//!   A - C (Pi B Pi)^+ C^T,   (Pi B Pi)^+ = Pi / B_qq,
//! with A the kept block, B the measured 2x2 block and C their correlations.
ConditionalState homodyne_condition(const CovarianceMatrix& sigma, int mode, Quadrature quadrature);

//! p-detections on every mode except the pair `keep`, one at a time in
//! `order` (ascending index when empty). The result lists the kept modes
//! in the order given by `keep`.
ConditionalState localize(const CovarianceMatrix& sigma, std::pair<int, int> keep,
                          std::span<const int> order = {});

//! PPT eigenvalue of the two-mode state localized on modes (0, 1) of the
//! resource; for N = 2 the resource itself.
double localizable_eta(const ResourceSpec& spec, BiasMode mode = BiasMode::clamped);

//! E_F of the localized state at the optimal bias (clamped to [-rbar, rbar]).
double localizable_entanglement(const ResourceFamily& family, LogBase base = LogBase::two);

//! EPR quarter-sum (<(x1 - x2)^2> + <(p1 + p2)^2>) / 4 of the localized
//! state. Bounds the localized eta from above and meets it where the two
//! EPR variances balance.
double localized_epr_quarter_sum(const ResourceSpec& spec, BiasMode mode = BiasMode::clamped);

struct EprMinimum
{
  double d;
  double value;
};

//! Golden-section minimization of localized_epr_quarter_sum over d.
EprMinimum minimize_localized_epr(const ResourceFamily& family, SearchBounds d_bounds);

} // namespace cvtele
