#include "cvtele/localization.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "cvtele/errors.hpp"
#include "cvtele/optimizer.hpp"

namespace cvtele {

namespace {

// Conditions the matrix in place; `mode` indexes the current (shrinking) layout.
Matrix condition_matrix(const Matrix& m, int mode, Quadrature quadrature)
{
  const auto dim = m.rows();
  const auto n = dim / 2;
  const int q = 2 * mode + (quadrature == Quadrature::x ? 0 : 1);
  const double b_qq = m(q, q);
  if (!(b_qq > 0.0))
    throw NumericalFailure("homodyne_condition: measured variance is not positive");

  std::vector<Eigen::Index> kept;
  kept.reserve(static_cast<std::size_t>(dim - 2));
  for (Eigen::Index k = 0; k < n; ++k) {
    if (k == mode)
      continue;
    kept.push_back(2 * k);
    kept.push_back(2 * k + 1);
  }
  const auto size = static_cast<Eigen::Index>(kept.size());
  Matrix a(size, size);
  Vector c(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    c(i) = m(kept[i], q);
    for (Eigen::Index j = 0; j < size; ++j)
      a(i, j) = m(kept[i], kept[j]);
  }
  // rank-one update: only the measured quadrature's column of C survives Pi
  return a - (c * c.transpose()) / b_qq;
}

} // namespace

ConditionalState homodyne_condition(const CovarianceMatrix& sigma, int mode, Quadrature quadrature)
{
  const int n = sigma.n_modes();
  if (n < 2)
    throw InvalidArgument("homodyne_condition: need at least two modes");
  if (mode < 0 || mode >= n)
    throw InvalidArgument("homodyne_condition: mode " + std::to_string(mode) + " out of range");

  std::vector<int> kept(static_cast<std::size_t>(n));
  std::iota(kept.begin(), kept.end(), 0);
  kept.erase(kept.begin() + mode);
  return {CovarianceMatrix::from_matrix(condition_matrix(sigma.matrix(), mode, quadrature)), std::move(kept),
          {mode}, {quadrature}};
}

ConditionalState localize(const CovarianceMatrix& sigma, std::pair<int, int> keep, std::span<const int> order)
{
  const int n = sigma.n_modes();
  if (n < 3)
    throw InvalidArgument("localize: need at least three modes");
  const auto [k, l] = keep;
  if (k < 0 || k >= n || l < 0 || l >= n || k == l)
    throw InvalidArgument("localize: invalid pair of kept modes");

  std::vector<int> to_measure;
  if (order.empty()) {
    for (int j = 0; j < n; ++j)
      if (j != k && j != l)
        to_measure.push_back(j);
  } else {
    to_measure.assign(order.begin(), order.end());
    std::set<int> expected;
    for (int j = 0; j < n; ++j)
      if (j != k && j != l)
        expected.insert(j);
    if (std::set<int>(to_measure.begin(), to_measure.end()) != expected || to_measure.size() != expected.size())
      throw InvalidArgument("localize: order must list every non-kept mode exactly once");
  }

  Matrix m = sigma.matrix();
  std::vector<int> current(static_cast<std::size_t>(n));
  std::iota(current.begin(), current.end(), 0);
  for (int original : to_measure) {
    const auto pos = std::find(current.begin(), current.end(), original) - current.begin();
    m = condition_matrix(m, static_cast<int>(pos), Quadrature::p);
    current.erase(current.begin() + pos);
  }

  // current holds {k, l} in ascending order; present them as requested
  if (current.front() != k) {
    Matrix swapped(4, 4);
    swapped << m.block<2, 2>(2, 2), m.block<2, 2>(2, 0), m.block<2, 2>(0, 2), m.block<2, 2>(0, 0);
    m = swapped;
  }
  return {CovarianceMatrix::from_matrix(std::move(m)), {k, l}, std::move(to_measure),
          std::vector<Quadrature>(static_cast<std::size_t>(n - 2), Quadrature::p)};
}

namespace {

CovarianceMatrix localized_cm(const ResourceSpec& spec, BiasMode mode)
{
  const auto sigma = build_resource(spec, mode);
  if (spec.modes == 2)
    return sigma;
  return localize(sigma, {0, 1}).cm;
}

} // namespace

double localizable_eta(const ResourceSpec& spec, BiasMode mode)
{
  return eta_two_mode(localized_cm(spec, mode));
}

double localizable_entanglement(const ResourceFamily& family, LogBase base)
{
  const auto best = optimal_fidelity(family, BiasMode::clamped);
  return eof_symmetric(localizable_eta(family.at(best.d_opt), BiasMode::clamped), base);
}

double localized_epr_quarter_sum(const ResourceSpec& spec, BiasMode mode)
{
  return epr_quarter_sum(localized_cm(spec, mode));
}

EprMinimum minimize_localized_epr(const ResourceFamily& family, SearchBounds d_bounds)
{
  validate(family);
  const auto objective = [&family](double d) {
    return localized_epr_quarter_sum(family.at(d), BiasMode::unconstrained);
  };
  const double d = minimize_convex(objective, d_bounds);
  return {d, objective(d)};
}

} // namespace cvtele
