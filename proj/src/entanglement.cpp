#include "cvtele/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "cvtele/errors.hpp"

namespace cvtele {

namespace {

double log_in(double v, LogBase base)
{
  return base == LogBase::two ? std::log2(v) : std::log(v);
}

void require_two_modes(const CovarianceMatrix& sigma, const char* who)
{
  if (sigma.n_modes() != 2)
    throw DimensionMismatch(std::string(who) + ": expected a two-mode CM, got " +
                            std::to_string(sigma.n_modes()) + " modes");
}

void require_teleportation_range(double e_t, const char* who)
{
  if (!(e_t >= 0.0 && e_t < 1.0))
    throw InvalidArgument(std::string(who) + ": E_T must lie in [0, 1)");
}

} // namespace

TwoModeBlocks TwoModeBlocks::from(const CovarianceMatrix& sigma)
{
  require_two_modes(sigma, "TwoModeBlocks::from");
  return {sigma.block(0, 0), sigma.block(1, 1), sigma.block(0, 1)};
}

Eigen::Matrix4d TwoModeBlocks::assemble() const
{
  Eigen::Matrix4d m;
  m << alpha, gamma, gamma.transpose(), beta;
  return m;
}

double eta_two_mode(const CovarianceMatrix& sigma)
{
  const auto b = TwoModeBlocks::from(sigma);
  const double sigma_inv = b.alpha.determinant() + b.beta.determinant() - 2.0 * b.gamma.determinant();
  const double det = sigma.matrix().determinant();
  double disc = sigma_inv * sigma_inv - 4.0 * det;
  if (disc < 0.0) {
    if (disc < -1e-9 * std::max(1.0, sigma_inv * sigma_inv))
      throw NumericalFailure("eta_two_mode: negative discriminant " + std::to_string(disc));
    disc = 0.0;
  }
  // (S - sqrt(disc)) / 2 rewritten to avoid cancellation when eta is small
  const double denom = sigma_inv + std::sqrt(disc);
  if (!(denom > 0.0) || !(det > 0.0))
    throw NumericalFailure("eta_two_mode: degenerate covariance matrix");
  return std::sqrt(2.0 * det / denom);
}

double eta_closed_form(double n1, double n2, double r1, double r2)
{
  return std::sqrt(n1 * n2) * std::exp(-(r1 + r2));
}

bool is_entangled(double eta)
{
  return eta < 1.0;
}

EntropyCoefficients entropy_coefficients(double x)
{
  if (!(x > 0.0))
    throw InvalidArgument("entropy_coefficients: argument must be positive");
  return {(1.0 + x) * (1.0 + x) / (4.0 * x), (1.0 - x) * (1.0 - x) / (4.0 * x)};
}

double entropy_function(double x, LogBase base)
{
  const auto [a, b] = entropy_coefficients(x);
  const double tail = b > 0.0 ? b * log_in(b, base) : 0.0;
  return a * log_in(a, base) - tail;
}

double eof_symmetric(double eta, LogBase base)
{
  if (!(eta > 0.0))
    throw InvalidArgument("eof_symmetric: eta must be positive");
  if (eta >= 1.0)
    return 0.0;
  return std::max(0.0, entropy_function(eta, base));
}

double eta_generalized(const ResourceSpec& spec)
{
  validate(spec, BiasMode::unconstrained);
  const double n = spec.modes;
  return std::sqrt(n * spec.n1 * spec.n2 /
                   (2.0 * std::exp(4.0 * spec.rbar) + (n - 2.0) * spec.n1 / spec.n2));
}

double entanglement_of_teleportation(double eta_n)
{
  if (!(eta_n > 0.0))
    throw InvalidArgument("entanglement_of_teleportation: eta_N must be positive");
  return std::max(0.0, (1.0 - eta_n) / (1.0 + eta_n));
}

double eta_from_teleportation(double e_t)
{
  require_teleportation_range(e_t, "eta_from_teleportation");
  return (1.0 - e_t) / (1.0 + e_t);
}

double eof_localizable(double e_t, LogBase base)
{
  require_teleportation_range(e_t, "eof_localizable");
  return eof_symmetric(eta_from_teleportation(e_t), base);
}

double contangle_from_ET(double e_t, LogBase base)
{
  if (!(e_t >= 0.0))
    throw InvalidArgument("contangle_from_ET: E_T must be >= 0");
  if (e_t >= 1.0 - 1e-12)
    return kContangleDivergent;
  const double e = e_t;
  // (2 sqrt2 E - (E+1) sqrt(E^2+1)) / ((E-1) sqrt(E^2+4E+1)), rationalized:
  // the numerator equals -(1-E)^2 (E^2+4E+1) / (2 sqrt2 E + (E+1) sqrt(E^2+1)).
  const double q = e * e + 4.0 * e + 1.0;
  const double first = (1.0 - e) * std::sqrt(q) /
                       (2.0 * std::numbers::sqrt2 * e + (e + 1.0) * std::sqrt(e * e + 1.0));
  const double second = (e * e + 1.0) / q;
  const double l1 = log_in(first, base);
  const double l2 = log_in(second, base);
  return l1 * l1 - 0.5 * l2 * l2;
}

std::optional<double> contangle_if_pure(const CovarianceMatrix& sigma, double e_t, LogBase base)
{
  if (sigma.n_modes() != 3 || std::abs(purity(sigma) - 1.0) > 1e-9)
    return std::nullopt;
  return contangle_from_ET(e_t, base);
}

namespace {

struct EprVariances
{
  double x_rel;
  double p_sum;
};

EprVariances epr_variances(const CovarianceMatrix& sigma)
{
  require_two_modes(sigma, "epr_variances");
  const auto& m = sigma.matrix();
  return {m(0, 0) + m(2, 2) - 2.0 * m(0, 2), m(1, 1) + m(3, 3) + 2.0 * m(1, 3)};
}

} // namespace

double epr_quarter_sum(const CovarianceMatrix& sigma)
{
  const auto v = epr_variances(sigma);
  return 0.25 * (v.x_rel + v.p_sum);
}

double epr_eta_symmetric(const CovarianceMatrix& sigma)
{
  const auto b = TwoModeBlocks::from(sigma);
  const double da = b.alpha.determinant();
  const double db = b.beta.determinant();
  if (std::abs(da - db) > 1e-9 * std::max({1.0, std::abs(da), std::abs(db)}))
    throw InvalidArgument("epr_eta_symmetric: state is not symmetric (det alpha != det beta)");
  const auto v = epr_variances(sigma);
  return 0.5 * std::sqrt(v.x_rel * v.p_sum);
}

EntanglementReport entanglement_report(const ResourceSpec& spec, LogBase base, BiasMode mode)
{
  const auto sigma = build_resource(spec, mode);
  const std::array<int, 1> first{0};
  const double eta = symplectic_eigenvalues(partial_transpose(sigma, first)).front();

  EntanglementReport report{};
  report.eta = eta;
  report.eta_n = eta_generalized(spec);
  if (spec.modes == 2)
    report.e_f = eof_symmetric(eta_two_mode(sigma), base);
  report.e_t = entanglement_of_teleportation(report.eta_n);
  report.e_f_loc = eof_localizable(report.e_t, base);
  report.e_tau = contangle_if_pure(sigma, report.e_t, base);
  return report;
}

} // namespace cvtele
