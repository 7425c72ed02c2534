#include "cvtele/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "cvtele/errors.hpp"

namespace cvtele {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kSymplecticTol = 1e-12;

double max_abs(const Matrix& m)
{
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_mode(int mode, int n_modes, const char* who)
{
  if (mode < 0 || mode >= n_modes)
    throw InvalidArgument(std::string(who) + ": mode index " + std::to_string(mode) +
                          " out of range for " + std::to_string(n_modes) + " modes");
}

void require_noise(double n, const char* who)
{
  if (!(n >= 1.0))
    throw UnphysicalNoise(std::string(who) + ": thermal noise must be >= 1, got " + std::to_string(n));
}

// Symmetric squeezed thermal block for any sign of r; a negative squeezing
// along one axis is a positive squeezing along the other.
Eigen::Matrix2d squeezed_block(double n, double r, SqueezeAxis axis)
{
  const double big = n * std::exp(2.0 * r);
  const double small = n * std::exp(-2.0 * r);
  Eigen::Matrix2d b = Eigen::Matrix2d::Zero();
  if (axis == SqueezeAxis::momentum) {
    b(0, 0) = big;
    b(1, 1) = small;
  } else {
    b(0, 0) = small;
    b(1, 1) = big;
  }
  return b;
}

} // namespace

CovarianceMatrix CovarianceMatrix::from_matrix(Matrix m)
{
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0)
    throw DimensionMismatch("CovarianceMatrix: expected a non-empty 2N x 2N matrix, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  if (!m.allFinite())
    throw InvalidArgument("CovarianceMatrix: non-finite entry");
  const double scale = std::max(1.0, max_abs(m));
  if (max_abs(m - m.transpose()) > kSymmetryTol * scale)
    throw InvalidArgument("CovarianceMatrix: matrix is not symmetric");
  Matrix sym = 0.5 * (m + m.transpose());
  return CovarianceMatrix(std::move(sym));
}

Eigen::Matrix2d CovarianceMatrix::block(int a, int b) const
{
  require_mode(a, n_modes(), "CovarianceMatrix::block");
  require_mode(b, n_modes(), "CovarianceMatrix::block");
  return m_.block<2, 2>(2 * a, 2 * b);
}

bool CovarianceMatrix::is_physical(double tol) const
{
  try {
    const auto nu = symplectic_eigenvalues(m_);
    return nu.front() >= 1.0 - tol;
  } catch (const NumericalFailure&) {
    return false;
  }
}

SymplecticTransform SymplecticTransform::identity(int n_modes)
{
  if (n_modes < 1)
    throw InvalidArgument("SymplecticTransform::identity: n_modes must be >= 1");
  return SymplecticTransform(Matrix::Identity(2 * n_modes, 2 * n_modes));
}

SymplecticTransform SymplecticTransform::from_matrix(Matrix s)
{
  if (s.rows() != s.cols() || s.rows() == 0 || s.rows() % 2 != 0)
    throw DimensionMismatch("SymplecticTransform: expected a non-empty 2N x 2N matrix");
  const Matrix omega = symplectic_form(static_cast<int>(s.rows() / 2));
  const double scale = std::max(1.0, max_abs(s) * max_abs(s));
  if (max_abs(s * omega * s.transpose() - omega) > kSymplecticTol * scale * s.rows())
    throw InvalidArgument("SymplecticTransform: matrix does not preserve the symplectic form");
  return SymplecticTransform(std::move(s));
}

SymplecticTransform SymplecticTransform::inverse() const
{
  const Matrix omega = symplectic_form(n_modes());
  return SymplecticTransform(-omega * s_.transpose() * omega);
}

SymplecticTransform operator*(const SymplecticTransform& a, const SymplecticTransform& b)
{
  if (a.n_modes() != b.n_modes())
    throw DimensionMismatch("SymplecticTransform: composing transforms of different size");
  return SymplecticTransform(a.s_ * b.s_);
}

void validate(const ResourceSpec& spec, BiasMode mode)
{
  if (spec.modes < 2)
    throw InvalidArgument("ResourceSpec: need at least 2 modes, got " + std::to_string(spec.modes));
  require_noise(spec.n1, "ResourceSpec n1");
  require_noise(spec.n2, "ResourceSpec n2");
  if (!std::isfinite(spec.rbar) || spec.rbar < 0.0)
    throw InvalidArgument("ResourceSpec: rbar must be finite and >= 0");
  if (!std::isfinite(spec.d))
    throw InvalidArgument("ResourceSpec: d must be finite");
  if (mode == BiasMode::clamped && std::abs(spec.d) > spec.rbar)
    throw InvalidArgument("ResourceSpec: |d| must not exceed rbar (both squeezings nonnegative)");
}

void validate(const ResourceFamily& family)
{
  validate(family.at(0.0), BiasMode::clamped);
}

Matrix symplectic_form(int n_modes)
{
  Matrix omega = Matrix::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

CovarianceMatrix vacuum_cm(int n_modes)
{
  if (n_modes < 1)
    throw InvalidArgument("vacuum_cm: n_modes must be >= 1");
  return CovarianceMatrix::from_matrix(Matrix::Identity(2 * n_modes, 2 * n_modes));
}

CovarianceMatrix squeezed_thermal_cm(double n, double r, SqueezeAxis axis)
{
  require_noise(n, "squeezed_thermal_cm");
  if (!std::isfinite(r) || r < 0.0)
    throw InvalidArgument("squeezed_thermal_cm: squeezing must be finite and >= 0");
  return CovarianceMatrix::from_matrix(squeezed_block(n, r, axis));
}

CovarianceMatrix direct_sum(const CovarianceMatrix& a, const CovarianceMatrix& b)
{
  const auto na = a.matrix().rows();
  const auto nb = b.matrix().rows();
  Matrix m = Matrix::Zero(na + nb, na + nb);
  m.topLeftCorner(na, na) = a.matrix();
  m.bottomRightCorner(nb, nb) = b.matrix();
  return CovarianceMatrix::from_matrix(std::move(m));
}

SymplecticTransform squeezer(double r, int mode, int n_modes)
{
  require_mode(mode, n_modes, "squeezer");
  Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
  s(2 * mode, 2 * mode) = std::exp(-r);
  s(2 * mode + 1, 2 * mode + 1) = std::exp(r);
  return SymplecticTransform::from_matrix(std::move(s));
}

SymplecticTransform beam_splitter(double theta, int i, int j, int n_modes)
{
  require_mode(i, n_modes, "beam_splitter");
  require_mode(j, n_modes, "beam_splitter");
  if (i == j)
    throw InvalidArgument("beam_splitter: the two modes must differ");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix m = Matrix::Identity(2 * n_modes, 2 * n_modes);
  for (int q = 0; q < 2; ++q) {
    const int a = 2 * i + q;
    const int b = 2 * j + q;
    m(a, a) = c;
    m(a, b) = s;
    m(b, a) = s;
    m(b, b) = -c;
  }
  return SymplecticTransform::from_matrix(std::move(m));
}

SymplecticTransform n_splitter(int n_modes)
{
  if (n_modes < 2)
    throw InvalidArgument("n_splitter: need at least 2 modes");
  // Left-multiplying by B_{j,j+1} only mixes the rows of modes j and j+1,
  // so the cascade is accumulated with row operations.
  Matrix total = Matrix::Identity(2 * n_modes, 2 * n_modes);
  for (int j = 0; j + 1 < n_modes; ++j) {
    // j = N-2 gives acos(1/sqrt 2) = pi/4 exactly
    const double theta = (j + 2 == n_modes) ? std::numbers::pi / 4.0
                                            : std::acos(1.0 / std::sqrt(static_cast<double>(n_modes - j)));
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (int q = 0; q < 2; ++q) {
      const Vector row_i = total.row(2 * j + q);
      const Vector row_j = total.row(2 * (j + 1) + q);
      total.row(2 * j + q) = c * row_i + s * row_j;
      total.row(2 * (j + 1) + q) = s * row_i - c * row_j;
    }
  }
  return SymplecticTransform::from_matrix(std::move(total));
}

CovarianceMatrix apply(const SymplecticTransform& s, const CovarianceMatrix& sigma)
{
  if (s.n_modes() != sigma.n_modes())
    throw DimensionMismatch("apply: transform acts on " + std::to_string(s.n_modes()) +
                            " modes, state has " + std::to_string(sigma.n_modes()));
  return CovarianceMatrix::from_matrix(s.matrix() * sigma.matrix() * s.matrix().transpose());
}

CovarianceMatrix build_resource(const ResourceSpec& spec, BiasMode mode)
{
  validate(spec, mode);
  const int n = spec.modes;
  Matrix inputs = Matrix::Zero(2 * n, 2 * n);
  inputs.block<2, 2>(0, 0) = squeezed_block(spec.n1, spec.r1(), SqueezeAxis::momentum);
  const Eigen::Matrix2d pos = squeezed_block(spec.n2, spec.r2(), SqueezeAxis::position);
  for (int k = 1; k < n; ++k)
    inputs.block<2, 2>(2 * k, 2 * k) = pos;
  return apply(n_splitter(n), CovarianceMatrix::from_matrix(std::move(inputs)));
}

std::vector<double> symplectic_eigenvalues(const Matrix& sigma)
{
  if (sigma.rows() != sigma.cols() || sigma.rows() == 0 || sigma.rows() % 2 != 0)
    throw DimensionMismatch("symplectic_eigenvalues: expected a non-empty 2N x 2N matrix");
  const int n = static_cast<int>(sigma.rows() / 2);

  // sigma = L L^T; A = L^T Omega L is antisymmetric with spectrum +-i nu,
  // and -A^2 = A^T A is similar to -(Omega sigma)^2.
  const Eigen::LLT<Matrix> llt(0.5 * (sigma + sigma.transpose()));
  if (llt.info() != Eigen::Success)
    throw NumericalFailure("symplectic_eigenvalues: matrix is not positive definite");
  const Matrix lower = llt.matrixL();
  const Matrix a = lower.transpose() * symplectic_form(n) * lower;
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(a.transpose() * a, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success)
    throw NumericalFailure("symplectic_eigenvalues: eigensolver did not converge");

  const Vector& ev = eig.eigenvalues(); // ascending, each value twice
  std::vector<double> nu(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    nu[static_cast<std::size_t>(k)] = std::sqrt(std::max(0.0, 0.5 * (ev(2 * k) + ev(2 * k + 1))));
  return nu;
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& sigma)
{
  return symplectic_eigenvalues(sigma.matrix());
}

Matrix partial_transpose(const CovarianceMatrix& sigma, std::span<const int> modes)
{
  const int n = sigma.n_modes();
  std::set<int> chosen;
  for (int m : modes) {
    require_mode(m, n, "partial_transpose");
    chosen.insert(m);
  }
  if (chosen.empty() || static_cast<int>(chosen.size()) == n)
    throw InvalidArgument("partial_transpose: mode set must be a non-empty proper subset");
  Vector lambda = Vector::Ones(2 * n);
  for (int m : chosen)
    lambda(2 * m + 1) = -1.0;
  return lambda.asDiagonal() * sigma.matrix() * lambda.asDiagonal();
}

double purity(const CovarianceMatrix& sigma)
{
  const double det = sigma.matrix().determinant();
  if (!(det > 0.0))
    throw NumericalFailure("purity: non-positive determinant");
  return 1.0 / std::sqrt(det);
}

CovarianceMatrix marginal(const CovarianceMatrix& sigma, std::span<const int> modes)
{
  if (modes.empty())
    throw InvalidArgument("marginal: empty mode list");
  const auto k = static_cast<Eigen::Index>(modes.size());
  Matrix m(2 * k, 2 * k);
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b)
      m.block<2, 2>(2 * a, 2 * b) = sigma.block(modes[a], modes[b]);
  return CovarianceMatrix::from_matrix(std::move(m));
}

double quadratic_form(const CovarianceMatrix& sigma, const Vector& u)
{
  if (u.size() != sigma.matrix().rows())
    throw DimensionMismatch("quadratic_form: coefficient vector has wrong length");
  return u.dot(sigma.matrix() * u);
}

} // namespace cvtele
