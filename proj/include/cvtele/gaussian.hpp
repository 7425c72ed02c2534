#pragma once

// Covariance-matrix representation of zero-mean Gaussian states and the
// symplectic transforms used to build symmetric multimode resources.
//
// Conventions: quadratures are interleaved (x1, p1, x2, p2, ...), the vacuum
// has unit variance (a = (x + i p) / 2), and the symplectic form is the direct
// sum of per-mode blocks [[0, 1], [-1, 0]].

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace cvtele {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Quadrature { x, p };

enum class SqueezeAxis { momentum, position };

//! How the squeezing bias d is treated relative to the average squeezing.
//!
//! `clamped` keeps both squeezings nonnegative (|d| <= rbar); `unconstrained`
//! accepts any real d, a negative squeezing being read as squeezing of the
//! conjugate quadrature.
enum class BiasMode { clamped, unconstrained };

//! Symmetric 2N x 2N second-moment matrix.
//!
//! Construction checks shape, finiteness and symmetry (relative 1e-12) and
//! then stores the exactly symmetrized matrix. Physicality is a separate
//! query because it needs an eigensolve.
class CovarianceMatrix
{
public:
  static CovarianceMatrix from_matrix(Matrix m);

  int n_modes() const { return static_cast<int>(m_.rows() / 2); }
  const Matrix& matrix() const { return m_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  //! 2x2 block coupling modes a and b (a == b gives the local CM).
  Eigen::Matrix2d block(int a, int b) const;

  //! Every symplectic eigenvalue >= 1 - tol.
  bool is_physical(double tol = 1e-9) const;

private:
  explicit CovarianceMatrix(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

//! Real 2N x 2N matrix S with S Omega S^T = Omega.
class SymplecticTransform
{
public:
  static SymplecticTransform identity(int n_modes);
  static SymplecticTransform from_matrix(Matrix s);

  int n_modes() const { return static_cast<int>(s_.rows() / 2); }
  const Matrix& matrix() const { return s_; }

  //! Inverse via -Omega S^T Omega.
  SymplecticTransform inverse() const;

  //! Composition: (a * b) acts with b first.
  friend SymplecticTransform operator*(const SymplecticTransform& a, const SymplecticTransform& b);

private:
  explicit SymplecticTransform(Matrix s) : s_(std::move(s)) {}
  Matrix s_;
};

//! Experiment knobs of the symmetric resource family.
struct ResourceSpec
{
  int modes = 2;
  double n1 = 1.0;   //!< noise of the momentum-squeezed input
  double n2 = 1.0;   //!< noise of the N-1 position-squeezed inputs
  double rbar = 0.0; //!< average squeezing (r1 + r2) / 2
  double d = 0.0;    //!< bias (r1 - r2) / 2

  double r1() const { return rbar + d; }
  double r2() const { return rbar - d; }
};

//! A resource family with the bias left open: all members share the same
//! entanglement and differ only by local operations.
struct ResourceFamily
{
  int modes = 2;
  double n1 = 1.0;
  double n2 = 1.0;
  double rbar = 0.0;

  ResourceSpec at(double d) const { return {modes, n1, n2, rbar, d}; }
};

//! Throws InvalidArgument / UnphysicalNoise when a field is out of range.
void validate(const ResourceSpec& spec, BiasMode mode = BiasMode::clamped);
void validate(const ResourceFamily& family);

Matrix symplectic_form(int n_modes);

CovarianceMatrix vacuum_cm(int n_modes);

//! Single-mode squeezed thermal state: momentum-squeezed gives
//! diag(n e^{2r}, n e^{-2r}), position-squeezed the reverse.
CovarianceMatrix squeezed_thermal_cm(double n, double r, SqueezeAxis axis);

//! CM of the product state a (x) b, modes of a first.
CovarianceMatrix direct_sum(const CovarianceMatrix& a, const CovarianceMatrix& b);

//! Single-mode squeezer x -> e^{-r} x, p -> e^{r} p on one mode.
SymplecticTransform squeezer(double r, int mode, int n_modes);

//! Phase-free beam splitter B_{i,j}(theta):
//!   a_i -> a_i cos(theta) + a_j sin(theta)
//!   a_j -> a_i sin(theta) - a_j cos(theta)
//! The -cos on mode j is kept as written; it is a local phase and changes
//! raw CM entries but no fidelity or entanglement figure.
SymplecticTransform beam_splitter(double theta, int i, int j, int n_modes);

//! B_{N-1,N}(pi/4) ... B_{2,3}(acos 1/sqrt(N-1)) B_{1,2}(acos 1/sqrt(N)).
//! Input mode 0 leaves with amplitude 1/sqrt(N) on every output.
SymplecticTransform n_splitter(int n_modes);

//! sigma -> S sigma S^T.
CovarianceMatrix apply(const SymplecticTransform& s, const CovarianceMatrix& sigma);

//! N-splitter applied to one momentum-squeezed mode (n1, r1) and N-1
//! position-squeezed modes (n2, r2).
CovarianceMatrix build_resource(const ResourceSpec& spec, BiasMode mode = BiasMode::clamped);

//! Sorted (ascending) symplectic spectrum of a symmetric positive-definite
//! matrix, one entry per mode. Works on partial transposes as well.
std::vector<double> symplectic_eigenvalues(const Matrix& sigma);
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& sigma);

//! Lambda sigma Lambda, Lambda flipping p on each selected mode. The result
//! need not be a physical CM, hence the plain matrix type.
Matrix partial_transpose(const CovarianceMatrix& sigma, std::span<const int> modes);

//! 1 / sqrt(det sigma).
double purity(const CovarianceMatrix& sigma);

//! Reduced CM of the listed modes, in the listed order.
CovarianceMatrix marginal(const CovarianceMatrix& sigma, std::span<const int> modes);

//! u^T sigma u.
double quadratic_form(const CovarianceMatrix& sigma, const Vector& u);

} // namespace cvtele
