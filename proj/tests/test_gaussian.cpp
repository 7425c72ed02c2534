#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cvtele/errors.hpp"
#include "cvtele/gaussian.hpp"

using namespace cvtele;

namespace {

double max_abs(const Matrix& m)
{
  return m.cwiseAbs().maxCoeff();
}

SymplecticTransform random_symplectic(int n, std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> squeeze(-0.8, 0.8);
  std::uniform_int_distribution<int> mode(0, n - 1);
  auto s = SymplecticTransform::identity(n);
  for (int step = 0; step < 6; ++step) {
    s = squeezer(squeeze(rng), mode(rng), n) * s;
    const int i = mode(rng);
    const int j = (i + 1 + mode(rng) % (n - 1)) % n;
    s = beam_splitter(angle(rng), i, j, n) * s;
  }
  return s;
}

} // namespace

TEST_CASE("vacuum is the identity")
{
  CHECK(vacuum_cm(1).matrix().isApprox(Matrix::Identity(2, 2)));
  CHECK(vacuum_cm(3).matrix().isApprox(Matrix::Identity(6, 6)));
  CHECK_THROWS_AS(vacuum_cm(0), InvalidArgument);
}

TEST_CASE("squeezed thermal states")
{
  const double e = std::exp(1.0);
  CHECK(max_abs(squeezed_thermal_cm(1, 0, SqueezeAxis::momentum).matrix() - Matrix::Identity(2, 2)) < 1e-15);
  CHECK(max_abs(squeezed_thermal_cm(1, 0, SqueezeAxis::position).matrix() - Matrix::Identity(2, 2)) < 1e-15);

  const auto m = squeezed_thermal_cm(1, 0.5, SqueezeAxis::momentum);
  CHECK(m(0, 0) == doctest::Approx(e).epsilon(1e-14));
  CHECK(m(1, 1) == doctest::Approx(1 / e).epsilon(1e-14));
  CHECK(m(0, 1) == 0.0);

  const auto q = squeezed_thermal_cm(2, 0.5, SqueezeAxis::position);
  CHECK(q(0, 0) == doctest::Approx(2 / e).epsilon(1e-14));
  CHECK(q(1, 1) == doctest::Approx(2 * e).epsilon(1e-14));

  CHECK_THROWS_AS(squeezed_thermal_cm(0.5, 0.1, SqueezeAxis::momentum), UnphysicalNoise);
}

TEST_CASE("covariance matrix construction rejects bad input")
{
  Matrix odd = Matrix::Identity(3, 3);
  CHECK_THROWS_AS(CovarianceMatrix::from_matrix(odd), DimensionMismatch);
  Matrix asym = Matrix::Identity(2, 2);
  asym(0, 1) = 0.1;
  CHECK_THROWS_AS(CovarianceMatrix::from_matrix(asym), InvalidArgument);
  Matrix nan = Matrix::Identity(2, 2);
  nan(0, 0) = std::nan("");
  CHECK_THROWS_AS(CovarianceMatrix::from_matrix(nan), InvalidArgument);
}

TEST_CASE("beam splitter")
{
  const auto vac = vacuum_cm(2);
  CHECK(max_abs(apply(beam_splitter(std::numbers::pi / 4, 0, 1, 2), vac).matrix() - vac.matrix()) < 1e-15);

  // theta = 0 flips mode j and leaves mode i alone
  const Matrix b0 = beam_splitter(0.0, 0, 1, 2).matrix();
  Matrix expected = Matrix::Identity(4, 4);
  expected(2, 2) = expected(3, 3) = -1.0;
  CHECK(max_abs(b0 - expected) < 1e-15);

  // explicit action at a generic angle
  const double t = 0.3;
  const Matrix b = beam_splitter(t, 0, 1, 2).matrix();
  CHECK(b(0, 0) == doctest::Approx(std::cos(t)));
  CHECK(b(0, 2) == doctest::Approx(std::sin(t)));
  CHECK(b(2, 0) == doctest::Approx(std::sin(t)));
  CHECK(b(2, 2) == doctest::Approx(-std::cos(t)));

  CHECK_THROWS_AS(beam_splitter(0.1, 1, 1, 3), InvalidArgument);
  CHECK_THROWS_AS(beam_splitter(0.1, 0, 3, 3), InvalidArgument);
}

TEST_CASE("n-splitter")
{
  CHECK(max_abs(n_splitter(2).matrix() - beam_splitter(std::numbers::pi / 4, 0, 1, 2).matrix()) < 1e-15);
  CHECK_THROWS_AS(n_splitter(1), InvalidArgument);

  for (int n : {2, 3, 4, 8, 20, 50}) {
    const Matrix s = n_splitter(n).matrix();
    const Matrix omega = symplectic_form(n);
    CHECK(max_abs(s * omega * s.transpose() - omega) < 1e-12);
    // input mode 0 spreads evenly over every output
    for (int k = 0; k < n; ++k)
      CHECK(std::abs(s(2 * k, 0)) == doctest::Approx(1 / std::sqrt(double(n))).epsilon(1e-13));
  }
}

TEST_CASE("every produced transform is symplectic")
{
  std::mt19937_64 rng(7);
  for (int n : {2, 3, 5}) {
    const Matrix omega = symplectic_form(n);
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix s = random_symplectic(n, rng).matrix();
      CHECK(max_abs(s * omega * s.transpose() - omega) < 1e-12);
    }
  }
  Matrix not_symplectic = Matrix::Identity(2, 2) * 2.0;
  CHECK_THROWS_AS(SymplecticTransform::from_matrix(not_symplectic), InvalidArgument);
}

TEST_CASE("apply")
{
  const auto sigma = build_resource({3, 1.5, 2.0, 0.7, 0.2});
  CHECK(max_abs(apply(SymplecticTransform::identity(3), sigma).matrix() - sigma.matrix()) == 0.0);
  const auto sq = squeezer(0.6, 1, 3);
  CHECK(max_abs(apply(sq.inverse(), apply(sq, sigma)).matrix() - sigma.matrix()) < 1e-12);
  CHECK_THROWS_AS(apply(SymplecticTransform::identity(2), sigma), DimensionMismatch);
}

TEST_CASE("build_resource")
{
  CHECK(max_abs(build_resource({2, 1, 1, 0, 0}).matrix() - Matrix::Identity(4, 4)) < 1e-15);

  // two-mode squeezed vacuum with the -cos sign on the second mode
  const double r = 0.5;
  const Matrix m = build_resource({2, 1, 1, r, 0}).matrix();
  const double c = std::cosh(2 * r);
  const double s = std::sinh(2 * r);
  Matrix expected(4, 4);
  expected << c, 0, s, 0,
              0, c, 0, -s,
              s, 0, c, 0,
              0, -s, 0, c;
  CHECK(max_abs(m - expected) < 1e-13);

  CHECK_THROWS_AS(build_resource({1, 1, 1, 0, 0}), InvalidArgument);
  CHECK_THROWS_AS(build_resource({2, 0.9, 1, 0, 0}), UnphysicalNoise);
  CHECK_THROWS_AS(build_resource({2, 1, 1, -0.1, 0}), InvalidArgument);
  CHECK_THROWS_AS(build_resource({2, 1, 1, 0.5, 0.6}), InvalidArgument);
  CHECK_NOTHROW(build_resource({2, 1, 1, 0.5, 0.6}, BiasMode::unconstrained));
}

TEST_CASE("resource is permutation symmetric")
{
  for (int n : {3, 4, 8})
    for (double d : {-0.3, 0.0, 0.4}) {
      const auto sigma = build_resource({n, 1.5, 2.0, 0.8, d});
      for (int a = 1; a < n; ++a) {
        CHECK(max_abs(sigma.block(a, a) - sigma.block(0, 0)) < 1e-12);
        for (int b = 0; b < n; ++b)
          if (a != b && b != 0)
            CHECK(max_abs(sigma.block(a, b) - sigma.block(0, 1)) < 1e-12);
      }
    }
}

TEST_CASE("symplectic eigenvalues")
{
  for (double v : symplectic_eigenvalues(vacuum_cm(4)))
    CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
  const auto single = symplectic_eigenvalues(squeezed_thermal_cm(1.7, 0.9, SqueezeAxis::momentum));
  REQUIRE(single.size() == 1);
  CHECK(single[0] == doctest::Approx(1.7).epsilon(1e-13));
  for (double v : symplectic_eigenvalues(build_resource({2, 1, 1, 1.2, 0})))
    CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

  // ascending
  const auto spec = symplectic_eigenvalues(build_resource({3, 1.5, 2.0, 0.5, 0.1}));
  CHECK(std::is_sorted(spec.begin(), spec.end()));
  CHECK(spec[0] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(spec[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("symplectic spectrum is invariant under random conjugation")
{
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const auto sigma = build_resource({3, 1.0 + 0.1 * trial, 1.3, 0.05 * trial, 0.0});
    const auto before = symplectic_eigenvalues(sigma);
    const auto after_cm = apply(random_symplectic(3, rng), sigma);
    const auto after = symplectic_eigenvalues(after_cm);
    for (std::size_t k = 0; k < before.size(); ++k)
      CHECK(after[k] == doctest::Approx(before[k]).epsilon(1e-9));
    CHECK(after_cm.is_physical());
  }
}

TEST_CASE("partial transpose")
{
  const int mode0[] = {0};
  const int both[] = {0, 1};
  const auto product = direct_sum(squeezed_thermal_cm(1.5, 0.4, SqueezeAxis::momentum),
                                  squeezed_thermal_cm(2.0, 0.3, SqueezeAxis::position));
  const auto before = symplectic_eigenvalues(product);
  const auto after = symplectic_eigenvalues(partial_transpose(product, mode0));
  for (std::size_t k = 0; k < before.size(); ++k)
    CHECK(after[k] == doctest::Approx(before[k]).epsilon(1e-12));

  const auto sigma = build_resource({2, 1, 1, 0.5, 0});
  const Matrix twice =
      partial_transpose(CovarianceMatrix::from_matrix(partial_transpose(sigma, mode0)), mode0);
  CHECK(max_abs(twice - sigma.matrix()) == 0.0);

  const auto pt = symplectic_eigenvalues(partial_transpose(sigma, mode0));
  CHECK(pt[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

  CHECK_THROWS_AS(partial_transpose(sigma, std::span<const int>{}), InvalidArgument);
  CHECK_THROWS_AS(partial_transpose(sigma, both), InvalidArgument);
}

TEST_CASE("partial transpose spectra do not depend on the bias")
{
  for (int n : {2, 3, 4})
    for (double rbar : {0.3, 0.9}) {
      const ResourceFamily family{n, 1.5, 2.0, rbar};
      for (int m = 0; m < 2; ++m) {
        const int mode[] = {m};
        const auto ref = symplectic_eigenvalues(partial_transpose(build_resource(family.at(0.0)), mode));
        for (double d : {-rbar, rbar / 2, rbar}) {
          const auto other = symplectic_eigenvalues(partial_transpose(build_resource(family.at(d)), mode));
          for (std::size_t k = 0; k < ref.size(); ++k)
            CHECK(other[k] == doctest::Approx(ref[k]).epsilon(1e-9));
        }
      }
    }
}

TEST_CASE("purity")
{
  CHECK(purity(vacuum_cm(3)) == doctest::Approx(1.0));
  CHECK(purity(build_resource({2, 2.0, 1.5, 0.6, 0.1})) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(purity(build_resource({3, 1, 1, 0.9, -0.2})) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("marginal and quadratic form")
{
  const auto sigma = build_resource({3, 1.2, 1.4, 0.5, 0.1});
  const int kept[] = {2, 0};
  const auto m = marginal(sigma, kept);
  CHECK(max_abs(m.block(0, 0) - sigma.block(2, 2)) == 0.0);
  CHECK(max_abs(m.block(0, 1) - sigma.block(2, 0)) == 0.0);

  Vector u = Vector::Zero(6);
  u(0) = 1.0;
  u(2) = -1.0;
  CHECK(quadratic_form(sigma, u) == doctest::Approx(sigma(0, 0) + sigma(2, 2) - 2 * sigma(0, 2)));
  CHECK_THROWS_AS(quadratic_form(sigma, Vector::Zero(4)), DimensionMismatch);
}
