#include "halfspace/error.hpp"
#include "halfspace/gaussian.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <random>

using namespace halfspace;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Random chain lambda = c0 + 2 sum c_l cos(l phi) bounded below by `floor`.
ChainModel random_gapped_chain(std::mt19937_64& rng, int range, double floor) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  Eigen::VectorXd c(range + 1);
  c(0) = 0.0;
  for (int l = 1; l <= range; ++l) c(l) = u(rng) / l;
  c(0) = 2.0 * c.tail(range).cwiseAbs().sum() + floor;
  return ChainModel(Statistics::boson, c);
}

// Pure-state oracle: E_N = sum_j 2 log2(sqrt(mu_j + 1/2) + sqrt(mu_j - 1/2))
// over the symplectic spectrum of either half.
double pure_state_negativity(const SpectrumResult& half) {
  long double sum = 0.0L;
  for (double mu : half.values) {
    const long double m = std::max<long double>(mu, 0.5L);
    sum += 2.0L * std::log2(std::sqrt(m + 0.5L) + std::sqrt(m - 0.5L));
  }
  return static_cast<double>(sum);
}

SpectrumResult spectrum_of(std::initializer_list<double> values) {
  SpectrumResult r;
  r.values.resize(values.size());
  Eigen::Index i = 0;
  for (double v : values) r.values(i++) = v;
  return r;
}

}  // namespace

TEST_CASE("ground covariance of simple chains") {
  const ChainModel uncoupled(Statistics::boson, Eigen::VectorXd::Constant(1, 1.0));
  const CovariancePair vacuum = boson_ground_covariance(uncoupled, 5, 0.0);
  CHECK((vacuum.x - 0.5 * Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((vacuum.p - 0.5 * Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-15);

  // lambda = {1, 4} at momenta {0, pi}.
  const CovariancePair two = circulant_covariance(Eigen::Array2d(1.0, 4.0));
  CHECK(two.x(0, 0) == Approx(0.375));
  CHECK(two.x(0, 1) == Approx(0.125));
  CHECK(two.p(0, 0) == Approx(0.75));
  CHECK(two.p(0, 1) == Approx(-0.25));

  const ChainModel critical(Statistics::boson, Eigen::Vector2d(1.0, -0.5));
  CHECK_THROWS_WITH_AS(boson_ground_covariance(critical, 8, 0.0),
                       doctest::Contains("critical zero mode"), ContractViolation);
  CHECK_NOTHROW(boson_ground_covariance(critical, 8, 1e-3));
}

TEST_CASE("covariance is symmetric circulant") {
  std::mt19937_64 rng(3);
  const ChainModel chain = random_gapped_chain(rng, 3, 0.1);
  const CovariancePair s = boson_ground_covariance(chain, 12, 0.0);
  CHECK((s.x - s.x.transpose()).cwiseAbs().maxCoeff() < 1e-15);
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 12; ++j) {
      CHECK(s.x(i, j) == Approx(s.x(0, ((j - i) % 12 + 12) % 12)).epsilon(1e-13));
    }
  }
}

TEST_CASE("purity: full chains have all symplectic eigenvalues 1/2") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const ChainModel chain = random_gapped_chain(rng, 1 + trial % 4, 0.05);
    for (int n : {4, 17, 64}) {
      const CovariancePair s = boson_ground_covariance(chain, n, 0.0);
      const SpectrumResult mu = symplectic_spectrum(s.x, s.p);
      CHECK((mu.values.array() - 0.5).abs().maxCoeff() < 1e-10);
    }
  }
  const ChainModel critical(Statistics::boson, Eigen::Vector2d(1.0, -0.5));
  const CovariancePair s = boson_ground_covariance(critical, 64, 1e-2);
  CHECK((symplectic_spectrum(s.x, s.p).values.array() - 0.5).abs().maxCoeff() < 1e-10);
}

TEST_CASE("symplectic spectrum against a dense product oracle") {
  const Eigen::Matrix<double, 1, 1> one = Eigen::Matrix<double, 1, 1>::Constant(1.5);
  const SpectrumResult single = symplectic_spectrum(one, one);
  CHECK(single.values(0) == Approx(1.5));

  const ChainModel near_critical(Statistics::boson, Eigen::Vector2d(1.0, -0.49));
  const CovariancePair s = boson_ground_covariance(near_critical, 4, 0.0);
  const CovariancePair a = restrict(s, 1, 2);
  const Eigen::EigenSolver<Eigen::MatrixXd> dense(a.x * a.p);
  Eigen::VectorXd oracle = dense.eigenvalues().real().cwiseSqrt();
  std::sort(oracle.data(), oracle.data() + oracle.size(), std::greater<>());
  const SpectrumResult mu = symplectic_spectrum(a.x, a.p);
  CHECK((mu.values - oracle).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(mu.values(0) >= mu.values(1));

  const Eigen::Matrix2d bad = Eigen::Vector2d(1.0, -1.0).asDiagonal();
  CHECK_THROWS_AS(symplectic_spectrum(Eigen::Matrix2d::Identity(), bad),
                  ContractViolation);
}

TEST_CASE("boson entropy functional") {
  CHECK(boson_entropy(spectrum_of({0.5, 0.5})) == 0.0);
  CHECK(boson_entropy(spectrum_of({1.5})) == Approx(2.0));
  CHECK_THROWS_AS(boson_mode_entropy(0.49), ContractViolation);
  CHECK(boson_mode_entropy(0.5 - 1e-11) == 0.0);
  // Near the pure point: g(1/2 + e) = -e log2 e + e / ln 2 + O(e^2 log e).
  for (double e : {1e-3, 1e-5, 1e-7}) {
    const long double el = e;
    const long double oracle = (0.5L + el + 0.5L) * std::log2(1.0L + el) -
                               el * std::log2(el);
    CHECK(boson_mode_entropy(0.5 + e) ==
          Approx(static_cast<double>(oracle)).epsilon(1e-9));
  }
}

TEST_CASE("logarithmic negativity") {
  const CovariancePair product{0.5 * Eigen::MatrixXd::Identity(4, 4),
                               0.5 * Eigen::MatrixXd::Identity(4, 4)};
  CHECK(log_negativity(product, 2) == 0.0);

  // Two-mode squeezed vacuum with e^{-2r} = 1/2: smallest mu~ = 1/4.
  const double r = std::log(2.0) / 2.0;
  Eigen::Matrix2d x, p;
  x << std::cosh(2 * r), std::sinh(2 * r), std::sinh(2 * r), std::cosh(2 * r);
  p << std::cosh(2 * r), -std::sinh(2 * r), -std::sinh(2 * r), std::cosh(2 * r);
  const CovariancePair tmsv{0.5 * x, 0.5 * p};
  CHECK(log_negativity(tmsv, 1) == Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(log_negativity(tmsv, 0), std::invalid_argument);
}

TEST_CASE("negativity of pure chains matches the pure-state formula") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 8; ++trial) {
    const ChainModel chain = random_gapped_chain(rng, 2, 0.02);
    for (int n : {8, 32}) {
      const CovariancePair s = boson_ground_covariance(chain, n, 0.0);
      const CovariancePair half = restrict(s, 0, n / 2);
      const double oracle = pure_state_negativity(symplectic_spectrum(half.x, half.p));
      // Near-pure modes enter through sqrt(mu - 1/2), which costs digits.
      CHECK(std::abs(log_negativity(s, n / 2) - oracle) < 2e-7);
    }
  }
}

TEST_CASE("pure-state complementarity and E_N >= E_S") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 12; ++trial) {
    const ChainModel chain = random_gapped_chain(rng, 1 + trial % 3, 0.01);
    for (int n : {6, 24, 64}) {
      const CovariancePair s = boson_ground_covariance(chain, n, 0.0);
      for (int m : {1, n / 3, n / 2}) {
        const CovariancePair a = restrict(s, 0, m);
        const CovariancePair b = restrict(s, m, n - m);
        const double sa = boson_entropy(symplectic_spectrum(a.x, a.p));
        const double sb = boson_entropy(symplectic_spectrum(b.x, b.p));
        CHECK(sa == Approx(sb).epsilon(1e-8));
        CHECK(log_negativity(s, m) >= sa - 1e-10);
      }
    }
  }
}

TEST_CASE("symbol coefficients of the half-filled chain") {
  const ChainModel half(Statistics::fermion, Eigen::Vector2d(0.0, 1.0));
  const ToeplitzCorrelation t = symbol_coefficients(half, SymbolMode::integral, 64);
  CHECK(std::abs(t.coefficients(0)) < 1e-12);
  CHECK(t.coefficients(1) == Approx(2.0 / kPi).epsilon(1e-12));
  CHECK(std::abs(t.coefficients(2)) < 1e-12);
  CHECK(t.coefficients(3) == Approx(-2.0 / (3.0 * kPi)).epsilon(1e-12));
  for (int l = 1; l < 64; ++l) {
    CHECK(std::abs(t.coefficients(l) - 2.0 * std::sin(kPi * l / 2.0) / (kPi * l)) <
          1e-10);
  }

  const ChainModel gapped(Statistics::fermion, Eigen::Vector2d(1.0, 0.1));
  const ToeplitzCorrelation g = symbol_coefficients(gapped, SymbolMode::integral, 8);
  CHECK(g.coefficients(0) == 1.0);
  CHECK(g.coefficients.tail(7).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("symbol coefficients against brute-force quadrature") {
  // sgn(cos phi - cos kF): lambda = -cos kF + 2 (1/2) cos phi.
  const double kf = 1.1;
  const ChainModel chain(Statistics::fermion, Eigen::Vector2d(-std::cos(kf), 0.5));
  const ToeplitzCorrelation t = symbol_coefficients(chain, SymbolMode::integral, 12);
  const int n = 1 << 22;
  for (int l = 0; l < 12; ++l) {
    long double sum = 0.0L;
    for (int k = 0; k < n; ++k) {
      const double phi = 2 * kPi * (k + 0.5) / n;
      sum += (chain(phi) > 0 ? 1.0L : -1.0L) * std::cos(l * phi);
    }
    CHECK(std::abs(t.coefficients(l) - static_cast<double>(sum / n)) < 2e-6);
  }
}

TEST_CASE("finite-N symbols converge to the integral symbol") {
  const ChainModel chain(Statistics::fermion, Eigen::Vector2d(0.3, 0.8));
  const ToeplitzCorrelation exact = symbol_coefficients(chain, SymbolMode::integral, 6);
  // The sampled sign pattern is off by at most one point per zero, so the
  // error has an O(1/N) envelope but is not monotone.
  double previous = 1.0;
  for (int n = 64; n <= 4096; n *= 2) {
    const ToeplitzCorrelation finite = symbol_coefficients(chain, SymbolMode::finite, 6, n);
    const double distance = (finite.coefficients - exact.coefficients).cwiseAbs().maxCoeff();
    CHECK(distance < 2.0 / n);
    previous = distance;
  }
  CHECK(previous < 1e-3);
  CHECK_THROWS_AS(symbol_coefficients(chain, SymbolMode::finite, 10, 8),
                  std::invalid_argument);
}

TEST_CASE("sign structure") {
  const ChainModel chain(Statistics::fermion, Eigen::Vector2d(-1.0, 1.0));
  const SignStructure s = symbol_sign_structure(chain);
  REQUIRE(s.zeros.size() == 2);
  CHECK(s.zeros[0] == Approx(kPi / 3).epsilon(1e-12));
  CHECK(s.zeros[1] == Approx(5 * kPi / 3).epsilon(1e-12));
  CHECK(s.arc_signs == std::vector<int>{-1, 1});

  const ChainModel touching(Statistics::fermion, Eigen::Vector2d(1.0, 0.5));
  const SignStructure t = symbol_sign_structure(touching);
  CHECK(t.zeros.empty());
  REQUIRE(t.tangential.size() == 1);
  CHECK(t.tangential[0] == Approx(kPi).epsilon(1e-6));
  CHECK(t.constant_sign == 1);

  const ChainModel zero(Statistics::fermion, Eigen::Vector2d(0.0, 0.0));
  CHECK_THROWS_WITH_AS(symbol_sign_structure(zero), doctest::Contains("non-degenerate"),
                       ContractViolation);
}

TEST_CASE("fermion entropy") {
  const ChainModel half(Statistics::fermion, Eigen::Vector2d(0.0, 1.0));
  const ToeplitzCorrelation t = symbol_coefficients(half, SymbolMode::integral, 4);
  CHECK(fermion_entropy(t, 1) == Approx(1.0));
  const double nu = 2.0 / kPi;
  CHECK(fermion_entropy(t, 2) == Approx(2.0 * binary_entropy((1.0 + nu) / 2.0)));
  CHECK(fermion_entropy(t, 2) == Approx(1.367520916).epsilon(1e-9));

  CHECK(fermion_entropy(spectrum_of({1.0, -1.0, 1.0})) == 0.0);
  CHECK(fermion_entropy(spectrum_of({1.0 + 5e-11})) == 0.0);
  CHECK_THROWS_AS(fermion_entropy(spectrum_of({1.0 + 1e-7})), ContractViolation);
  CHECK(fermion_entropy(spectrum_of({1.0 - 1e-10})) < 1e-8);
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(0.5) == 1.0);
}

TEST_CASE("finite-N fermion states are pure") {
  const ChainModel chain(Statistics::fermion, Eigen::Vector2d(0.0, 1.0));
  for (int n : {8, 16, 62}) {
    const ToeplitzCorrelation t = symbol_coefficients(chain, SymbolMode::finite, n, n);
    for (int m : {1, n / 4, n / 2}) {
      CHECK(fermion_entropy(t, m) == Approx(fermion_entropy(t, n - m)).epsilon(1e-8));
    }
    CHECK(fermion_entropy(t, n) < 1e-8);
  }
}
