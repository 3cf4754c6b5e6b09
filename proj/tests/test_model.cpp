#include "halfspace/error.hpp"
#include "halfspace/model.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace halfspace;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Dense N^D x N^D coupling matrix of the periodic lattice, site index with
// the first coordinate fastest.
Eigen::MatrixXd dense_coupling(const ModelSpec& model, int n) {
  const int d = model.dimension();
  const int sites = static_cast<int>(std::pow(n, d));
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(sites, sites);
  for (int i = 0; i < sites; ++i) {
    for (const auto& [offset, value] : model.couplings()) {
      int j = 0, stride = 1, rest = i;
      for (int axis = 0; axis < d; ++axis) {
        const int x = rest % n;
        rest /= n;
        j += (((x + offset[axis]) % n + n) % n) * stride;
        stride *= n;
      }
      v(i, j) += value;
    }
  }
  return v;
}

}  // namespace

TEST_CASE("nearest-neighbour families carry the documented couplings") {
  const ModelSpec fermion = build_model(Statistics::fermion, 2, {{"a", 1.0}});
  CHECK(fermion.coefficient({0, 0}) == 1.0);
  CHECK(fermion.coefficient({1, 0}) == 1.0);
  CHECK(fermion.coefficient({-1, 0}) == 1.0);
  CHECK(fermion.coefficient({0, -1}) == 1.0);
  CHECK(fermion.couplings().size() == 5);

  const ModelSpec boson = build_model(Statistics::boson, 2, {{"c", 0.25}});
  CHECK(boson.coefficient({0, 0}) == 1.0);
  CHECK(boson.coefficient({1, 0}) == -0.25);
  CHECK(boson.coefficient({0, 1}) == -0.25);
  CHECK(boson.stability() == Stability::critical);

  const ModelSpec trivial = build_model(Statistics::fermion, 1, {{"a", 0.0}});
  CHECK(trivial.couplings().size() == 1);
  CHECK(dispersion(trivial, Eigen::VectorXd::Constant(1, 2.1)) == 1.0);

  const ModelSpec half = build_model(Statistics::fermion, 2,
                                     {{"a", 0.5}, {"half_filling", 1.0}});
  CHECK(half.coefficient({0, 0}) == 0.0);
}

TEST_CASE("asymmetric tables and unknown parameters are rejected") {
  CHECK_THROWS_AS(build_model(Statistics::fermion, 1, CouplingTable{{{1}, 1.0}}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_model(Statistics::fermion, 2, {{"b", 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_model(Statistics::boson, 1,
                              CouplingTable{{{1}, -0.2}, {{-1}, -0.2}}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_model(Statistics::fermion, 1,
                              CouplingTable{{{2}, 1.0}, {{-2}, 1.0}}, 1),
                  std::invalid_argument);
}

TEST_CASE("dispersion at documented points") {
  const ModelSpec boson2 = build_model(Statistics::boson, 2, {});
  CHECK(dispersion(boson2, Eigen::Vector2d(0, 0)) == Approx(0.0).epsilon(1e-15));
  const ModelSpec fermion1 = build_model(Statistics::fermion, 1, {{"a", 1.0}});
  CHECK(dispersion(fermion1, Eigen::VectorXd::Constant(1, kPi)) == Approx(-1.0));
  const ModelSpec boson1 = build_model(Statistics::boson, 1, {{"c", 0.5}});
  CHECK(dispersion(boson1, Eigen::VectorXd::Constant(1, kPi)) == Approx(2.0));
  CHECK_THROWS_AS(dispersion(boson2, Eigen::Vector3d(0, 0, 0)), std::invalid_argument);
}

TEST_CASE("dispersion is even under phi -> 2 pi - phi") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  const CouplingTable table = {{{0, 0}, 0.3},  {{1, 0}, 0.2},   {{-1, 0}, 0.2},
                               {{2, 1}, -0.1}, {{-2, -1}, -0.1}, {{1, -1}, 0.05},
                               {{-1, 1}, 0.05}};
  const ModelSpec model = build_model(Statistics::fermion, 2, table, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Vector2d phi(angle(rng), angle(rng));
    const Eigen::Vector2d mirrored = Eigen::Vector2d::Constant(2.0 * kPi) - phi;
    CHECK(dispersion(model, phi) ==
          Approx(dispersion(model, mirrored)).epsilon(1e-13));
  }
}

TEST_CASE("lattice spectrum equals the eigenvalues of the dense coupling matrix") {
  const CouplingTable table = {{{0, 0}, 1.0},  {{1, 0}, -0.2}, {{-1, 0}, -0.2},
                               {{0, 1}, -0.1}, {{0, -1}, -0.1}, {{1, 1}, 0.05},
                               {{-1, -1}, 0.05}};
  const ModelSpec model = build_model(Statistics::boson, 2, table, 1);
  for (int n : {3, 4, 6}) {
    Eigen::ArrayXd spectrum = lattice_spectrum(model, n);
    std::sort(spectrum.begin(), spectrum.end());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        dense_coupling(model, n), Eigen::EigenvaluesOnly);
    CHECK((spectrum.matrix() - solver.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("lattice spectrum samples the dispersion with k1 fastest") {
  const ModelSpec model = build_model(Statistics::fermion, 2, {{"a", 0.7}});
  const int n = 8;
  const Eigen::ArrayXd spectrum = lattice_spectrum(model, n);
  for (int k2 = 0; k2 < n; ++k2) {
    for (int k1 = 0; k1 < n; ++k1) {
      const Eigen::Vector2d phi(2 * kPi * k1 / n, 2 * kPi * k2 / n);
      CHECK(spectrum(k2 * n + k1) == Approx(dispersion(model, phi)).epsilon(1e-13));
    }
  }
}

TEST_CASE("energy gap") {
  CHECK(energy_gap(build_model(Statistics::boson, 2, {{"c", 0.25}})) ==
        Approx(0.0).epsilon(1e-6));
  CHECK(energy_gap(build_model(Statistics::fermion, 2, {{"a", 1.0}})) < 1e-9);
  CHECK(energy_gap(build_model(Statistics::fermion, 1, {{"a", 0.2}})) ==
        Approx(0.6).epsilon(1e-10));
  // Gapped boson: lambda_min = 1 - 2 * 2 * 0.2 = 0.2.
  CHECK(energy_gap(build_model(Statistics::boson, 2, {{"c", 0.2}})) ==
        Approx(std::sqrt(0.2)).epsilon(1e-9));
  const ModelSpec unstable = build_model(Statistics::boson, 1, {{"c", 0.6}});
  CHECK(unstable.stability() == Stability::unstable);
  CHECK_THROWS_AS(energy_gap(unstable), ContractViolation);
  CHECK_THROWS_AS(energy_gap(unstable, 2), std::invalid_argument);
}

TEST_CASE("critical and Klein-Gordon couplings") {
  CHECK(critical_boson_coupling(1) == 0.5);
  CHECK(critical_boson_coupling(2) == 0.25);
  CHECK(critical_boson_coupling(3) == Approx(1.0 / 6.0));
  double previous = 1.0;
  for (int n = 8; n <= 8192; n *= 2) {
    const double c = klein_gordon_coupling(2, 1.0, 1.0, 10.0, n);
    const double distance = std::abs(c - 0.25);
    CHECK(c < 0.25);
    CHECK(distance < previous);
    previous = distance;
  }
  CHECK(previous < 1e-6);
  const ModelSpec kg = build_model(Statistics::boson, 2,
                                   {{"kg_mass", 1.0}, {"kg_velocity", 1.0},
                                    {"kg_length", 10.0}, {"kg_sites", 64}});
  CHECK(kg.stability() == Stability::stable);
  CHECK(-kg.coefficient({1, 0}) == Approx(klein_gordon_coupling(2, 1, 1, 10, 64)));
}
