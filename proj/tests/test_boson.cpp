#include "halfspace/boson.hpp"
#include "halfspace/error.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace halfspace;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
const double kBound2 = std::log2(3.0 + 2.0 * std::sqrt(2.0)) / 2.0;

Eigen::VectorXd angles(std::initializer_list<double> values) {
  Eigen::VectorXd out(values.size());
  Eigen::Index i = 0;
  for (double v : values) out(i++) = v;
  return out;
}

}  // namespace

TEST_CASE("closed-form chain negativity") {
  CHECK(chain_negativity_closed(angles({kPi}), 2) == Approx(0.5));
  CHECK(chain_negativity_closed(angles({kPi / 2}), 2) == Approx(std::log2(3.0) / 2));
  CHECK(chain_negativity_closed(angles({kPi, kPi}), 3) == Approx(0.5 * std::log2(1.5)));
  CHECK(std::isinf(chain_negativity_closed(angles({0.0}), 2)));
  CHECK_THROWS_AS(chain_negativity_closed(angles({}), 1), std::invalid_argument);

  const ModelSpec critical = build_model(Statistics::boson, 2, {});
  for (double phi = 0.2; phi < 2 * kPi; phi += 0.45) {
    CHECK(chain_negativity_closed(chain_at(critical, angles({phi}))) ==
          Approx(chain_negativity_closed(angles({phi}), 2)).epsilon(1e-9));
  }
  CHECK(std::isinf(chain_negativity_closed(chain_at(critical, angles({0.0})))));
}

TEST_CASE("negativity bound quadrature") {
  const NegativityBound d2 = halfspace_negativity_bound(2, 4096);
  CHECK(std::abs(d2.value - kBound2) < 1e-5);
  CHECK(d2.ladder.size() == 3);
  CHECK(d2.ladder[0] < d2.ladder[1]);
  CHECK(d2.ladder[1] < d2.ladder[2]);

  const double coarse = halfspace_negativity_bound(3, 128).value;
  const double fine = halfspace_negativity_bound(3, 256).value;
  CHECK(std::isfinite(fine));
  CHECK(std::abs(coarse - fine) < 1e-4);

  CHECK_THROWS_AS(halfspace_negativity_bound(1, 64), std::invalid_argument);
  CHECK_THROWS_AS(halfspace_negativity_bound(2, 30), std::invalid_argument);
}

TEST_CASE("the negativity integrand is even about pi") {
  const TransverseGrid grid(1, 1024, GridAlignment::midpoint);
  double first = 0.0, total = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = chain_negativity_closed(grid.point(i), 2);
    total += v;
    if (i < grid.size() / 2) first += v;
  }
  CHECK(2.0 * first == Approx(total).epsilon(1e-12));
}

TEST_CASE("numeric chain negativity") {
  const ChainModel uncoupled(Statistics::boson, Eigen::VectorXd::Constant(1, 1.0));
  CHECK(chain_negativity_numeric(uncoupled, 16, 0.0) == 0.0);
  CHECK_THROWS_AS(chain_negativity_numeric(uncoupled, 15, 0.0), std::invalid_argument);

  // Nearest-neighbour rings: the half-split negativity is independent of N
  // and equals (1/4) log2(lambda_max / lambda_min), half the closed form.
  const ModelSpec critical = build_model(Statistics::boson, 2, {});
  for (double phi : {kPi, kPi / 2, 1.0}) {
    const ChainModel chain = chain_at(critical, angles({phi}));
    const double closed = chain_negativity_closed(chain);
    for (int n : {8, 64, 256}) {
      CHECK(chain_negativity_numeric(chain, n, 0.0) == Approx(closed / 2).epsilon(1e-9));
    }
  }

  // Longer range: converges as N doubles.
  const ChainModel longer(Statistics::boson,
                          (Eigen::VectorXd(3) << 1.0, -0.3, -0.1).finished());
  double previous = 1.0;
  double last = chain_negativity_numeric(longer, 16, 0.0);
  for (int n = 32; n <= 256; n *= 2) {
    const double value = chain_negativity_numeric(longer, n, 0.0);
    CHECK(std::abs(value - last) <= previous);
    previous = std::abs(value - last);
    last = value;
  }
  CHECK(previous < 1e-3);
}

TEST_CASE("negativity bounds the entropy chain by chain") {
  const ModelSpec critical = build_model(Statistics::boson, 2, {});
  for (int n : {16, 64}) {
    for (double mass : {0.0, 1e-2}) {
      for (double phi : {0.3, 1.7, kPi}) {
        const NegativityRecord r = negativity_record(chain_at(critical, angles({phi})), n, mass);
        CHECK(r.numeric >= r.entropy - 1e-12);
        CHECK(r.numeric >= 0.0);
        CHECK(r.closed >= 0.0);
      }
    }
  }
  const NegativityRecord singular =
      negativity_record(chain_at(critical, angles({0.0})), 32, 1e-2);
  CHECK(std::isinf(singular.closed));
  CHECK(singular.numeric >= singular.entropy);
}

TEST_CASE("zero modes") {
  const ModelSpec critical = build_model(Statistics::boson, 2, {});
  CHECK(has_zero_mode(chain_at(critical, angles({0.0})), 16));
  CHECK_FALSE(has_zero_mode(chain_at(critical, angles({2 * kPi / 16})), 16));
}

TEST_CASE("area-law check on small ladders") {
  const ModelSpec critical = build_model(Statistics::boson, 2, {});
  const std::vector<int> sizes = {16, 32, 64};
  AreaLawOptions options;
  options.workers = 2;
  options.with_negativity = true;
  options.bound_resolution = 1024;
  const ScalingReport report = area_law_check(critical, sizes, {}, options);
  REQUIRE(report.points.size() == 3);
  CHECK(report.monotone);
  CHECK(report.bounded);
  CHECK(report.contracting);
  CHECK(report.area_law);
  for (const auto& p : report.points) {
    CHECK(p.punctured == 1);
    CHECK(p.mass == Approx(1.0 / p.sites));
    CHECK(p.negativity >= p.entropy);
    CHECK(p.singular_entropy > 0.0);
  }
  CHECK(report.chains.size() == 64);

  const std::vector<double> masses = {1e-2, 5e-3};
  const ScalingReport ladder = area_law_check(critical, sizes, masses, options);
  CHECK(ladder.points.size() == 6);
  CHECK(ladder.mass_variation > 0.0);
  CHECK(ladder.mass_variation < 1e-2);

  const ModelSpec line = build_model(Statistics::boson, 1, {});
  const std::vector<int> long_sizes = {32, 64, 128, 256};
  const ScalingReport one_d = area_law_check(line, long_sizes, {}, options);
  CHECK(one_d.monotone);
  CHECK_FALSE(one_d.contracting);
  CHECK_FALSE(one_d.area_law);

  const ModelSpec fermion = build_model(Statistics::fermion, 2, {{"a", 1.0}});
  CHECK_THROWS_AS(area_law_check(fermion, sizes, {}, options), std::invalid_argument);
  const std::vector<int> odd = {15, 32, 64};
  CHECK_THROWS_AS(area_law_check(critical, odd, {}, options), std::invalid_argument);
}
