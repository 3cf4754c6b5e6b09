#include "halfspace/boson.hpp"

#include "halfspace/error.hpp"
#include "halfspace/parallel.hpp"

#include <cmath>
#include <limits>

namespace halfspace {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();
constexpr double kZeroModeTolerance = 1e-12;
// E(N) counts as converging when each increment is at most this fraction
// of the previous one.
constexpr double kContractionRatio = 0.75;

void require_even_sites(int sites) {
  if (sites < 2 || sites % 2 != 0) {
    throw std::invalid_argument("chain length must be even and >= 2");
  }
}

}  // namespace

double chain_negativity_closed(const ChainModel& chain) {
  const double lowest = chain_minimum(chain);
  const double highest = chain_maximum(chain);
  const double tolerance = kZeroModeTolerance * std::max(chain.scale(), 1.0);
  if (lowest < -tolerance) {
    throw ContractViolation("boson_engine", "boson chain stability (lambda >= 0)",
                            "chain dispersion minimum " + std::to_string(lowest));
  }
  if (lowest <= tolerance) return kInfinity;
  return 0.5 * std::log2(highest / lowest);
}

double chain_negativity_closed(const Eigen::Ref<const Eigen::VectorXd>& transverse,
                               int dimension) {
  if (dimension < 2 || transverse.size() != dimension - 1) {
    throw std::invalid_argument(
        "chain_negativity_closed: needs D >= 2 and D - 1 transverse angles");
  }
  const double shifted = dimension - transverse.array().cos().sum();
  const double denominator = shifted - 1.0;
  if (denominator <= kZeroModeTolerance) return kInfinity;
  return 0.5 * std::log2((shifted + 1.0) / denominator);
}

NegativityBound halfspace_negativity_bound(int dimension, int resolution) {
  if (dimension < 2) throw std::invalid_argument("negativity bound needs D >= 2");
  if (resolution < 8 || resolution % 4 != 0) {
    throw std::invalid_argument(
        "negativity bound resolution must be a multiple of 4 and >= 8");
  }
  NegativityBound bound;
  for (int r : {resolution / 4, resolution / 2, resolution}) {
    const TransverseGrid grid(dimension - 1, r, GridAlignment::midpoint);
    CompensatedSum sum;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      sum.add(chain_negativity_closed(grid.point(i), dimension));
    }
    bound.resolutions.push_back(r);
    bound.ladder.push_back(sum.value() / static_cast<double>(grid.size()));
  }
  const ConvergenceEstimate estimate = convergence_estimate(bound.ladder);
  bound.value = estimate.limit;
  bound.error = estimate.error;
  return bound;
}

double chain_negativity_numeric(const ChainModel& chain, int sites, double mass) {
  require_even_sites(sites);
  return log_negativity(boson_ground_covariance(chain, sites, mass), sites / 2);
}

double chain_entropy_numeric(const ChainModel& chain, int sites, double mass) {
  require_even_sites(sites);
  const CovariancePair half =
      restrict(boson_ground_covariance(chain, sites, mass), 0, sites / 2);
  return boson_entropy(symplectic_spectrum(half.x, half.p));
}

NegativityRecord negativity_record(const ChainModel& chain, int sites, double mass) {
  require_even_sites(sites);
  NegativityRecord record;
  record.transverse = chain.transverse();
  record.closed = chain_negativity_closed(chain);
  const CovariancePair state = boson_ground_covariance(chain, sites, mass);
  record.numeric = log_negativity(state, sites / 2);
  const CovariancePair half = restrict(state, 0, sites / 2);
  record.entropy = boson_entropy(symplectic_spectrum(half.x, half.p));
  record.sites = sites;
  record.mass = mass;
  return record;
}

bool has_zero_mode(const ChainModel& chain, int sites) {
  const double tolerance = kZeroModeTolerance * std::max(chain.scale(), 1.0);
  return chain.sample(sites).minCoeff() <= tolerance;
}

ScalingReport area_law_check(const ModelSpec& model, std::span<const int> sizes,
                             std::span<const double> masses,
                             const AreaLawOptions& options) {
  if (model.statistics() != Statistics::boson) {
    throw std::invalid_argument("area_law_check needs a boson model");
  }
  if (sizes.empty()) throw std::invalid_argument("area_law_check: empty N ladder");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    require_even_sites(sizes[i]);
    if (i > 0 && sizes[i] <= sizes[i - 1]) {
      throw std::invalid_argument("area_law_check: N ladder must increase");
    }
  }
  for (double mass : masses) {
    if (!(mass >= 0.0)) throw std::invalid_argument("masses must be >= 0");
  }
  const int dimension = model.dimension();
  const bool puncture = dimension >= 2;
  const std::size_t mass_count = masses.empty() ? 1 : masses.size();

  ScalingReport report;
  report.bound = dimension >= 2
                     ? halfspace_negativity_bound(dimension, options.bound_resolution)
                           .value
                     : kInfinity;

  struct PerChain {
    double entropy = 0.0;
    double negativity = 0.0;
    double singular = 0.0;
    bool punctured = false;
    double gap = 0.0;
  };
  for (int sites : sizes) {
    const TransverseGrid grid(dimension - 1, sites, GridAlignment::lattice);
    for (std::size_t j = 0; j < mass_count; ++j) {
      const double mass = masses.empty() ? 1.0 / sites : masses[j];
      const auto chains = map_chains(
          model, grid, options.workers, [&](const ChainModel& chain, std::size_t) {
            PerChain out;
            out.gap = chain_gap(chain);
            const CovariancePair state = boson_ground_covariance(chain, sites, mass);
            const CovariancePair half = restrict(state, 0, sites / 2);
            out.entropy = boson_entropy(symplectic_spectrum(half.x, half.p));
            out.negativity = options.with_negativity
                                 ? log_negativity(state, sites / 2)
                                 : std::numeric_limits<double>::quiet_NaN();
            if (puncture && has_zero_mode(chain, sites)) {
              out.punctured = true;
              out.singular = out.entropy;
            }
            return out;
          });

      std::vector<double> entropy(grid.size());
      std::vector<double> negativity(grid.size());
      ScalingPoint point;
      point.sites = sites;
      point.mass = mass;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        entropy[i] = chains[i].punctured ? kInfinity : chains[i].entropy;
        negativity[i] = chains[i].punctured ? kInfinity : chains[i].negativity;
        if (chains[i].punctured) point.singular_entropy = chains[i].singular;
      }
      const TransverseAverage e = aggregate(entropy, grid, PuncturePolicy::exclude);
      point.entropy = e.value;
      point.punctured = e.punctured;
      point.negativity = options.with_negativity
                             ? aggregate(negativity, grid, PuncturePolicy::exclude).value
                             : std::numeric_limits<double>::quiet_NaN();
      report.points.push_back(point);

      if (sites == sizes.back() && j == 0) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
          ChainRecord record;
          record.transverse = grid.point(i);
          record.gap = chains[i].gap;
          record.entropy = chains[i].entropy;
          record.negativity = chains[i].negativity;
          report.chains.push_back(std::move(record));
        }
      }
    }
  }

  auto at = [&](std::size_t n, std::size_t j) -> const ScalingPoint& {
    return report.points[n * mass_count + j];
  };
  report.monotone = true;
  report.contracting = sizes.size() >= 3;
  report.bounded = true;
  for (std::size_t j = 0; j < mass_count; ++j) {
    bool increasing = true;
    bool decreasing = true;
    for (std::size_t n = 0; n < sizes.size(); ++n) {
      if (!(at(n, j).entropy <= report.bound)) report.bounded = false;
      if (n == 0) continue;
      const double step = at(n, j).entropy - at(n - 1, j).entropy;
      increasing = increasing && step >= 0.0;
      decreasing = decreasing && step <= 0.0;
      if (n >= 2) {
        const double previous = at(n - 1, j).entropy - at(n - 2, j).entropy;
        if (!(std::abs(step) <= kContractionRatio * std::abs(previous))) {
          report.contracting = false;
        }
      }
    }
    report.monotone = report.monotone && (increasing || decreasing);
  }

  const std::size_t last = sizes.size() - 1;
  double lo = kInfinity, hi = -kInfinity, nlo = kInfinity, nhi = -kInfinity;
  for (std::size_t j = 0; j < mass_count; ++j) {
    lo = std::min(lo, at(last, j).entropy);
    hi = std::max(hi, at(last, j).entropy);
    nlo = std::min(nlo, at(last, j).negativity);
    nhi = std::max(nhi, at(last, j).negativity);
  }
  report.mass_variation = hi - lo;
  report.negativity_mass_variation =
      options.with_negativity ? nhi - nlo : std::numeric_limits<double>::quiet_NaN();
  report.mass_independent = report.mass_variation < options.mass_tolerance;
  report.area_law = report.monotone && report.bounded && report.contracting;
  return report;
}

}  // namespace halfspace
