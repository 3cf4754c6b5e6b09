#include "halfspace/fermion.hpp"

#include "halfspace/analysis.hpp"
#include "halfspace/error.hpp"
#include "halfspace/parallel.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace halfspace {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kBoundaryBisections = 48;
const std::vector<int> kNumericLadder = {64, 128, 256, 512, 1024};

int discontinuities_at(const ModelSpec& model, const Eigen::VectorXd& transverse,
                       int samples) {
  return count_discontinuities(chain_at(model, transverse), samples)
      .discontinuities;
}

struct Boundary {
  std::size_t line = 0;
  int cell = 0;
};

// Line-wise estimate along the first transverse axis at one resolution.
std::map<int, double> grid_profile(const ModelSpec& model, int resolution,
                                   const VolumeOptions& options) {
  const int transverse = model.dimension() - 1;
  const TransverseGrid grid(transverse, resolution, GridAlignment::lattice);
  const std::vector<int> s =
      parallel_map(grid.size(), options.workers, [&](std::size_t i) {
        return discontinuities_at(model, grid.point(i), options.symbol_samples);
      });

  const std::size_t lines = grid.size() / resolution;
  const double h = kTwoPi / resolution;
  const double line_weight = std::pow(h, transverse - 1);

  std::vector<Boundary> boundaries;
  std::map<int, CompensatedSum> sums;
  for (std::size_t line = 0; line < lines; ++line) {
    for (int k = 0; k < resolution; ++k) {
      const int left = s[line * resolution + k];
      const int right = s[line * resolution + (k + 1) % resolution];
      if (left == right) {
        sums[left].add(h * line_weight);
      } else {
        boundaries.push_back({line, k});
      }
    }
  }

  // Each mixed cell is split where s leaves its left value.
  const auto splits =
      parallel_map(boundaries.size(), options.workers, [&](std::size_t b) {
        const auto [line, k] = boundaries[b];
        Eigen::VectorXd phi = grid.point(line * resolution + k);
        const int left = s[line * resolution + k];
        double lo = phi(0);
        double hi = lo + h;
        for (int it = 0; it < kBoundaryBisections; ++it) {
          phi(0) = 0.5 * (lo + hi);
          (discontinuities_at(model, phi, options.symbol_samples) == left ? lo
                                                                          : hi) =
              phi(0);
        }
        return 0.5 * (lo + hi) - grid.point(line * resolution + k)(0);
      });
  for (std::size_t b = 0; b < boundaries.size(); ++b) {
    const auto [line, k] = boundaries[b];
    const int left = s[line * resolution + k];
    const int right = s[line * resolution + (k + 1) % resolution];
    sums[left].add(splits[b] * line_weight);
    sums[right].add((h - splits[b]) * line_weight);
  }

  std::map<int, double> profile;
  for (const auto& [sigma, sum] : sums) profile[sigma] = sum.value();
  return profile;
}

std::map<int, FermiSetVolume> grid_volumes(const ModelSpec& model,
                                           const VolumeOptions& options) {
  if (options.resolution < 4) {
    throw std::invalid_argument("grid estimator needs resolution >= 4");
  }
  const auto fine = grid_profile(model, options.resolution, options);
  const auto coarse = grid_profile(model, options.resolution / 2, options);
  std::map<int, FermiSetVolume> out;
  auto entry = [&](int sigma) -> FermiSetVolume& {
    auto& v = out[sigma];
    v.sigma = sigma;
    v.estimator = VolumeEstimator::grid;
    v.resolution = options.resolution;
    return v;
  };
  for (const auto& [sigma, volume] : fine) entry(sigma).volume = volume;
  for (const auto& [sigma, volume] : coarse) {
    entry(sigma);
  }
  for (auto& [sigma, v] : out) {
    const auto it = coarse.find(sigma);
    v.error = std::abs(v.volume - (it == coarse.end() ? 0.0 : it->second));
  }
  return out;
}

std::map<int, FermiSetVolume> monte_carlo_volumes(const ModelSpec& model,
                                                  const VolumeOptions& options) {
  if (options.samples < 1) throw std::invalid_argument("need at least one sample");
  const int transverse = model.dimension() - 1;
  std::mt19937_64 engine(options.seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::vector<Eigen::VectorXd> points(options.samples);
  for (auto& p : points) {
    p.resize(transverse);
    for (int d = 0; d < transverse; ++d) p(d) = angle(engine);
  }
  const auto s = parallel_map(points.size(), options.workers, [&](std::size_t i) {
    return discontinuities_at(model, points[i], options.symbol_samples);
  });
  std::map<int, std::size_t> counts;
  for (int sigma : s) ++counts[sigma];
  const double total = std::pow(kTwoPi, transverse);
  const double n = static_cast<double>(options.samples);
  std::map<int, FermiSetVolume> out;
  for (const auto& [sigma, count] : counts) {
    const double fraction = count / n;
    auto& v = out[sigma];
    v.sigma = sigma;
    v.volume = fraction * total;
    v.error = std::sqrt(fraction * (1.0 - fraction) / n) * total;
    v.estimator = VolumeEstimator::monte_carlo;
    v.samples = options.samples;
  }
  return out;
}

std::map<int, FermiSetVolume> analytic_volumes(const ModelSpec& model) {
  const auto family = nearest_neighbour_family(model);
  if (!family) {
    throw std::invalid_argument(
        "analytic volume needs the D = 2 nearest-neighbour fermion family");
  }
  const double v2 = analytic_phi2_volume(family->diagonal, family->hopping);
  std::map<int, FermiSetVolume> out;
  FermiSetVolume two;
  two.sigma = 2;
  two.volume = v2;
  two.estimator = VolumeEstimator::analytic_nn;
  two.critical = v2 > 0.0;
  FermiSetVolume zero = two;
  zero.sigma = 0;
  zero.volume = kTwoPi - v2;
  out[0] = zero;
  out[2] = two;
  return out;
}

}  // namespace

SymbolTopology count_discontinuities(const ChainModel& chain, int samples) {
  const SignStructure structure = symbol_sign_structure(chain, samples);
  SymbolTopology topology;
  topology.discontinuities = static_cast<int>(structure.zeros.size());
  topology.zeros = structure.zeros;
  topology.tangential = structure.tangential;
  return topology;
}

std::string_view to_string(VolumeEstimator estimator) {
  switch (estimator) {
    case VolumeEstimator::grid: return "grid";
    case VolumeEstimator::analytic_nn: return "analytic-nn";
    case VolumeEstimator::monte_carlo: return "monte-carlo";
  }
  return "unknown";
}

VolumeEstimator parse_volume_estimator(std::string_view text) {
  if (text == "grid") return VolumeEstimator::grid;
  if (text == "analytic-nn" || text == "analytic") return VolumeEstimator::analytic_nn;
  if (text == "monte-carlo" || text == "mc") return VolumeEstimator::monte_carlo;
  throw std::invalid_argument("unknown volume estimator '" + std::string(text) +
                              "' (grid, analytic-nn, monte-carlo)");
}

std::optional<NearestNeighbourFamily> nearest_neighbour_family(
    const ModelSpec& model) {
  if (model.statistics() != Statistics::fermion || model.dimension() != 2) {
    return std::nullopt;
  }
  NearestNeighbourFamily family;
  std::optional<double> hopping;
  for (const auto& [offset, value] : model.couplings()) {
    int norm = 0;
    int axes = 0;
    for (int x : offset) {
      norm += std::abs(x);
      axes += x != 0;
    }
    if (norm == 0) {
      family.diagonal = value;
    } else if (norm == 1 && axes == 1) {
      if (hopping && *hopping != value) return std::nullopt;
      hopping = value;
    } else {
      return std::nullopt;
    }
  }
  family.hopping = hopping.value_or(0.0);
  return family;
}

double analytic_phi2_volume(double diagonal, double hopping) {
  if (hopping == 0.0) return 0.0;
  const double x = std::abs(diagonal) / (2.0 * std::abs(hopping));
  if (x >= 2.0) return 0.0;
  return 2.0 * std::acos(x - 1.0);
}

std::map<int, FermiSetVolume> fermi_set_volumes(const ModelSpec& model,
                                                const VolumeOptions& options) {
  if (model.statistics() != Statistics::fermion) {
    throw std::invalid_argument("Fermi-set volumes need a fermion model");
  }
  if (model.dimension() == 1) {
    const int s = count_discontinuities(chain_at(model, Eigen::VectorXd()),
                                        options.symbol_samples)
                      .discontinuities;
    FermiSetVolume v;
    v.sigma = s;
    v.volume = 1.0;
    v.estimator = options.estimator;
    return {{s, v}};
  }
  switch (options.estimator) {
    case VolumeEstimator::grid: return grid_volumes(model, options);
    case VolumeEstimator::monte_carlo: return monte_carlo_volumes(model, options);
    case VolumeEstimator::analytic_nn: return analytic_volumes(model);
  }
  throw std::invalid_argument("unknown volume estimator");
}

FermiSetVolume phi_sigma_volume(const ModelSpec& model, int sigma,
                                const VolumeOptions& options) {
  if (sigma < 0) throw std::invalid_argument("sigma must be >= 0");
  const auto volumes = fermi_set_volumes(model, options);
  if (const auto it = volumes.find(sigma); it != volumes.end()) return it->second;
  FermiSetVolume empty;
  empty.sigma = sigma;
  empty.estimator = options.estimator;
  empty.resolution =
      options.estimator == VolumeEstimator::grid ? options.resolution : 0;
  empty.samples =
      options.estimator == VolumeEstimator::monte_carlo ? options.samples : 0;
  empty.critical = false;
  return empty;
}

double halfspace_log_prefactor(const ModelSpec& model, int max_sigma,
                               const VolumeOptions& options) {
  const auto volumes = fermi_set_volumes(model, options);
  const double total = std::pow(kTwoPi, model.dimension() - 1);
  CompensatedSum sum;
  for (const auto& [sigma, v] : volumes) {
    if (sigma <= max_sigma) sum.add(sigma * v.volume);
  }
  return sum.value() / (6.0 * total);
}

double lower_bound_series(int sites) {
  if (sites < 4 || sites % 2 != 0) {
    throw std::invalid_argument("lower_bound_series: N must be even and >= 4");
  }
  CompensatedSum sum;
  for (int l = 1; l <= sites / 2 - 1; ++l) sum.add(1.0 / l);
  return 4.0 / (std::numbers::pi * std::numbers::pi) * sum.value();
}

std::vector<double> chain_entropy_ladder(const ChainModel& chain,
                                         std::span<const int> sizes) {
  std::vector<double> entropies(sizes.size(), 0.0);
  if (sizes.empty()) return entropies;
  const int largest = *std::max_element(sizes.begin(), sizes.end());
  if (*std::min_element(sizes.begin(), sizes.end()) < 1) {
    throw std::invalid_argument("block sizes must be >= 1");
  }
  const SignStructure structure = symbol_sign_structure(chain);
  // Constant symbol: T = +-1, a pure product state.
  if (structure.zeros.empty()) return entropies;
  ToeplitzCorrelation correlation;
  correlation.coefficients = symbol_coefficients(structure, largest);
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    entropies[i] = fermion_entropy(correlation, sizes[i]);
  }
  return entropies;
}

double fit_c0(std::span<const int> sizes) {
  if (sizes.empty()) throw std::invalid_argument("fit_c0: empty ladder");
  const ChainModel half_filled(Statistics::fermion, Eigen::Vector2d(0.0, 1.0));
  const auto entropies = chain_entropy_ladder(half_filled, sizes);
  CompensatedSum sum;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    sum.add(entropies[i] - std::log2(static_cast<double>(sizes[i])) / 3.0);
  }
  return sum.value() / static_cast<double>(sizes.size());
}

double subleading_c(const ChainModel& chain, double c0, SubleadingBranch branch) {
  const SymbolTopology topology = count_discontinuities(chain);
  const bool nearest = chain.range() == 1 && chain.coefficients()(1) != 0.0;
  const double field =
      nearest ? chain.coefficients()(0) / chain.coefficients()(1) : 0.0;
  const bool analytic_valid = nearest && std::abs(field) < 2.0;

  if (branch == SubleadingBranch::analytic) {
    if (!analytic_valid) {
      throw std::domain_error(
          "subleading_c: analytic branch needs a nearest-neighbour chain with "
          "|h / a| < 2");
    }
    return std::log2(1.0 - field * field / 4.0) / 6.0 + c0;
  }
  if (topology.discontinuities == 0) return 0.0;
  if (branch == SubleadingBranch::automatic && analytic_valid) {
    return std::log2(1.0 - field * field / 4.0) / 6.0 + c0;
  }

  const auto entropies = chain_entropy_ladder(chain, kNumericLadder);
  std::vector<double> residuals(kNumericLadder.size());
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    residuals[i] = entropies[i] - topology.discontinuities / 6.0 *
                                      std::log2(static_cast<double>(kNumericLadder[i]));
  }
  try {
    return convergence_estimate(residuals).limit;
  } catch (const ContractViolation&) {
    return residuals.back();
  }
}

double asymptotic_entropy(const ChainModel& chain, int size, double c0) {
  if (size < 2) throw std::invalid_argument("asymptotic_entropy: M must be >= 2");
  const int s = count_discontinuities(chain).discontinuities;
  return s / 6.0 * std::log2(static_cast<double>(size)) + subleading_c(chain, c0);
}

EntropyLadder halfspace_entropy_ladder(const ModelSpec& model,
                                       std::span<const int> sizes,
                                       const TransverseGrid& grid,
                                       unsigned workers) {
  if (model.statistics() != Statistics::fermion) {
    throw std::invalid_argument("entropy ladder needs a fermion model");
  }
  if (grid.dimension() != model.dimension() - 1) {
    throw std::invalid_argument("transverse grid dimension mismatch");
  }
  struct PerChain {
    std::vector<double> entropies;
    ChainRecord record;
  };
  const auto chains = map_chains(
      model, grid, workers, [&](const ChainModel& chain, std::size_t) {
        PerChain out;
        out.entropies = chain_entropy_ladder(chain, sizes);
        out.record.transverse = chain.transverse();
        out.record.discontinuities = count_discontinuities(chain).discontinuities;
        out.record.gap = chain_gap(chain);
        out.record.entropy = out.entropies.empty() ? 0.0 : out.entropies.back();
        out.record.negativity = std::numeric_limits<double>::quiet_NaN();
        return out;
      });

  EntropyLadder ladder;
  ladder.sizes.assign(sizes.begin(), sizes.end());
  std::vector<double> column(grid.size());
  for (std::size_t m = 0; m < sizes.size(); ++m) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      column[i] = chains[i].entropies[m];
    }
    ladder.density.push_back(aggregate(column, grid).value);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ladder.chains.push_back(chains[i].record);
    ladder.chains.back().transverse = grid.point(i);
  }
  return ladder;
}

double halfspace_entropy_sum(const ModelSpec& model, int sites, unsigned workers) {
  if (model.statistics() != Statistics::fermion) {
    throw std::invalid_argument("entropy sum needs a fermion model");
  }
  if (sites < 2 || sites % 2 != 0) {
    throw std::invalid_argument("halfspace_entropy_sum: N must be even and >= 2");
  }
  const TransverseGrid grid(model.dimension() - 1, sites, GridAlignment::lattice);
  const int block = sites / 2;
  const auto values = map_chains(
      model, grid, workers, [&](const ChainModel& chain, std::size_t) {
        return fermion_entropy(
            symbol_coefficients(chain, SymbolMode::finite, block, sites), block);
      });
  return aggregate(values, grid).value;
}

}  // namespace halfspace
