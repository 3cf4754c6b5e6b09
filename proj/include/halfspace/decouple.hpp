#pragma once

#include "halfspace/model.hpp"
#include "halfspace/parallel.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace halfspace {

/// Effective 1D chain at fixed transverse momentum phi'.
///
/// The real-space coefficients c_0..c_R give
///     lambda(phi_1) = c_0 + 2 sum_{l>=1} c_l cos(l phi_1),
/// so the cyclic chain coupling is c_{|i-j|}.
class ChainModel {
 public:
  ChainModel(Statistics statistics, Eigen::VectorXd coefficients,
             Eigen::VectorXd transverse = Eigen::VectorXd());

  Statistics statistics() const noexcept { return statistics_; }
  const Eigen::VectorXd& transverse() const noexcept { return transverse_; }
  const Eigen::VectorXd& coefficients() const noexcept { return coefficients_; }
  int range() const noexcept {
    return static_cast<int>(coefficients_.size()) - 1;
  }

  double operator()(double phi) const;

  /// Values at phi = 2 pi k / points, k = 0..points-1.
  Eigen::ArrayXd sample(int points) const;

  /// Sum of |coefficient| weights; bounds |lambda| everywhere.
  double scale() const noexcept;

 private:
  Statistics statistics_;
  Eigen::VectorXd coefficients_;
  Eigen::VectorXd transverse_;
};

/// Folds the transverse phases into the chain coefficients. The parent
/// model must be reflection symmetric along the first axis so that the
/// chain symbol is even and real.
ChainModel chain_at(const ModelSpec& model,
                    const Eigen::Ref<const Eigen::VectorXd>& transverse);

/// Min over phi_1 of lambda (boson: sqrt, error if negative) or |lambda|
/// (fermion); 4096-point scan plus golden-section polish.
double chain_gap(const ChainModel& chain, int samples = 4096);

/// Gap of the critical nearest-neighbour boson chain,
/// sqrt((D - sum_d cos phi'_d - 1) / D).
double critical_boson_chain_gap(const Eigen::Ref<const Eigen::VectorXd>& transverse,
                                int dimension);

double chain_minimum(const ChainModel& chain, int samples = 4096);
double chain_maximum(const ChainModel& chain, int samples = 4096);

enum class GridAlignment {
  lattice,   // phi' = 2 pi k / N, the momenta of the finite lattice
  midpoint,  // phi' = 2 pi (k + 1/2) / N, never touches phi' = 0
};

/// Uniform grid over [0, 2 pi)^dim with equal weights (2 pi / N)^dim.
class TransverseGrid {
 public:
  TransverseGrid(int dimension, int resolution,
                 GridAlignment alignment = GridAlignment::lattice);

  int dimension() const noexcept { return dimension_; }
  int resolution() const noexcept { return resolution_; }
  GridAlignment alignment() const noexcept { return alignment_; }
  std::size_t size() const noexcept { return size_; }

  Eigen::VectorXd point(std::size_t index) const;
  std::vector<int> indices(std::size_t index) const;
  std::size_t flat_index(const std::vector<int>& indices) const;

  /// Index of the point at 2 pi - phi' (componentwise, modulo 2 pi).
  std::size_t mirror(std::size_t index) const;

  double weight() const noexcept;
  double total_weight() const noexcept;

  TransverseGrid refined() const {
    return TransverseGrid(dimension_, 2 * resolution_, alignment_);
  }

 private:
  int dimension_;
  int resolution_;
  GridAlignment alignment_;
  std::size_t size_;
};

enum class PuncturePolicy {
  reject,   // any infinite value is an error
  exclude,  // infinite values contribute nothing (measure-zero puncture)
};

struct TransverseAverage {
  double value = 0.0;
  /// |fine - coarse|, coarse being the every-other-point subgrid; NaN when
  /// the grid has no nested subgrid (odd resolution or midpoint alignment).
  double error = 0.0;
  std::size_t punctured = 0;
};

/// (2 pi)^{-(D-1)} * sum_k value_k * weight, summed in grid order with
/// compensation.
TransverseAverage aggregate(std::span<const double> values,
                            const TransverseGrid& grid,
                            PuncturePolicy policy = PuncturePolicy::reject);

/// Evaluates fn on `grid` and on `grid.refined()` and reports the refined
/// average with the doubling difference as its error.
template <typename Fn>
TransverseAverage transverse_average(const TransverseGrid& grid, Fn&& fn,
                                     unsigned workers,
                                     PuncturePolicy policy = PuncturePolicy::reject) {
  auto evaluate = [&](const TransverseGrid& g) {
    const auto values = parallel_map(
        g.size(), workers, [&](std::size_t i) { return fn(g.point(i)); });
    return aggregate(values, g, policy);
  };
  const TransverseAverage coarse = evaluate(grid);
  TransverseAverage fine = evaluate(grid.refined());
  fine.error = std::abs(fine.value - coarse.value);
  return fine;
}

/// Runs fn(chain, index) once per mirror pair {k, mirror(k)} of the grid,
/// in parallel, and returns one result per grid point in grid order. Valid
/// because chain_at(phi') and chain_at(2 pi - phi') coincide for models
/// accepted by chain_at.
template <typename Fn>
auto map_chains(const ModelSpec& model, const TransverseGrid& grid,
                unsigned workers, Fn&& fn) {
  std::vector<std::size_t> representatives;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.mirror(i) >= i) representatives.push_back(i);
  }
  auto unique = parallel_map(representatives.size(), workers, [&](std::size_t r) {
    const std::size_t index = representatives[r];
    return fn(chain_at(model, grid.point(index)), index);
  });
  std::vector<typename decltype(unique)::value_type> out(grid.size());
  for (std::size_t r = 0; r < representatives.size(); ++r) {
    out[representatives[r]] = unique[r];
    out[grid.mirror(representatives[r])] = unique[r];
  }
  return out;
}

/// Row of the per-chain CSV export.
struct ChainRecord {
  Eigen::VectorXd transverse;
  int discontinuities = 0;
  double gap = 0.0;
  double entropy = 0.0;
  double negativity = 0.0;
};

/// Header `phi_2,...,phi_D,s,gap,E_S,E_N`, then one row per record.
void write_chain_csv(std::ostream& out, std::span<const ChainRecord> records,
                     int transverse_dimension);

}  // namespace halfspace
