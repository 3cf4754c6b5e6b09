#pragma once

#include "halfspace/analysis.hpp"
#include "halfspace/decouple.hpp"
#include "halfspace/gaussian.hpp"
#include "halfspace/model.hpp"

#include <span>
#include <vector>

namespace halfspace {

/// (1/2) log2(lambda_max / lambda_min) of a chain; +inf when lambda_min
/// vanishes.
double chain_negativity_closed(const ChainModel& chain);

/// The same for the critical nearest-neighbour family,
/// (1/2) log2((D - sum cos + 1) / (D - sum cos - 1)); +inf at phi' = 0.
double chain_negativity_closed(const Eigen::Ref<const Eigen::VectorXd>& transverse,
                               int dimension);

struct NegativityBound {
  double value = 0.0;
  double error = 0.0;
  std::vector<int> resolutions;
  std::vector<double> ladder;  // midpoint quadrature at each resolution
};

/// Transverse average of the closed-form chain negativity of the critical
/// family. Midpoint grids never touch the singular chain; the estimates at
/// resolution / 4, / 2 and resolution are extrapolated.
NegativityBound halfspace_negativity_bound(int dimension, int resolution);

/// E_N of the chain of `sites` sites split in halves, coupling
/// lambda + mass^2.
double chain_negativity_numeric(const ChainModel& chain, int sites, double mass);

/// Entropy of the first half of the same state.
double chain_entropy_numeric(const ChainModel& chain, int sites, double mass);

struct NegativityRecord {
  Eigen::VectorXd transverse;
  double closed = 0.0;
  double numeric = 0.0;
  double entropy = 0.0;
  int sites = 0;
  double mass = 0.0;
};

NegativityRecord negativity_record(const ChainModel& chain, int sites, double mass);

/// True when the chain's own lattice spectrum on `sites` sites has a zero
/// mode, i.e. it needs the mass regularizer to exist at all.
bool has_zero_mode(const ChainModel& chain, int sites);

struct ScalingPoint {
  int sites = 0;
  double mass = 0.0;
  double entropy = 0.0;     // transverse average of E_S, singular chain excluded
  double negativity = 0.0;  // the same for E_N (NaN when not requested)
  double singular_entropy = 0.0;  // E_S of the punctured chain (0 if none)
  std::size_t punctured = 0;
};

struct ScalingReport {
  std::vector<ScalingPoint> points;  // N major, mass minor
  double bound = 0.0;                // negativity bound (inf for D = 1)
  bool monotone = false;             // E(N) monotone for every mass
  bool bounded = false;              // every E(N) <= bound
  bool contracting = false;          // increments of E(N) shrink
  double mass_variation = 0.0;       // max - min over masses, largest N
  double negativity_mass_variation = 0.0;
  bool mass_independent = false;     // mass_variation < tolerance
  bool area_law = false;             // monotone, bounded and contracting
  std::vector<ChainRecord> chains;   // largest N, first mass
};

struct AreaLawOptions {
  unsigned workers = 1;
  bool with_negativity = false;
  double mass_tolerance = 1e-3;
  int bound_resolution = 4096;
};

/// Per-chain numeric E_S aggregated over the lattice transverse grid of N
/// chains of length N, split at N / 2, for every (N, mass). An empty mass
/// ladder means mass = 1 / N. Chains with a zero mode are excluded from the
/// average when D >= 2 and reported separately.
ScalingReport area_law_check(const ModelSpec& model, std::span<const int> sizes,
                             std::span<const double> masses,
                             const AreaLawOptions& options = {});

}  // namespace halfspace
