#pragma once

#include "halfspace/decouple.hpp"
#include "halfspace/gaussian.hpp"
#include "halfspace/model.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace halfspace {

/// Discontinuities of the symbol sgn(lambda) of one chain.
struct SymbolTopology {
  int discontinuities = 0;          // strict sign changes on [0, 2 pi)
  std::vector<double> zeros;        // their locations
  std::vector<double> tangential;   // touching zeros, flagged but not counted

  bool has_tangential_zero() const noexcept { return !tangential.empty(); }
};

SymbolTopology count_discontinuities(const ChainModel& chain, int samples = 4096);

enum class VolumeEstimator {
  grid,         // transverse grid with bisected set boundaries
  analytic_nn,  // closed form for the D = 2 nearest-neighbour family
  monte_carlo,  // uniform samples of phi'
};

std::string_view to_string(VolumeEstimator estimator);
VolumeEstimator parse_volume_estimator(std::string_view text);

struct VolumeOptions {
  VolumeEstimator estimator = VolumeEstimator::grid;
  int resolution = 512;             // grid points per transverse axis
  std::size_t samples = 1u << 16;   // Monte Carlo draws
  std::uint64_t seed = 0;
  int symbol_samples = 1024;        // phi_1 scan per chain
  unsigned workers = 1;
};

/// v(Phi_sigma) = measure of { phi' : s(phi') = sigma }.
struct FermiSetVolume {
  int sigma = 0;
  double volume = 0.0;
  double error = 0.0;
  VolumeEstimator estimator = VolumeEstimator::grid;
  int resolution = 0;
  std::size_t samples = 0;
  bool critical = true;  // analytic branch only: false when the set is empty
};

/// Every sigma that occurs, with its volume. The grid estimator works line
/// by line along the first transverse axis: cells whose end points differ
/// in s are split at the bisected boundary. The error is the difference to
/// the same estimate at half the resolution.
std::map<int, FermiSetVolume> fermi_set_volumes(const ModelSpec& model,
                                                const VolumeOptions& options = {});

FermiSetVolume phi_sigma_volume(const ModelSpec& model, int sigma,
                                const VolumeOptions& options = {});

/// Field and hopping of a D = 2 nearest-neighbour fermion model, or nothing
/// for any other model.
struct NearestNeighbourFamily {
  double diagonal = 0.0;
  double hopping = 0.0;
};
std::optional<NearestNeighbourFamily> nearest_neighbour_family(const ModelSpec& model);

/// 2 arccos(|diag| / (2|a|) - 1), or 0 when |diag| / |a| >= 2.
double analytic_phi2_volume(double diagonal, double hopping);

/// Constant of the half-filled chain, E_S(M) - log2(M) / 3 -> c0, fitted
/// over M in [64, 2048] with the slope held at 1/3.
inline constexpr double kHalfFillingC0 = 1.0474919097;

/// Least-squares c0 for the half-filled chain over the given M ladder.
double fit_c0(std::span<const int> sizes);

enum class SubleadingBranch { automatic, analytic, numeric };

/// Constant term c of one chain. s = 0 gives 0. A nearest-neighbour chain
/// lambda = h + 2 a cos(phi) with |h / a| < 2 uses
///     log2(1 - (h / a)^2 / 4) / 6 + c0,
/// anything else the M-ladder extrapolation of E_S(M) - (s / 6) log2 M.
double subleading_c(const ChainModel& chain, double c0,
                    SubleadingBranch branch = SubleadingBranch::automatic);

/// (s / 6) log2 M + c.
double asymptotic_entropy(const ChainModel& chain, int size, double c0);

/// sum_sigma sigma v(Phi_sigma) / (6 (2 pi)^{D-1}) over sigma <= max_sigma.
double halfspace_log_prefactor(const ModelSpec& model, int max_sigma,
                               const VolumeOptions& options = {});

/// sum_{l=1}^{N/2-1} 4 / (pi^2 l), N even and >= 4.
double lower_bound_series(int sites);

/// Exact integral-mode entropy of the leading block, for every size in the
/// ladder, for one chain.
std::vector<double> chain_entropy_ladder(const ChainModel& chain,
                                         std::span<const int> sizes);

struct EntropyLadder {
  std::vector<int> sizes;
  std::vector<double> density;  // transverse average of E_S(M)
  std::vector<ChainRecord> chains;
};

/// Half-space entropy density E(M) over the transverse grid, N = infinity
/// along the chains.
EntropyLadder halfspace_entropy_ladder(const ModelSpec& model,
                                       std::span<const int> sizes,
                                       const TransverseGrid& grid,
                                       unsigned workers);

/// sum_k E_S(k) / N^{D-1} on the finite N^D lattice with M = N / 2, using
/// finite-N symbols (zero modes counted as empty).
double halfspace_entropy_sum(const ModelSpec& model, int sites, unsigned workers);

}  // namespace halfspace
