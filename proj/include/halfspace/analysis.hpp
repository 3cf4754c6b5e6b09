#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace halfspace {

/// value = prefactor * log2(M) + intercept, unweighted least squares.
struct ScalingFit {
  double prefactor = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // Euclidean norm of the residual vector
  double m_min = 0.0;
  double m_max = 0.0;
  std::size_t points = 0;
};

/// Needs at least four points with strictly increasing M.
ScalingFit fit_log_scaling(std::span<const double> sizes,
                           std::span<const double> values);

struct Kink {
  std::size_t index = 0;
  double location = 0.0;
  double left_slope = 0.0;
  double right_slope = 0.0;
  double gap = 0.0;  // right_slope - left_slope
  /// Right-hand difference quotients at the refined onset for steps
  /// h, h/2, h/4, h/8. A square-root onset grows by sqrt(2) per halving.
  std::vector<double> right_slope_trend;
  bool right_slope_divergent = false;
};

struct LifshitzScan {
  std::vector<double> parameters;
  std::vector<double> values;
  std::vector<Kink> kinks;  // sorted by location
};

/// Evaluates `volume` on the parameter grid and flags points whose second
/// difference exceeds 10x the median second difference of the scan (and an
/// absolute floor). Contiguous flagged points form a single kink located at
/// the largest spike. `volume` must be safe to call concurrently.
LifshitzScan lifshitz_scan(std::span<const double> grid,
                           const std::function<double(double)>& volume,
                           unsigned workers = 1);

/// `count` equally spaced points on [lo, hi], both ends included.
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

struct ConvergenceEstimate {
  double limit = 0.0;
  double error = 0.0;  // magnitude of the last extrapolation correction
  double ratio = 0.0;  // contraction ratio of the last two differences
};

/// Aitken extrapolation of the last three terms of a sequence taken at
/// doubling resolutions. Throws ContractViolation when the differences do
/// not contract.
ConvergenceEstimate convergence_estimate(std::span<const double> sequence);

}  // namespace halfspace
