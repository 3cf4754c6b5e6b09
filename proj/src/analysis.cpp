#include "halfspace/analysis.hpp"

#include "halfspace/error.hpp"
#include "halfspace/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace halfspace {

namespace {

constexpr double kSpikeFactor = 10.0;
constexpr double kSpikeFloor = 1e-9;

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const auto middle = values.begin() + values.size() / 2;
  std::nth_element(values.begin(), middle, values.end());
  if (values.size() % 2 == 1) return *middle;
  return 0.5 * (*middle + *std::max_element(values.begin(), middle));
}

}  // namespace

ScalingFit fit_log_scaling(std::span<const double> sizes,
                           std::span<const double> values) {
  if (sizes.size() != values.size()) {
    throw std::invalid_argument("fit_log_scaling: sizes and values differ in length");
  }
  if (sizes.size() < 4) {
    throw std::invalid_argument("fit_log_scaling: need at least 4 points");
  }
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (!(sizes[i] > 0.0) || (i > 0 && !(sizes[i] > sizes[i - 1]))) {
      throw std::invalid_argument(
          "fit_log_scaling: M must be positive and strictly increasing");
    }
  }
  const Eigen::Index n = static_cast<Eigen::Index>(sizes.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = std::log2(sizes[i]);
    design(i, 1) = 1.0;
    rhs(i) = values[i];
  }
  const Eigen::Vector2d solution = design.colPivHouseholderQr().solve(rhs);
  ScalingFit fit;
  fit.prefactor = solution(0);
  fit.intercept = solution(1);
  fit.residual = (design * solution - rhs).norm();
  fit.m_min = sizes.front();
  fit.m_max = sizes.back();
  fit.points = sizes.size();
  return fit;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  if (count < 2) throw std::invalid_argument("linear_grid: need two points");
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  }
  return grid;
}

LifshitzScan lifshitz_scan(std::span<const double> grid,
                           const std::function<double(double)>& volume,
                           unsigned workers) {
  LifshitzScan scan;
  scan.parameters.assign(grid.begin(), grid.end());
  scan.values = parallel_map(grid.size(), workers,
                             [&](std::size_t i) { return volume(grid[i]); });
  const std::size_t n = grid.size();
  if (n < 3) return scan;

  std::vector<double> second(n, 0.0);
  std::vector<double> magnitudes;
  double scale = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    second[i] = scan.values[i + 1] - 2.0 * scan.values[i] + scan.values[i - 1];
    magnitudes.push_back(std::abs(second[i]));
  }
  for (double v : scan.values) scale = std::max(scale, std::abs(v));
  const double threshold =
      std::max(kSpikeFactor * median(magnitudes), kSpikeFloor * std::max(scale, 1.0));

  std::vector<std::size_t> flagged;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (std::abs(second[i]) > threshold) flagged.push_back(i);
  }

  // Spikes closer than three points belong to one kink.
  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t i : flagged) {
    if (clusters.empty() || i > clusters.back().back() + 2) clusters.emplace_back();
    clusters.back().push_back(i);
  }

  for (const auto& cluster : clusters) {
    const std::size_t k = *std::max_element(
        cluster.begin(), cluster.end(), [&](std::size_t x, std::size_t y) {
          return std::abs(second[x]) < std::abs(second[y]);
        });
    Kink kink;
    kink.index = k;
    kink.location = grid[k];
    kink.left_slope =
        (scan.values[k] - scan.values[k - 1]) / (grid[k] - grid[k - 1]);
    kink.right_slope =
        (scan.values[k + 1] - scan.values[k]) / (grid[k + 1] - grid[k]);
    kink.gap = kink.right_slope - kink.left_slope;

    // Onset refinement: when the left side is flat, bisect for the first
    // parameter where the curve leaves its left value.
    const double h = grid[k + 1] - grid[k];
    const double base = scan.values[k];
    const double floor = kSpikeFloor * std::max(scale, 1.0);
    double onset = grid[k];
    if (std::abs(kink.left_slope) * h <= floor) {
      double lo = grid[k];
      double hi = grid[k + 1];
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi));
           ++it) {
        const double mid = 0.5 * (lo + hi);
        (std::abs(volume(mid) - base) <= floor ? lo : hi) = mid;
      }
      onset = hi;
    }
    const double at_onset = volume(onset);
    for (int j = 0; j < 4; ++j) {
      const double step = h / std::pow(2.0, j);
      kink.right_slope_trend.push_back((volume(onset + step) - at_onset) / step);
    }
    const auto& t = kink.right_slope_trend;
    kink.right_slope_divergent = true;
    for (std::size_t j = 1; j < t.size(); ++j) {
      if (!(std::abs(t[j]) > 1.2 * std::abs(t[j - 1]))) {
        kink.right_slope_divergent = false;
      }
    }
    scan.kinks.push_back(std::move(kink));
  }
  return scan;
}

ConvergenceEstimate convergence_estimate(std::span<const double> sequence) {
  if (sequence.size() < 3) {
    throw std::invalid_argument("convergence_estimate: need at least 3 terms");
  }
  const std::size_t n = sequence.size();
  const double x0 = sequence[n - 3];
  const double x1 = sequence[n - 2];
  const double x2 = sequence[n - 1];
  for (double x : {x0, x1, x2}) {
    if (!std::isfinite(x)) {
      throw ContractViolation("analysis", "convergent sequence",
                              "non-finite term in the ladder");
    }
  }
  const double d1 = x1 - x0;
  const double d2 = x2 - x1;
  ConvergenceEstimate estimate;
  if (d2 == 0.0) {
    estimate.limit = x2;
    return estimate;
  }
  if (d1 == 0.0) {
    throw ContractViolation("analysis", "convergent sequence",
                            "difference grows from zero");
  }
  estimate.ratio = d2 / d1;
  if (!(std::abs(estimate.ratio) < 1.0)) {
    throw ContractViolation(
        "analysis", "convergent sequence",
        "no convergence: successive differences do not contract (ratio " +
            std::to_string(estimate.ratio) + ")");
  }
  const double correction = d2 * estimate.ratio / (1.0 - estimate.ratio);
  estimate.limit = x2 + correction;
  estimate.error = std::abs(correction);
  return estimate;
}

}  // namespace halfspace
