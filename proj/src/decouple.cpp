#include "halfspace/decouple.hpp"

#include "halfspace/error.hpp"
#include "halfspace/io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

namespace halfspace {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Golden-section minimisation of f on [lo, hi].
template <typename F>
double golden_minimum(F&& f, double lo, double hi, double tolerance = 1e-12) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tolerance) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = f(x2);
    }
  }
  return std::min(f1, f2);
}

template <typename F>
double periodic_minimum(F&& f, int samples) {
  if (samples < 3) throw std::invalid_argument("need at least 3 samples");
  const double step = kTwoPi / samples;
  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    const double value = f(step * k);
    if (value < best_value) {
      best_value = value;
      best = k;
    }
  }
  const double polished =
      golden_minimum(f, step * (best - 1), step * (best + 1));
  return std::min(best_value, polished);
}

}  // namespace

ChainModel::ChainModel(Statistics statistics, Eigen::VectorXd coefficients,
                       Eigen::VectorXd transverse)
    : statistics_(statistics),
      coefficients_(std::move(coefficients)),
      transverse_(std::move(transverse)) {
  if (coefficients_.size() == 0) {
    throw std::invalid_argument("chain needs at least the diagonal coefficient");
  }
}

double ChainModel::operator()(double phi) const {
  double value = coefficients_(0);
  for (Eigen::Index l = 1; l < coefficients_.size(); ++l) {
    value += 2.0 * coefficients_(l) * std::cos(static_cast<double>(l) * phi);
  }
  return value;
}

Eigen::ArrayXd ChainModel::sample(int points) const {
  Eigen::ArrayXd values(points);
  for (int k = 0; k < points; ++k) {
    // Reduce k*l modulo the period and fold onto [0, pi] so that
    // sample(k) == sample(points - k) bit for bit.
    double value = coefficients_(0);
    for (Eigen::Index l = 1; l < coefficients_.size(); ++l) {
      long long phase = (static_cast<long long>(k) * l) % points;
      phase = std::min<long long>(phase, points - phase);
      value += 2.0 * coefficients_(l) * std::cos(kTwoPi * phase / points);
    }
    values(k) = value;
  }
  return values;
}

double ChainModel::scale() const noexcept {
  return std::abs(coefficients_(0)) +
         2.0 * coefficients_.tail(coefficients_.size() - 1).cwiseAbs().sum();
}

ChainModel chain_at(const ModelSpec& model,
                    const Eigen::Ref<const Eigen::VectorXd>& transverse) {
  const int dimension = model.dimension();
  if (transverse.size() != dimension - 1) {
    throw std::invalid_argument(
        "chain_at: transverse momentum has " + std::to_string(transverse.size()) +
        " components, expected " + std::to_string(dimension - 1));
  }
  if (dimension > 1 && !model.reflection_symmetric(0)) {
    throw std::invalid_argument(
        "chain_at: couplings are not reflection symmetric along the first "
        "axis, the chain symbol would not be even");
  }
  Eigen::VectorXd coefficients = Eigen::VectorXd::Zero(model.range() + 1);
  for (const auto& [offset, value] : model.couplings()) {
    const int l1 = offset[0];
    if (l1 < 0) continue;
    double phase = 0.0;
    for (int d = 1; d < dimension; ++d) phase += transverse(d - 1) * offset[d];
    coefficients(l1) += value * std::cos(phase);
  }
  return ChainModel(model.statistics(), std::move(coefficients), transverse);
}

double chain_minimum(const ChainModel& chain, int samples) {
  return periodic_minimum(chain, samples);
}

double chain_maximum(const ChainModel& chain, int samples) {
  return -periodic_minimum([&](double phi) { return -chain(phi); }, samples);
}

double chain_gap(const ChainModel& chain, int samples) {
  if (chain.statistics() == Statistics::fermion) {
    return periodic_minimum([&](double phi) { return std::abs(chain(phi)); },
                            samples);
  }
  const double lowest = chain_minimum(chain, samples);
  if (lowest < -1e-12) {
    throw ContractViolation("decouple", "boson chain stability (lambda >= 0)",
                            "chain dispersion minimum " + std::to_string(lowest));
  }
  return std::sqrt(std::max(lowest, 0.0));
}

double critical_boson_chain_gap(const Eigen::Ref<const Eigen::VectorXd>& transverse,
                                int dimension) {
  if (transverse.size() != dimension - 1) {
    throw std::invalid_argument("critical_boson_chain_gap: dimension mismatch");
  }
  const double squared =
      (dimension - transverse.array().cos().sum() - 1.0) / dimension;
  return std::sqrt(std::max(squared, 0.0));
}

TransverseGrid::TransverseGrid(int dimension, int resolution,
                               GridAlignment alignment)
    : dimension_(dimension), resolution_(resolution), alignment_(alignment) {
  if (dimension < 0) throw std::invalid_argument("negative grid dimension");
  if (resolution < 1) throw std::invalid_argument("grid resolution must be >= 1");
  const double total = std::pow(static_cast<double>(resolution), dimension);
  if (total > 1e9) throw std::invalid_argument("transverse grid too large");
  size_ = static_cast<std::size_t>(total);
}

std::vector<int> TransverseGrid::indices(std::size_t index) const {
  std::vector<int> out(dimension_);
  for (int d = 0; d < dimension_; ++d) {
    out[d] = static_cast<int>(index % resolution_);
    index /= resolution_;
  }
  return out;
}

std::size_t TransverseGrid::flat_index(const std::vector<int>& indices) const {
  std::size_t index = 0;
  for (int d = dimension_ - 1; d >= 0; --d) {
    index = index * resolution_ + static_cast<std::size_t>(indices[d]);
  }
  return index;
}

Eigen::VectorXd TransverseGrid::point(std::size_t index) const {
  const double shift = alignment_ == GridAlignment::midpoint ? 0.5 : 0.0;
  const auto k = indices(index);
  Eigen::VectorXd phi(dimension_);
  for (int d = 0; d < dimension_; ++d) {
    phi(d) = kTwoPi * (k[d] + shift) / resolution_;
  }
  return phi;
}

std::size_t TransverseGrid::mirror(std::size_t index) const {
  auto k = indices(index);
  for (auto& x : k) {
    x = alignment_ == GridAlignment::midpoint
            ? resolution_ - 1 - x
            : (resolution_ - x) % resolution_;
  }
  return flat_index(k);
}

double TransverseGrid::weight() const noexcept {
  return std::pow(kTwoPi / resolution_, dimension_);
}

double TransverseGrid::total_weight() const noexcept {
  return std::pow(kTwoPi, dimension_);
}

TransverseAverage aggregate(std::span<const double> values,
                            const TransverseGrid& grid, PuncturePolicy policy) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("aggregate: one value per grid point required");
  }
  const bool nested = grid.dimension() > 0 && grid.resolution() % 2 == 0 &&
                      grid.alignment() == GridAlignment::lattice;
  CompensatedSum fine;
  CompensatedSum coarse;
  TransverseAverage result;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (std::isnan(v)) {
      throw ContractViolation("decouple", "finite per-chain values",
                              "NaN at transverse grid point " + std::to_string(i));
    }
    if (std::isinf(v)) {
      if (policy == PuncturePolicy::reject) {
        throw ContractViolation("decouple", "finite per-chain values",
                                "infinite value at grid point " +
                                    std::to_string(i) +
                                    " (use the puncture policy)");
      }
      ++result.punctured;
      continue;
    }
    fine.add(v);
    if (nested) {
      const auto k = grid.indices(i);
      if (std::all_of(k.begin(), k.end(), [](int x) { return x % 2 == 0; })) {
        coarse.add(v);
      }
    }
  }
  result.value = fine.value() / static_cast<double>(grid.size());
  if (grid.dimension() == 0) {
    result.error = 0.0;
  } else if (nested) {
    const double coarse_count =
        std::pow(static_cast<double>(grid.resolution() / 2), grid.dimension());
    result.error = std::abs(result.value - coarse.value() / coarse_count);
  } else {
    result.error = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

void write_chain_csv(std::ostream& out, std::span<const ChainRecord> records,
                     int transverse_dimension) {
  std::vector<std::string> header;
  for (int d = 0; d < transverse_dimension; ++d) {
    header.push_back("phi_" + std::to_string(d + 2));
  }
  for (const char* name : {"s", "gap", "E_S", "E_N"}) header.emplace_back(name);
  CsvWriter csv(out, header);
  std::vector<double> row;
  for (const auto& record : records) {
    row.assign(record.transverse.data(),
               record.transverse.data() + record.transverse.size());
    row.push_back(record.discontinuities);
    row.push_back(record.gap);
    row.push_back(record.entropy);
    row.push_back(record.negativity);
    csv.row(row);
  }
}

}  // namespace halfspace
