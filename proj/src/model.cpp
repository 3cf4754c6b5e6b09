#include "halfspace/model.hpp"

#include "halfspace/error.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace halfspace {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kBosonStabilityTolerance = 1e-12;
constexpr double kRefineTolerance = 1e-10;

Offset negated(const Offset& l) {
  Offset out(l.size());
  std::transform(l.begin(), l.end(), out.begin(), [](int x) { return -x; });
  return out;
}

bool is_origin(const Offset& l) {
  return std::all_of(l.begin(), l.end(), [](int x) { return x == 0; });
}

int max_norm(const Offset& l) {
  int m = 0;
  for (int x : l) m = std::max(m, std::abs(x));
  return m;
}

// Minimises f over the torus: best grid point, then compass search.
template <typename F>
double torus_minimum(int dimension, int resolution, F&& f) {
  if (resolution < 3) {
    throw std::invalid_argument("grid resolution must be at least 3 per axis");
  }
  const double step = kTwoPi / resolution;
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(dimension);
  Eigen::VectorXd best_phi = phi;
  double best = std::numeric_limits<double>::infinity();

  std::vector<int> index(dimension, 0);
  for (;;) {
    for (int d = 0; d < dimension; ++d) phi(d) = step * index[d];
    const double value = f(phi);
    if (value < best) {
      best = value;
      best_phi = phi;
    }
    int d = 0;
    while (d < dimension && ++index[d] == resolution) index[d++] = 0;
    if (d == dimension) break;
  }

  double h = step;
  while (h > kRefineTolerance) {
    bool moved = false;
    for (int d = 0; d < dimension; ++d) {
      for (double sign : {1.0, -1.0}) {
        Eigen::VectorXd trial = best_phi;
        trial(d) += sign * h;
        const double value = f(trial);
        if (value < best) {
          best = value;
          best_phi = trial;
          moved = true;
        }
      }
    }
    if (!moved) h *= 0.5;
  }
  return best;
}

int stability_resolution(int dimension) {
  const double budget = 1 << 18;
  return std::max(3, std::min(64, static_cast<int>(std::pow(
                                      budget, 1.0 / dimension))));
}

}  // namespace

std::string_view to_string(Statistics statistics) {
  return statistics == Statistics::boson ? "boson" : "fermion";
}

Statistics parse_statistics(std::string_view text) {
  if (text == "boson" || text == "bosons") return Statistics::boson;
  if (text == "fermion" || text == "fermions") return Statistics::fermion;
  throw std::invalid_argument("unknown statistics '" + std::string(text) +
                              "' (expected boson or fermion)");
}

std::string_view to_string(Stability stability) {
  switch (stability) {
    case Stability::stable:
      return "stable";
    case Stability::critical:
      return "critical";
    case Stability::unstable:
      return "unstable";
  }
  return "unknown";
}

ModelSpec::ModelSpec(Statistics statistics, int dimension,
                     CouplingTable couplings, NamedParameters parameters,
                     std::optional<int> declared_range)
    : statistics_(statistics),
      dimension_(dimension),
      parameters_(std::move(parameters)) {
  if (dimension < 1) {
    throw std::invalid_argument("model dimension must be >= 1");
  }
  for (const auto& [offset, value] : couplings) {
    if (static_cast<int>(offset.size()) != dimension) {
      throw std::invalid_argument("coupling offset has wrong dimension");
    }
    if (!std::isfinite(value)) {
      throw std::invalid_argument("coupling coefficients must be finite");
    }
    if (value != 0.0) couplings_.emplace(offset, value);
  }
  for (const auto& [offset, value] : couplings_) {
    const auto mirror = couplings_.find(negated(offset));
    if (mirror == couplings_.end() || mirror->second != value) {
      throw std::invalid_argument(
          "asymmetric coupling table: V_l != V_{-l} for some offset");
    }
    range_ = std::max(range_, max_norm(offset));
  }
  if (declared_range) {
    if (*declared_range < range_) {
      throw std::invalid_argument("coupling offset exceeds declared range " +
                                  std::to_string(*declared_range));
    }
    range_ = *declared_range;
  }

  std::vector<std::pair<Offset, double>> terms;
  for (const auto& [offset, value] : couplings_) {
    if (is_origin(offset)) {
      terms.emplace_back(offset, value);
    } else if (offset > negated(offset)) {
      terms.emplace_back(offset, 2.0 * value);
    }
  }
  term_offsets_.resize(static_cast<Eigen::Index>(terms.size()), dimension);
  term_weights_.resize(static_cast<Eigen::Index>(terms.size()));
  for (std::size_t t = 0; t < terms.size(); ++t) {
    for (int d = 0; d < dimension; ++d) {
      term_offsets_(static_cast<Eigen::Index>(t), d) = terms[t].first[d];
    }
    term_weights_(static_cast<Eigen::Index>(t)) = terms[t].second;
  }

  if (statistics_ == Statistics::boson) {
    const double lowest =
        torus_minimum(dimension_, stability_resolution(dimension_),
                      [this](const Eigen::VectorXd& phi) {
                        return halfspace::dispersion(*this, phi);
                      });
    if (lowest > kBosonStabilityTolerance) {
      stability_ = Stability::stable;
    } else if (lowest >= -kBosonStabilityTolerance) {
      stability_ = Stability::critical;
    } else {
      stability_ = Stability::unstable;
    }
  }
}

std::optional<double> ModelSpec::parameter(std::string_view name) const {
  const auto it = parameters_.find(name);
  if (it == parameters_.end()) return std::nullopt;
  return it->second;
}

double ModelSpec::coefficient(const Offset& offset) const {
  const auto it = couplings_.find(offset);
  return it == couplings_.end() ? 0.0 : it->second;
}

bool ModelSpec::reflection_symmetric(int axis) const {
  for (const auto& [offset, value] : couplings_) {
    Offset reflected = negated(offset);
    reflected[axis] = offset[axis];
    if (coefficient(reflected) != value) return false;
  }
  return true;
}

Eigen::ArrayXd lattice_spectrum(const ModelSpec& model, int sites) {
  if (sites < 1) throw std::invalid_argument("lattice size must be >= 1");
  const int dimension = model.dimension();
  const double total = std::pow(static_cast<double>(sites), dimension);
  if (total > static_cast<double>(1 << 24)) {
    throw std::invalid_argument("lattice spectrum too large to materialise");
  }
  Eigen::ArrayXd spectrum(static_cast<Eigen::Index>(total));
  std::vector<int> k(dimension, 0);
  Eigen::VectorXd phi(dimension);
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    for (int d = 0; d < dimension; ++d) phi(d) = kTwoPi * k[d] / sites;
    spectrum(i) = dispersion(model, phi);
    int d = 0;
    while (d < dimension && ++k[d] == sites) k[d++] = 0;
  }
  return spectrum;
}

double dispersion_minimum(const ModelSpec& model, int resolution) {
  return torus_minimum(model.dimension(), resolution,
                       [&](const Eigen::VectorXd& phi) {
                         return dispersion(model, phi);
                       });
}

double energy_gap(const ModelSpec& model, int resolution) {
  if (model.statistics() == Statistics::fermion) {
    return torus_minimum(model.dimension(), resolution,
                         [&](const Eigen::VectorXd& phi) {
                           return std::abs(dispersion(model, phi));
                         });
  }
  const double lowest = dispersion_minimum(model, resolution);
  if (lowest < -kBosonStabilityTolerance) {
    throw ContractViolation("model", "boson stability (lambda >= 0)",
                            "unstable Hamiltonian, minimum dispersion " +
                                std::to_string(lowest));
  }
  return std::sqrt(std::max(lowest, 0.0));
}

double critical_boson_coupling(int dimension) {
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  return 1.0 / (2.0 * dimension);
}

double klein_gordon_coupling(int dimension, double mass, double velocity,
                             double length, int sites) {
  if (dimension < 1 || sites < 1 || velocity == 0.0) {
    throw std::invalid_argument("klein_gordon_coupling: invalid arguments");
  }
  const double lattice_mass = mass * length / (velocity * sites);
  return 1.0 / (lattice_mass * lattice_mass + 2.0 * dimension);
}

namespace {

CouplingTable nearest_neighbour_table(int dimension, double diagonal,
                                      double neighbour) {
  CouplingTable table;
  table[Offset(dimension, 0)] = diagonal;
  for (int d = 0; d < dimension; ++d) {
    Offset plus(dimension, 0);
    plus[d] = 1;
    table[plus] = neighbour;
    table[negated(plus)] = neighbour;
  }
  return table;
}

double required(const NamedParameters& parameters, std::string_view name) {
  const auto it = parameters.find(name);
  if (it == parameters.end()) {
    throw std::invalid_argument("missing model parameter '" +
                                std::string(name) + "'");
  }
  return it->second;
}

}  // namespace

ModelSpec build_model(Statistics statistics, int dimension,
                      const NamedParameters& parameters) {
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  for (const auto& [name, value] : parameters) {
    if (!std::isfinite(value)) {
      throw std::invalid_argument("parameter '" + name + "' is not finite");
    }
  }

  if (statistics == Statistics::fermion) {
    static const std::vector<std::string_view> known = {"a", "diag",
                                                        "half_filling"};
    for (const auto& [name, value] : parameters) {
      if (std::find(known.begin(), known.end(), name) == known.end()) {
        throw std::invalid_argument("unknown fermion parameter '" + name +
                                    "'");
      }
    }
    const double a = required(parameters, "a");
    double diag = parameters.contains("diag") ? parameters.find("diag")->second
                                              : 1.0;
    if (parameters.contains("half_filling") &&
        parameters.find("half_filling")->second != 0.0) {
      diag = 0.0;
    }
    NamedParameters stored = parameters;
    stored["diag"] = diag;
    return ModelSpec(statistics, dimension,
                     nearest_neighbour_table(dimension, diag, a), stored, 1);
  }

  static const std::vector<std::string_view> known = {
      "c", "kg_mass", "kg_velocity", "kg_length", "kg_sites"};
  for (const auto& [name, value] : parameters) {
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw std::invalid_argument("unknown boson parameter '" + name + "'");
    }
  }
  double c = critical_boson_coupling(dimension);
  if (parameters.contains("c")) {
    c = parameters.find("c")->second;
  } else if (parameters.contains("kg_sites")) {
    c = klein_gordon_coupling(dimension, required(parameters, "kg_mass"),
                              required(parameters, "kg_velocity"),
                              required(parameters, "kg_length"),
                              static_cast<int>(required(parameters, "kg_sites")));
  }
  NamedParameters stored = parameters;
  stored["c"] = c;
  return ModelSpec(statistics, dimension,
                   nearest_neighbour_table(dimension, 1.0, -c), stored, 1);
}

ModelSpec build_model(Statistics statistics, int dimension,
                      const CouplingTable& couplings, int declared_range,
                      const NamedParameters& parameters) {
  if (statistics == Statistics::boson &&
      !(couplings.contains(Offset(dimension, 0)) &&
        couplings.at(Offset(dimension, 0)) > 0.0)) {
    throw std::invalid_argument("boson models need a positive diagonal V_0");
  }
  return ModelSpec(statistics, dimension, couplings, parameters,
                   declared_range);
}

}  // namespace halfspace
