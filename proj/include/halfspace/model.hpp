#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace halfspace {

enum class Statistics { boson, fermion };

std::string_view to_string(Statistics statistics);
Statistics parse_statistics(std::string_view text);

/// Lattice offset l in Z^D.
using Offset = std::vector<int>;
using CouplingTable = std::map<Offset, double>;
using NamedParameters = std::map<std::string, double, std::less<>>;

enum class Stability { stable, critical, unstable };

std::string_view to_string(Stability stability);

/// Translation-invariant quadratic model on the periodic cubic lattice.
///
/// The coupling table V_l must satisfy V_l = V_{-l}. Zero coefficients are
/// dropped on construction. For bosons the coarse stability of the
/// dispersion is computed once and kept as a flag; a critical or even
/// unstable boson model still builds.
class ModelSpec {
 public:
  ModelSpec(Statistics statistics, int dimension, CouplingTable couplings,
            NamedParameters parameters = {},
            std::optional<int> declared_range = std::nullopt);

  Statistics statistics() const noexcept { return statistics_; }
  int dimension() const noexcept { return dimension_; }
  int range() const noexcept { return range_; }
  const CouplingTable& couplings() const noexcept { return couplings_; }
  const NamedParameters& parameters() const noexcept { return parameters_; }
  std::optional<double> parameter(std::string_view name) const;
  double coefficient(const Offset& offset) const;
  Stability stability() const noexcept { return stability_; }

  /// True when V_{(l_1, l')} = V_{(l_1, -l')} for every entry, i.e. the
  /// reflection of every axis except `axis` leaves the table unchanged.
  bool reflection_symmetric(int axis) const;

  /// Half of the symmetric coupling table: row t of term_offsets() is a
  /// representative offset and term_weights()(t) its weight (V_0 for the
  /// origin, 2 V_l for each +-l pair).
  const Eigen::MatrixXd& term_offsets() const noexcept { return term_offsets_; }
  const Eigen::VectorXd& term_weights() const noexcept { return term_weights_; }

 private:
  Statistics statistics_;
  int dimension_;
  int range_ = 0;
  CouplingTable couplings_;
  NamedParameters parameters_;
  Stability stability_ = Stability::stable;
  Eigen::MatrixXd term_offsets_;
  Eigen::VectorXd term_weights_;
};

/// lambda(phi) = sum_l V_l cos(phi . l).
template <typename Derived>
typename Derived::Scalar dispersion(const ModelSpec& model,
                                    const Eigen::MatrixBase<Derived>& phi) {
  using Scalar = typename Derived::Scalar;
  if (phi.size() != model.dimension()) {
    throw std::invalid_argument("dispersion: momentum has " +
                                std::to_string(phi.size()) +
                                " components, model dimension is " +
                                std::to_string(model.dimension()));
  }
  const auto phases = (model.term_offsets().template cast<Scalar>() *
                       phi.derived().template cast<Scalar>())
                          .array();
  return (model.term_weights().template cast<Scalar>().array() * phases.cos())
      .sum();
}

/// Dispersion sampled on the N^D momentum grid phi = 2 pi k / N, with k_1
/// running fastest. This is the exact spectrum of the cyclic coupling
/// matrix of the finite lattice.
Eigen::ArrayXd lattice_spectrum(const ModelSpec& model, int sites);

/// Boson: sqrt(min lambda); fermion: min |lambda|. Coarse grid search with
/// `resolution` points per axis followed by a compass search to 1e-10.
double energy_gap(const ModelSpec& model, int resolution = 256);

/// Minimum of the dispersion over [0, 2 pi)^D (grid + compass refinement).
double dispersion_minimum(const ModelSpec& model, int resolution = 256);

double critical_boson_coupling(int dimension);

/// Lattice coupling c_N of the discretised Klein-Gordon field after the
/// rescaling V -> V / (mu^2 + 2 D Omega^2).
double klein_gordon_coupling(int dimension, double mass, double velocity,
                             double length, int sites);

/// Nearest-neighbour families.
///   fermion: a (hopping), diag (default 1), half_filling (non-zero -> diag 0)
///   boson:   c, or kg_mass/kg_velocity/kg_length/kg_sites; diagonal fixed to 1
///            and c defaults to the critical 1/(2D)
ModelSpec build_model(Statistics statistics, int dimension,
                      const NamedParameters& parameters);

/// Generic finite-range model from an explicit table. Missing mirror
/// entries are an error; the declared range bounds every offset.
ModelSpec build_model(Statistics statistics, int dimension,
                      const CouplingTable& couplings, int declared_range,
                      const NamedParameters& parameters = {});

}  // namespace halfspace
