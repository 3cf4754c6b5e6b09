#include "experiments.hpp"

#include "halfspace/analysis.hpp"
#include "halfspace/boson.hpp"
#include "halfspace/error.hpp"
#include "halfspace/fermion.hpp"
#include "halfspace/io.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#ifndef HALFSPACE_VERSION
#define HALFSPACE_VERSION "unknown"
#endif

namespace halfspace::app {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi;

const std::vector<std::pair<Experiment, std::string_view>> kNames = {
    {Experiment::dispersion, "dispersion"},
    {Experiment::fermi_volume, "fermi-volume"},
    {Experiment::fermion_scaling, "fermion-scaling"},
    {Experiment::boson_arealaw, "boson-arealaw"},
    {Experiment::negativity_bound, "negativity-bound"},
    {Experiment::lifshitz, "lifshitz"},
    {Experiment::halfspace_divergence, "halfspace-divergence"},
};

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0')
        << static_cast<int>(digest[i]);
  }
  return hex.str();
}

// JSON has no inf/nan, so those become strings; finite values are rounded
// to the digits the text outputs carry.
json number(double value) {
  if (!std::isfinite(value)) return format_number(value);
  return round_significant(value);
}

json numbers(const std::vector<double>& values) {
  json out = json::array();
  for (double v : values) out.push_back(number(v));
  return out;
}

// Accumulates output files and writes them relative to the output dir.
class Outputs {
 public:
  explicit Outputs(fs::path dir) : dir_(std::move(dir)) {}

  void text(const std::string& name, const std::string& content) {
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + (dir_ / name).string());
    files_.push_back(name);
  }

  void json_file(const std::string& name, const json& value) {
    text(name, value.dump(2) + "\n");
  }

  void columns(const std::string& name, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& data) {
    write_columns(dir_ / name, header, data);
    files_.push_back(name);
  }

  const fs::path& dir() const { return dir_; }
  const std::vector<fs::path>& files() const { return files_; }

 private:
  fs::path dir_;
  std::vector<fs::path> files_;
};

// Typed access to the effective config.
struct Settings {
  const KeyValueConfig& config;

  const ConfigEntry& entry(std::string_view key) const {
    const ConfigEntry* e = config.find(key);
    if (!e) throw ConfigError(config.source(), 0, "missing key '" + std::string(key) + "'");
    return *e;
  }
  bool has(std::string_view key) const { return config.find(key) != nullptr; }
  double real(std::string_view key) const { return parse_double(config, entry(key)); }
  int integer(std::string_view key, int minimum) const {
    const ConfigEntry& e = entry(key);
    const int value = parse_int(config, e);
    if (value < minimum) {
      config.fail(e, "'" + e.key + "' must be >= " + std::to_string(minimum));
    }
    return value;
  }
  std::vector<double> reals(std::string_view key) const {
    return parse_double_list(config, entry(key));
  }
  std::vector<int> ladder(std::string_view key, int minimum, bool even) const {
    const ConfigEntry& e = entry(key);
    std::vector<int> out;
    for (double v : parse_double_list(config, e)) {
      if (v != std::floor(v) || v < minimum || v > 1 << 20 ||
          (even && static_cast<int>(v) % 2 != 0)) {
        config.fail(e, "'" + e.key + "' entries must be " +
                           (even ? std::string("even ") : std::string()) +
                           "integers >= " + std::to_string(minimum));
      }
      if (!out.empty() && v <= out.back()) {
        config.fail(e, "'" + e.key + "' must be strictly increasing");
      }
      out.push_back(static_cast<int>(v));
    }
    return out;
  }
  std::string text(std::string_view key) const { return entry(key).value; }
  [[noreturn]] void fail(std::string_view key, const std::string& message) const {
    config.fail(entry(key), message);
  }
};

void set_default(KeyValueConfig& config, const std::string& key,
                 const std::string& value) {
  if (!config.find(key)) config.set(key, value);
}

Statistics required_statistics(Experiment experiment) {
  switch (experiment) {
    case Experiment::boson_arealaw:
    case Experiment::negativity_bound: return Statistics::boson;
    default: return Statistics::fermion;
  }
}

void apply_defaults(Experiment experiment, KeyValueConfig& config) {
  set_default(config, "statistics",
              std::string(to_string(required_statistics(experiment))));
  if (!config.find("dimension") && !config.find("dim")) {
    config.set("dimension", "2");
  }
  switch (experiment) {
    case Experiment::dispersion:
      set_default(config, "points", "256");
      set_default(config, "resolution", "64");
      break;
    case Experiment::fermi_volume:
      set_default(config, "sigma", "2");
      set_default(config, "estimator", "grid");
      set_default(config, "resolution", "1024");
      set_default(config, "symbol_samples", "1024");
      set_default(config, "samples", "65536");
      set_default(config, "seed", "0");
      break;
    case Experiment::fermion_scaling:
      set_default(config, "m_ladder", "64,128,256,512,1024");
      set_default(config, "resolution", "128");
      set_default(config, "c0", format_number(kHalfFillingC0));
      break;
    case Experiment::boson_arealaw:
      set_default(config, "n_ladder", "64,128,256");
      set_default(config, "negativity", "1");
      set_default(config, "bound_resolution", "4096");
      break;
    case Experiment::negativity_bound:
      set_default(config, "resolution", "4096");
      break;
    case Experiment::lifshitz:
      set_default(config, "a_min", "0.05");
      set_default(config, "a_max", "1");
      set_default(config, "a_points", "401");
      set_default(config, "resolution", "64");
      set_default(config, "symbol_samples", "1024");
      // The scan overrides 'a'; the base model just has to be buildable.
      if (!config.find("a")) config.set("a", config.find("a_max")->value);
      break;
    case Experiment::halfspace_divergence:
      if (!config.find("a")) config.set("a", "1");
      set_default(config, "half_filling", "1");
      set_default(config, "n_ladder", "16,32,64");
      break;
  }
}

void validate_keys(Experiment experiment, const KeyValueConfig& config) {
  const auto& model = model_keys();
  const auto& extra = experiment_keys();
  for (const auto& entry : config.entries()) {
    if (entry.key.rfind("coupling ", 0) == 0) continue;
    if (std::find(model.begin(), model.end(), entry.key) != model.end()) continue;
    if (std::find(extra.begin(), extra.end(), entry.key) != extra.end()) continue;
    config.fail(entry, "unknown key '" + entry.key + "'");
  }
  const ConfigEntry* statistics = config.find("statistics");
  Statistics declared{};
  try {
    declared = parse_statistics(statistics->value);
  } catch (const std::invalid_argument& e) {
    config.fail(*statistics, e.what());
  }
  if (declared != required_statistics(experiment) &&
      experiment != Experiment::dispersion) {
    config.fail(*statistics, std::string(to_string(experiment)) +
                                 " needs statistics = " +
                                 std::string(to_string(required_statistics(experiment))));
  }
}

ModelSpec model_of(const KeyValueConfig& config) { return load_model(config, true); }

Eigen::VectorXd transverse_of(const Settings& s, int dimension) {
  if (!s.has("phi")) return Eigen::VectorXd::Constant(dimension - 1, kPi);
  const auto values = s.reals("phi");
  if (static_cast<int>(values.size()) != dimension - 1) {
    s.fail("phi", "'phi' needs " + std::to_string(dimension - 1) + " angles");
  }
  return Eigen::Map<const Eigen::VectorXd>(values.data(), values.size());
}

void chain_csv(Outputs& out, const std::string& name,
               const std::vector<ChainRecord>& records, int transverse) {
  std::ostringstream csv;
  write_chain_csv(csv, records, transverse);
  out.text(name, csv.str());
}

// ---------------------------------------------------------------- runners

json run_dispersion(const Settings& s, const ModelSpec& model, Outputs& out,
                    unsigned) {
  const int dimension = model.dimension();
  const Eigen::VectorXd transverse = transverse_of(s, dimension);
  const ChainModel chain = chain_at(model, transverse);
  const int points = s.integer("points", 2);

  std::vector<double> phi(points), lambda(points);
  for (int k = 0; k < points; ++k) {
    phi[k] = 2.0 * kPi * k / points;
    lambda[k] = chain(phi[k]);
  }
  out.columns("dispersion_cut.dat", {"phi_1", "lambda"}, {phi, lambda});

  json summary;
  summary["transverse"] = numbers(std::vector<double>(
      transverse.data(), transverse.data() + transverse.size()));
  if (model.statistics() == Statistics::fermion) {
    const SymbolTopology topology = count_discontinuities(chain);
    summary["zeros"] = numbers(topology.zeros);
    summary["tangential_zeros"] = numbers(topology.tangential);
    summary["discontinuities"] = topology.discontinuities;
  }
  summary["chain_minimum"] = number(chain_minimum(chain));
  summary["chain_maximum"] = number(chain_maximum(chain));

  if (dimension == 2) {
    const int r = s.integer("resolution", 3);
    std::vector<double> p1, p2, value;
    double lowest = std::numeric_limits<double>::infinity();
    std::vector<double> argmin;
    for (int j = 0; j < r; ++j) {
      for (int i = 0; i < r; ++i) {
        const Eigen::Vector2d p(2.0 * kPi * i / r, 2.0 * kPi * j / r);
        const double v = dispersion(model, p);
        p1.push_back(p(0));
        p2.push_back(p(1));
        value.push_back(v);
        if (v < lowest) {
          lowest = v;
          argmin = {p(0), p(1)};
        }
      }
    }
    out.columns("dispersion_surface.dat", {"phi_1", "phi_2", "lambda"},
                {p1, p2, value});
    summary["surface_minimum"] = number(lowest);
    summary["surface_argmin"] = numbers(argmin);
  }
  if (model.statistics() == Statistics::boson) {
    summary["stability"] = std::string(to_string(model.stability()));
  }
  summary["energy_gap"] = number(energy_gap(model));
  return summary;
}

json run_fermi_volume(const Settings& s, const ModelSpec& model, Outputs& out,
                      unsigned workers) {
  VolumeOptions options;
  try {
    options.estimator = parse_volume_estimator(s.text("estimator"));
  } catch (const std::invalid_argument& e) {
    s.fail("estimator", e.what());
  }
  options.resolution = s.integer("resolution", 4);
  options.symbol_samples = s.integer("symbol_samples", 8);
  options.samples = static_cast<std::size_t>(s.integer("samples", 1));
  options.seed = static_cast<std::uint64_t>(s.integer("seed", 0));
  options.workers = workers;
  const int sigma = s.integer("sigma", 0);

  const FermiSetVolume v = phi_sigma_volume(model, sigma, options);
  json summary;
  summary["sigma"] = sigma;
  summary["estimator"] = std::string(to_string(options.estimator));
  summary["volume"] = number(v.volume);
  summary["error"] = number(v.error);
  if (options.estimator == VolumeEstimator::grid) summary["resolution"] = options.resolution;
  if (options.estimator == VolumeEstimator::monte_carlo) {
    summary["samples"] = options.samples;
    summary["seed"] = options.seed;
  }
  double analytic = std::numeric_limits<double>::quiet_NaN();
  if (const auto family = nearest_neighbour_family(model); family && sigma == 2) {
    analytic = analytic_phi2_volume(family->diagonal, family->hopping);
    summary["v_analytic"] = number(analytic);
    summary["critical"] = analytic > 0.0;
    summary["a"] = number(family->hopping);
  }
  summary["v_" + std::string(options.estimator == VolumeEstimator::grid ? "grid"
                             : options.estimator == VolumeEstimator::monte_carlo
                                 ? "monte_carlo"
                                 : "analytic")] = number(v.volume);

  std::ostringstream csv;
  CsvWriter writer(csv, {"a", "v_analytic", "v_estimate", "error"});
  const auto family = nearest_neighbour_family(model);
  writer.row({family ? family->hopping : std::numeric_limits<double>::quiet_NaN(),
              analytic, v.volume, v.error});
  out.text("fermi_volume.csv", csv.str());
  out.json_file("fermi_volume.json", summary);
  return summary;
}

json run_fermion_scaling(const Settings& s, const ModelSpec& model, Outputs& out,
                         unsigned workers) {
  const std::vector<int> sizes = s.ladder("m_ladder", 1, false);
  if (sizes.size() < 4) s.fail("m_ladder", "'m_ladder' needs at least 4 sizes");
  const int resolution = s.integer("resolution", 1);
  const double c0 = s.real("c0");
  const TransverseGrid grid(model.dimension() - 1, resolution);

  const EntropyLadder ladder = halfspace_entropy_ladder(model, sizes, grid, workers);
  const std::vector<double> m(sizes.begin(), sizes.end());
  const ScalingFit fit = fit_log_scaling(m, ladder.density);

  // Per-chain asymptotic form averaged over the same grid.
  const auto asymptotic_chains = map_chains(
      model, grid, workers, [&](const ChainModel& chain, std::size_t) {
        std::vector<double> values;
        const int sigma = count_discontinuities(chain).discontinuities;
        const double c = subleading_c(chain, c0);
        for (int size : sizes) values.push_back(sigma / 6.0 * std::log2(size) + c);
        return values;
      });
  std::vector<double> asymptotic;
  std::vector<double> column(grid.size());
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    for (std::size_t i = 0; i < grid.size(); ++i) column[i] = asymptotic_chains[i][k];
    asymptotic.push_back(aggregate(column, grid).value);
  }

  VolumeOptions options;
  options.workers = workers;
  options.resolution = std::max(resolution, 4);
  if (nearest_neighbour_family(model)) options.estimator = VolumeEstimator::analytic_nn;
  const double predicted = halfspace_log_prefactor(model, 64, options);

  std::ostringstream csv;
  CsvWriter writer(csv, {"M", "E_exact", "E_asymptotic", "residual"});
  std::vector<double> fitted;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    writer.row({m[k], ladder.density[k], asymptotic[k],
                ladder.density[k] - asymptotic[k]});
    fitted.push_back(fit.prefactor * std::log2(m[k]) + fit.intercept);
  }
  out.text("scaling.csv", csv.str());
  out.columns("scaling_fit.dat", {"M", "E", "E_fit"}, {m, ladder.density, fitted});
  chain_csv(out, "chains.csv", ladder.chains, model.dimension() - 1);

  bool all_gapped = true;
  for (const auto& record : ladder.chains) {
    all_gapped = all_gapped && record.discontinuities == 0;
  }
  json summary;
  summary["prefactor"] = number(fit.prefactor);
  summary["intercept"] = number(fit.intercept);
  summary["residual"] = number(fit.residual);
  summary["predicted_prefactor"] = number(predicted);
  summary["relative_deviation"] =
      predicted != 0.0 ? number(std::abs(fit.prefactor - predicted) / predicted)
                       : number(std::abs(fit.prefactor));
  summary["all_chains_gapped"] = all_gapped;
  summary["c0"] = number(c0);
  summary["chains"] = grid.size();
  out.json_file("scaling.json", summary);
  return summary;
}

json run_boson_arealaw(const Settings& s, const ModelSpec& model, Outputs& out,
                       unsigned workers) {
  const std::vector<int> sizes = s.ladder("n_ladder", 2, true);
  std::vector<double> masses;
  if (s.has("masses")) {
    masses = s.reals("masses");
    for (double mass : masses) {
      if (!(mass >= 0.0)) s.fail("masses", "'masses' must be >= 0");
    }
  }
  AreaLawOptions options;
  options.workers = workers;
  options.with_negativity = s.integer("negativity", 0) != 0;
  options.bound_resolution = s.integer("bound_resolution", 8);
  const ScalingReport report = area_law_check(model, sizes, masses, options);

  std::ostringstream csv;
  CsvWriter writer(csv, {"N", "mu_reg", "E_entropy", "E_negativity",
                         "negativity_bound", "singular_chain_entropy"});
  std::vector<double> n_column, e_column;
  for (const auto& p : report.points) {
    writer.row({static_cast<double>(p.sites), p.mass, p.entropy, p.negativity,
                report.bound, p.singular_entropy});
    n_column.push_back(p.sites);
    e_column.push_back(p.entropy);
  }
  out.text("arealaw.csv", csv.str());
  out.columns("arealaw.dat", {"N", "E_entropy"}, {n_column, e_column});
  chain_csv(out, "chains.csv", report.chains, model.dimension() - 1);

  if (model.dimension() >= 2) {
    std::ostringstream neg;
    std::vector<std::string> header;
    for (int d = 2; d <= model.dimension(); ++d) header.push_back("phi_" + std::to_string(d));
    for (const char* h : {"E_N_closed", "E_N_numeric", "E_S_numeric"}) header.emplace_back(h);
    CsvWriter rows(neg, header);
    for (const auto& record : report.chains) {
      std::vector<double> row(record.transverse.data(),
                              record.transverse.data() + record.transverse.size());
      row.push_back(chain_negativity_closed(chain_at(model, record.transverse)));
      row.push_back(record.negativity);
      row.push_back(record.entropy);
      rows.row(row);
    }
    out.text("negativity.csv", neg.str());
  }

  json summary;
  summary["bound"] = number(report.bound);
  summary["monotone"] = report.monotone;
  summary["bounded"] = report.bounded;
  summary["contracting"] = report.contracting;
  summary["area_law"] = report.area_law;
  summary["mass_variation"] = number(report.mass_variation);
  summary["negativity_mass_variation"] = number(report.negativity_mass_variation);
  summary["mass_independent"] = report.mass_independent;
  summary["verdict"] = report.area_law ? "area law" : "area-law violation";
  out.json_file("arealaw.json", summary);
  return summary;
}

json run_negativity_bound(const Settings& s, const ModelSpec& model, Outputs& out,
                          unsigned) {
  const int resolution = s.integer("resolution", 8);
  NegativityBound bound;
  try {
    bound = halfspace_negativity_bound(model.dimension(), resolution);
  } catch (const std::invalid_argument& e) {
    s.fail("resolution", e.what());
  }
  std::ostringstream csv;
  CsvWriter writer(csv, {"resolution", "midpoint_estimate"});
  for (std::size_t i = 0; i < bound.ladder.size(); ++i) {
    writer.row({static_cast<double>(bound.resolutions[i]), bound.ladder[i]});
  }
  out.text("bound_ladder.csv", csv.str());
  json summary;
  summary["dimension"] = model.dimension();
  summary["resolution"] = resolution;
  summary["value"] = number(bound.value);
  summary["error"] = number(bound.error);
  summary["ladder"] = numbers(bound.ladder);
  if (model.dimension() == 2) {
    summary["closed_form"] = number(std::log2(3.0 + 2.0 * std::sqrt(2.0)) / 2.0);
  }
  out.json_file("bound.json", summary);
  return summary;
}

json run_lifshitz(const Settings& s, const ModelSpec& model, KeyValueConfig config,
                  Outputs& out, unsigned workers) {
  for (const auto& entry : config.entries()) {
    if (entry.key.rfind("coupling ", 0) == 0) {
      config.fail(entry, "lifshitz scans the nearest-neighbour family over 'a'; "
                         "coupling tables are not supported");
    }
  }
  const double lo = s.real("a_min");
  const double hi = s.real("a_max");
  const int count = s.integer("a_points", 3);
  if (!(hi > lo)) s.fail("a_max", "'a_max' must exceed 'a_min'");
  const std::vector<double> grid = linear_grid(lo, hi, static_cast<std::size_t>(count));

  NamedParameters parameters;
  for (const auto& key : {"diag", "half_filling"}) {
    if (const auto v = model.parameter(key)) parameters[key] = *v;
  }
  const int dimension = model.dimension();
  auto family_at = [&](double a) {
    NamedParameters p = parameters;
    p["a"] = a;
    return build_model(Statistics::fermion, dimension, p);
  };
  VolumeOptions grid_options;
  grid_options.resolution = s.integer("resolution", 4);
  grid_options.symbol_samples = s.integer("symbol_samples", 8);

  const bool analytic = dimension == 2;
  auto volume = [&](double a) {
    const ModelSpec m = family_at(a);
    if (analytic) {
      const auto family = nearest_neighbour_family(m);
      return analytic_phi2_volume(family->diagonal, family->hopping);
    }
    return phi_sigma_volume(m, 2, grid_options).volume;
  };
  const LifshitzScan scan = lifshitz_scan(grid, volume, workers);

  const auto grid_volumes = parallel_map(grid.size(), workers, [&](std::size_t i) {
    return phi_sigma_volume(family_at(grid[i]), 2, grid_options);
  });
  std::ostringstream csv;
  CsvWriter writer(csv, {"a", "v_analytic", "v_grid", "error"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    writer.row({grid[i],
                analytic ? scan.values[i] : std::numeric_limits<double>::quiet_NaN(),
                grid_volumes[i].volume, grid_volumes[i].error});
  }
  out.text("lifshitz.csv", csv.str());
  out.columns("lifshitz_curve.dat", {"a", "v_phi2"}, {scan.parameters, scan.values});

  json kinks = json::array();
  for (const auto& kink : scan.kinks) {
    kinks.push_back({{"a", number(kink.location)},
                     {"left_slope", number(kink.left_slope)},
                     {"right_slope", number(kink.right_slope)},
                     {"slope_gap", number(kink.gap)},
                     {"right_slope_trend", numbers(kink.right_slope_trend)},
                     {"right_slope_divergent", kink.right_slope_divergent}});
  }
  json summary;
  summary["family"] = "fermion nearest-neighbour, D = " + std::to_string(dimension);
  summary["estimator"] = analytic ? "analytic-nn" : "grid";
  summary["grid"] = numbers(scan.parameters);
  summary["values"] = numbers(scan.values);
  summary["kinks"] = kinks;
  out.json_file("lifshitz.json", summary);
  return summary;
}

json run_halfspace_divergence(const Settings& s, const ModelSpec& model,
                              Outputs& out, unsigned workers) {
  const std::vector<int> sizes = s.ladder("n_ladder", 4, true);
  std::ostringstream csv;
  CsvWriter writer(csv, {"N", "halfspace_sum", "lower_bound"});
  std::vector<double> n_column, sums, bounds;
  bool exceeds = true;
  for (int n : sizes) {
    const double sum = halfspace_entropy_sum(model, n, workers);
    const double bound = lower_bound_series(n);
    writer.row({static_cast<double>(n), sum, bound});
    n_column.push_back(n);
    sums.push_back(sum);
    bounds.push_back(bound);
    exceeds = exceeds && sum > bound;
  }
  bool grows = true;
  for (std::size_t i = 1; i < sums.size(); ++i) grows = grows && sums[i] > sums[i - 1];
  out.text("divergence.csv", csv.str());
  out.columns("divergence.dat", {"N", "halfspace_sum", "lower_bound"},
              {n_column, sums, bounds});
  json summary;
  summary["sizes"] = sizes;
  summary["halfspace_sum"] = numbers(sums);
  summary["lower_bound"] = numbers(bounds);
  summary["exceeds_lower_bound"] = exceeds;
  summary["grows"] = grows;
  out.json_file("divergence.json", summary);
  return summary;
}

std::string canonical_listing(Experiment experiment, const KeyValueConfig& config) {
  std::vector<std::string> lines;
  for (const auto& entry : config.entries()) {
    if (entry.key == "workers") continue;
    lines.push_back(entry.key + " = " + entry.value);
  }
  std::sort(lines.begin(), lines.end());
  std::string text = "experiment = " + std::string(to_string(experiment)) + "\n";
  for (const auto& line : lines) text += line + "\n";
  return text;
}

std::string file_sha256(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return sha256_hex(buffer.str());
}

}  // namespace

std::string_view to_string(Experiment experiment) {
  for (const auto& [e, name] : kNames) {
    if (e == experiment) return name;
  }
  return "unknown";
}

Experiment parse_experiment(std::string_view text) {
  for (const auto& [e, name] : kNames) {
    if (name == text) return e;
  }
  throw std::invalid_argument("unknown experiment '" + std::string(text) + "'");
}

const std::vector<Experiment>& all_experiments() {
  static const std::vector<Experiment> list = [] {
    std::vector<Experiment> out;
    for (const auto& [e, name] : kNames) out.push_back(e);
    return out;
  }();
  return list;
}

const std::vector<std::string>& experiment_keys() {
  static const std::vector<std::string> keys = {
      "resolution", "seed",     "estimator",  "sigma",    "symbol_samples",
      "samples",    "m_ladder", "n_ladder",   "masses",   "negativity",
      "bound_resolution", "c0", "phi",        "points",   "a_min",
      "a_max",      "a_points", "workers"};
  return keys;
}

std::string config_hash(Experiment experiment, const KeyValueConfig& config) {
  return sha256_hex(canonical_listing(experiment, config));
}

RunResult run_experiment(Experiment experiment, KeyValueConfig config,
                         const RunOptions& options) {
  apply_defaults(experiment, config);
  validate_keys(experiment, config);
  const ModelSpec model = model_of(config);
  const Settings settings{config};

  std::error_code ec;
  fs::create_directories(options.out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " +
                             options.out_dir.string() + ": " + ec.message());
  }
  Outputs out(options.out_dir);
  const unsigned workers = std::max(1u, options.workers);

  json summary;
  switch (experiment) {
    case Experiment::dispersion:
      summary = run_dispersion(settings, model, out, workers);
      out.json_file("dispersion.json", summary);
      break;
    case Experiment::fermi_volume:
      summary = run_fermi_volume(settings, model, out, workers);
      break;
    case Experiment::fermion_scaling:
      summary = run_fermion_scaling(settings, model, out, workers);
      break;
    case Experiment::boson_arealaw:
      summary = run_boson_arealaw(settings, model, out, workers);
      break;
    case Experiment::negativity_bound:
      summary = run_negativity_bound(settings, model, out, workers);
      break;
    case Experiment::lifshitz:
      summary = run_lifshitz(settings, model, config, out, workers);
      break;
    case Experiment::halfspace_divergence:
      summary = run_halfspace_divergence(settings, model, out, workers);
      break;
  }

  RunResult result;
  result.config_hash = config_hash(experiment, config);
  result.files = out.files();

  json manifest;
  manifest["experiment"] = std::string(to_string(experiment));
  manifest["config_hash"] = result.config_hash;
  json files = json::array();
  for (const auto& file : out.files()) {
    files.push_back({{"path", file.generic_string()},
                     {"sha256", file_sha256(out.dir() / file)}});
  }
  manifest["files"] = files;
  manifest["versions"] = {
      {"halfspace", HALFSPACE_VERSION},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                    std::to_string(EIGEN_MAJOR_VERSION) + "." +
                    std::to_string(EIGEN_MINOR_VERSION)},
      {"output_format", 1}};
  json echoed = json::object();
  for (const auto& entry : config.entries()) {
    if (entry.key != "workers") echoed[entry.key] = entry.value;
  }
  manifest["config"] = echoed;
  std::ofstream(options.out_dir / "manifest.json", std::ios::binary)
      << manifest.dump(2) << "\n";
  return result;
}

}  // namespace halfspace::app
