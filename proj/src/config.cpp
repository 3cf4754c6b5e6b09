#include "halfspace/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace halfspace {

namespace {

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return std::string(text.substr(first, last - first + 1));
}

std::string normalise_key(const std::string& key) {
  std::istringstream words(key);
  std::string word, out;
  while (words >> word) {
    if (!out.empty()) out += ' ';
    out += word;
  }
  return out;
}

bool is_coupling_key(std::string_view key) {
  return key.rfind("coupling ", 0) == 0;
}

const std::vector<std::string_view> kModelKeys = {
    "statistics", "dimension",   "dim",       "range",    "a",
    "diag",       "half_filling", "c",        "kg_mass",  "kg_velocity",
    "kg_length",  "kg_sites"};

}  // namespace

ConfigError::ConfigError(std::string source, int line,
                         const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
      source_(std::move(source)),
      line_(line) {}

KeyValueConfig KeyValueConfig::parse(std::istream& in, std::string source) {
  KeyValueConfig config;
  config.source_ = std::move(source);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(std::string_view(raw).substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(config.source_, line, "expected 'key = value'");
    }
    ConfigEntry entry{normalise_key(text.substr(0, eq)),
                      trim(text.substr(eq + 1)), line};
    if (entry.key.empty()) {
      throw ConfigError(config.source_, line, "empty key");
    }
    if (entry.value.empty()) {
      throw ConfigError(config.source_, line,
                        "missing value for '" + entry.key + "'");
    }
    if (!is_coupling_key(entry.key)) {
      if (const auto* previous = config.find(entry.key)) {
        throw ConfigError(config.source_, line,
                          "duplicate key '" + entry.key + "' (first on line " +
                              std::to_string(previous->line) + ")");
      }
    }
    config.entries_.push_back(std::move(entry));
  }
  return config;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open config file");
  return parse(in, path.string());
}

const ConfigEntry* KeyValueConfig::find(std::string_view key) const {
  const auto it = std::find_if(entries_.begin(), entries_.end(),
                               [&](const ConfigEntry& e) { return e.key == key; });
  return it == entries_.end() ? nullptr : &*it;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  for (auto& entry : entries_) {
    if (entry.key == key) {
      entry.value = value;
      entry.line = 0;
      return;
    }
  }
  entries_.push_back({key, value, 0});
}

void KeyValueConfig::fail(const ConfigEntry& entry,
                          const std::string& message) const {
  if (entry.line == 0) {
    throw ConfigError("--" + entry.key, 0, message);
  }
  throw ConfigError(source_, entry.line, message);
}

double parse_double(const KeyValueConfig& config, const ConfigEntry& entry) {
  double value = 0.0;
  const char* first = entry.value.data();
  const char* last = first + entry.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    config.fail(entry, "'" + entry.key + "' expects a number, got '" +
                           entry.value + "'");
  }
  return value;
}

int parse_int(const KeyValueConfig& config, const ConfigEntry& entry) {
  int value = 0;
  const char* first = entry.value.data();
  const char* last = first + entry.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    config.fail(entry, "'" + entry.key + "' expects an integer, got '" +
                           entry.value + "'");
  }
  return value;
}

std::vector<double> parse_double_list(const KeyValueConfig& config,
                                      const ConfigEntry& entry) {
  std::vector<double> values;
  std::string item;
  std::istringstream in(entry.value);
  while (std::getline(in, item, ',')) {
    ConfigEntry piece{entry.key, trim(item), entry.line};
    values.push_back(parse_double(config, piece));
  }
  if (values.empty()) config.fail(entry, "'" + entry.key + "' is empty");
  return values;
}

const std::vector<std::string_view>& model_keys() { return kModelKeys; }

ModelSpec load_model(const KeyValueConfig& config, bool ignore_unknown) {
  const ConfigEntry* statistics_entry = config.find("statistics");
  if (!statistics_entry) {
    throw ConfigError(config.source(), 0, "missing key 'statistics'");
  }
  Statistics statistics{};
  try {
    statistics = parse_statistics(statistics_entry->value);
  } catch (const std::invalid_argument& e) {
    config.fail(*statistics_entry, e.what());
  }

  const ConfigEntry* dimension_entry = config.find("dimension");
  if (!dimension_entry) dimension_entry = config.find("dim");
  if (!dimension_entry) {
    throw ConfigError(config.source(), 0, "missing key 'dimension'");
  }
  const int dimension = parse_int(config, *dimension_entry);
  if (dimension < 1) config.fail(*dimension_entry, "dimension must be >= 1");

  CouplingTable table;
  NamedParameters parameters;
  std::optional<int> range;
  const ConfigEntry* first_coupling = nullptr;
  for (const auto& entry : config.entries()) {
    if (is_coupling_key(entry.key)) {
      if (!first_coupling) first_coupling = &entry;
      std::istringstream words(entry.key.substr(9));
      Offset offset;
      std::string word;
      while (words >> word) {
        ConfigEntry component{entry.key, word, entry.line};
        offset.push_back(parse_int(config, component));
      }
      if (static_cast<int>(offset.size()) != dimension) {
        config.fail(entry, "coupling offset needs " +
                               std::to_string(dimension) + " components");
      }
      if (table.contains(offset)) {
        config.fail(entry, "duplicate coupling offset");
      }
      table[offset] = parse_double(config, entry);
      continue;
    }
    if (entry.key == "statistics" || entry.key == "dimension" ||
        entry.key == "dim") {
      continue;
    }
    if (entry.key == "range") {
      range = parse_int(config, entry);
      continue;
    }
    if (std::find(kModelKeys.begin(), kModelKeys.end(), entry.key) !=
        kModelKeys.end()) {
      parameters[entry.key] = parse_double(config, entry);
      continue;
    }
    if (!ignore_unknown) config.fail(entry, "unknown key '" + entry.key + "'");
  }

  try {
    if (first_coupling) {
      int declared = 0;
      for (const auto& [offset, value] : table) {
        for (int x : offset) declared = std::max(declared, std::abs(x));
      }
      return build_model(statistics, dimension, table, range.value_or(declared),
                         parameters);
    }
    return build_model(statistics, dimension, parameters);
  } catch (const std::invalid_argument& e) {
    const ConfigEntry& anchor = first_coupling ? *first_coupling
                                               : *statistics_entry;
    config.fail(anchor, e.what());
  }
}

}  // namespace halfspace
