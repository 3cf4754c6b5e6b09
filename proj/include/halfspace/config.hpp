#pragma once

#include "halfspace/model.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace halfspace {

/// Parse failure that points at a line of the offending file.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string source, int line, const std::string& message);
  const std::string& source() const noexcept { return source_; }
  int line() const noexcept { return line_; }

 private:
  std::string source_;
  int line_;
};

struct ConfigEntry {
  std::string key;    // e.g. "a", "coupling 1 0"
  std::string value;
  int line = 0;
};

/// Plain-text `key = value` file. '#' starts a comment; blank lines are
/// ignored. Keys may repeat only for `coupling` lines.
///
///     statistics = fermion
///     dimension  = 2
///     a          = 0.5
///     coupling 1 0 = 0.25     # explicit table entry (offset -> value)
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& in, std::string source = "<input>");
  static KeyValueConfig load(const std::filesystem::path& path);

  const std::string& source() const noexcept { return source_; }
  const std::vector<ConfigEntry>& entries() const noexcept { return entries_; }
  const ConfigEntry* find(std::string_view key) const;

  /// Adds or replaces a scalar key (flags override file values).
  void set(const std::string& key, const std::string& value);

  [[noreturn]] void fail(const ConfigEntry& entry,
                         const std::string& message) const;

 private:
  std::string source_;
  std::vector<ConfigEntry> entries_;
};

double parse_double(const KeyValueConfig& config, const ConfigEntry& entry);
int parse_int(const KeyValueConfig& config, const ConfigEntry& entry);
std::vector<double> parse_double_list(const KeyValueConfig& config,
                                      const ConfigEntry& entry);

/// Keys understood by load_model besides `coupling ...` lines.
const std::vector<std::string_view>& model_keys();

/// Model keys: statistics, dimension (or dim), range, coupling <l_1..l_D>,
/// and the named family parameters of build_model. With any coupling line
/// present the table is used verbatim; otherwise the named family is built.
/// Keys outside that set are rejected unless `ignore_unknown` is set.
ModelSpec load_model(const KeyValueConfig& config, bool ignore_unknown = false);

}  // namespace halfspace
