#pragma once

// Line-oriented scenario files: "[section]" headers, "key = value" lines,
// '#' or ';' comments. Unknown sections and keys are rejected with the
// offending line number.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skewform/timeint.hpp"

namespace skewform {

struct ConfigEntry {
  std::string value;
  int line = 0;
};

class ConfigDocument {
 public:
  static ConfigDocument parse(const std::string& text, const std::string& source);
  /// Throws ConfigError when the file cannot be read.
  static ConfigDocument load(const std::string& path);

  const std::string& source() const { return source_; }
  bool has_section(const std::string& s) const { return sections_.count(s) != 0; }
  const std::map<std::string, ConfigEntry>& section(const std::string& s) const;
  const ConfigEntry* find(const std::string& s, const std::string& key) const;

  std::string text(const std::string& s, const std::string& key,
                   const std::string& fallback) const;
  double number(const std::string& s, const std::string& key, double fallback) const;

  /// ConfigError prefixed with "source:line: ".
  [[noreturn]] void fail(const ConfigEntry& e, const std::string& what) const;
  [[noreturn]] void fail(const std::string& what) const;

 private:
  std::string source_;
  std::map<std::string, std::map<std::string, ConfigEntry>> sections_;
};

/// Splits on commas, trimming whitespace.
std::vector<std::string> split_list(const std::string& text);

struct LoadedScenario {
  Scenario scenario;
  /// "identity": evaluate the energy identity for the initial state only.
  bool identity = false;
  std::string csv_path;
  std::string state_path;
  std::vector<std::string> face_names;
};

/// Builds the scenario; coordinates in expressions are the grid axes.
LoadedScenario load_scenario(const ConfigDocument& doc);

/// Scenario with every axis refined `level` times by halving the spacing
/// and dt halved accordingly.
LoadedScenario load_scenario(const ConfigDocument& doc, int level);

/// Axis names of a model ("x", "y" or "r", "theta", "z").
std::vector<std::string> axis_names(ModelKind kind);

}  // namespace skewform
