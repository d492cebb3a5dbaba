#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace entrolab {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One typed value from the experiment-config format: a flat TOML-syntax file
/// with one table per parameter group, scalar or homogeneous-array values.
struct ConfigValue {
  enum class Type { Integer, Float, Boolean, String, Array };
  Type type = Type::Integer;
  std::int64_t intValue = 0;
  double floatValue = 0.0;
  bool boolValue = false;
  std::string stringValue;
  std::vector<ConfigValue> elements;
  int line = 0;

  std::int64_t asInt() const;
  double asDouble() const;  // accepts Integer or Float
  bool asBool() const;
  const std::string& asString() const;
  std::vector<double> asDoubleList() const;
  std::vector<std::int64_t> asIntList() const;

  std::string serialize() const;
};

class ConfigFile {
 public:
  struct Entry {
    std::string key;
    ConfigValue value;
  };
  struct Section {
    std::string name;
    std::vector<Entry> entries;
    int line = 0;
  };

  static ConfigFile parse(const std::string& text);
  static ConfigFile load(const std::filesystem::path& path);

  /// Canonical text; parse(serialize()) reproduces every section, key, value
  /// and type (comments are not part of the data).
  std::string serialize() const;

  bool has(const std::string& section, const std::string& key) const;
  const ConfigValue& get(const std::string& section, const std::string& key) const;
  const std::vector<Section>& sections() const { return sections_; }

  void set(const std::string& section, const std::string& key, ConfigValue value);

 private:
  const ConfigValue* find(const std::string& section, const std::string& key) const;
  std::vector<Section> sections_;
};

/// Access wrapper that records which keys a subcommand consumed; finish()
/// rejects everything left over, with line diagnostics.
class ConfigReader {
 public:
  explicit ConfigReader(const ConfigFile& file) : file_(file) {}

  bool has(const std::string& section, const std::string& key);
  const ConfigValue& require(const std::string& section, const std::string& key);

  std::int64_t getInt(const std::string& section, const std::string& key, std::int64_t fallback);
  double getDouble(const std::string& section, const std::string& key, double fallback);
  bool getBool(const std::string& section, const std::string& key, bool fallback);
  std::string getString(const std::string& section, const std::string& key,
                        const std::string& fallback);
  std::vector<double> getDoubleList(const std::string& section, const std::string& key,
                                    const std::vector<double>& fallback);

  void finish() const;  // throws ConfigError listing unknown keys

 private:
  const ConfigFile& file_;
  std::set<std::pair<std::string, std::string>> consumed_;
};

}  // namespace entrolab
