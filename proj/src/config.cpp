#include "entrolab/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace entrolab {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw ConfigError("config line " + std::to_string(line) + ": " + message);
}

bool validBareKey(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  return true;
}

std::string formatDouble(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  std::string out(buf, res.ptr);
  // Keep the float type recognizable on re-parse.
  if (out.find('.') == std::string::npos && out.find('e') == std::string::npos &&
      out.find("inf") == std::string::npos && out.find("nan") == std::string::npos)
    out += ".0";
  return out;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

// Strips an inline comment, respecting quoted strings.
std::string stripComment(const std::string& raw) {
  bool inString = false;
  for (size_t i = 0; i < raw.size(); ++i) {
    const char c = raw[i];
    if (c == '"' && (i == 0 || raw[i - 1] != '\\')) inString = !inString;
    if (c == '#' && !inString) return raw.substr(0, i);
  }
  return raw;
}

ConfigValue parseScalar(const std::string& token, int line) {
  ConfigValue v;
  v.line = line;
  if (token.size() >= 2 && token.front() == '"' && token.back() == '"') {
    v.type = ConfigValue::Type::String;
    std::string out;
    for (size_t i = 1; i + 1 < token.size(); ++i) {
      if (token[i] == '\\' && i + 2 < token.size()) {
        ++i;
        if (token[i] == 'n')
          out += '\n';
        else
          out += token[i];
      } else {
        out += token[i];
      }
    }
    v.stringValue = out;
    return v;
  }
  if (token == "true" || token == "false") {
    v.type = ConfigValue::Type::Boolean;
    v.boolValue = token == "true";
    return v;
  }
  {
    std::int64_t iv = 0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), iv);
    if (res.ec == std::errc() && res.ptr == token.data() + token.size()) {
      v.type = ConfigValue::Type::Integer;
      v.intValue = iv;
      return v;
    }
  }
  {
    double dv = 0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), dv);
    if (res.ec == std::errc() && res.ptr == token.data() + token.size()) {
      v.type = ConfigValue::Type::Float;
      v.floatValue = dv;
      return v;
    }
  }
  fail(line, "cannot parse value '" + token + "'");
}

std::vector<std::string> splitArrayItems(const std::string& inner, int line) {
  std::vector<std::string> items;
  std::string current;
  bool inString = false;
  for (size_t i = 0; i < inner.size(); ++i) {
    const char c = inner[i];
    if (c == '"' && (i == 0 || inner[i - 1] != '\\')) inString = !inString;
    if (c == ',' && !inString) {
      items.push_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  const std::string last = trim(current);
  if (!last.empty()) items.push_back(last);
  for (const std::string& item : items)
    if (item.empty()) fail(line, "empty array element");
  return items;
}

ConfigValue parseValue(const std::string& token, int line) {
  if (!token.empty() && token.front() == '[') {
    if (token.back() != ']') fail(line, "unterminated array");
    ConfigValue v;
    v.type = ConfigValue::Type::Array;
    v.line = line;
    for (const std::string& item : splitArrayItems(token.substr(1, token.size() - 2), line))
      v.elements.push_back(parseScalar(item, line));
    for (const ConfigValue& e : v.elements)
      if (e.type == ConfigValue::Type::Array) fail(line, "nested arrays are not supported");
    for (size_t i = 1; i < v.elements.size(); ++i) {
      const bool numeric0 = v.elements[0].type == ConfigValue::Type::Integer ||
                            v.elements[0].type == ConfigValue::Type::Float;
      const bool numericI = v.elements[i].type == ConfigValue::Type::Integer ||
                            v.elements[i].type == ConfigValue::Type::Float;
      if (numeric0 != numericI || (!numeric0 && v.elements[i].type != v.elements[0].type))
        fail(line, "arrays must be homogeneous");
    }
    return v;
  }
  return parseScalar(token, line);
}

}  // namespace

std::int64_t ConfigValue::asInt() const {
  if (type != Type::Integer) throw ConfigError("expected an integer value");
  return intValue;
}

double ConfigValue::asDouble() const {
  if (type == Type::Integer) return static_cast<double>(intValue);
  if (type == Type::Float) return floatValue;
  throw ConfigError("expected a numeric value");
}

bool ConfigValue::asBool() const {
  if (type != Type::Boolean) throw ConfigError("expected a boolean value");
  return boolValue;
}

const std::string& ConfigValue::asString() const {
  if (type != Type::String) throw ConfigError("expected a string value");
  return stringValue;
}

std::vector<double> ConfigValue::asDoubleList() const {
  if (type != Type::Array) throw ConfigError("expected an array value");
  std::vector<double> out;
  out.reserve(elements.size());
  for (const ConfigValue& e : elements) out.push_back(e.asDouble());
  return out;
}

std::vector<std::int64_t> ConfigValue::asIntList() const {
  if (type != Type::Array) throw ConfigError("expected an array of integers");
  std::vector<std::int64_t> out;
  out.reserve(elements.size());
  for (const ConfigValue& e : elements) out.push_back(e.asInt());
  return out;
}

std::string ConfigValue::serialize() const {
  switch (type) {
    case Type::Integer:
      return std::to_string(intValue);
    case Type::Float:
      return formatDouble(floatValue);
    case Type::Boolean:
      return boolValue ? "true" : "false";
    case Type::String:
      return quote(stringValue);
    case Type::Array: {
      std::string out = "[";
      for (size_t i = 0; i < elements.size(); ++i) {
        if (i) out += ", ";
        out += elements[i].serialize();
      }
      out += "]";
      return out;
    }
  }
  return "";
}

ConfigFile ConfigFile::parse(const std::string& text) {
  ConfigFile file;
  std::istringstream is(text);
  std::string raw;
  int lineNo = 0;
  Section* current = nullptr;
  while (std::getline(is, raw)) {
    ++lineNo;
    const std::string line = trim(stripComment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(lineNo, "unterminated section header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (!validBareKey(name)) fail(lineNo, "invalid section name '" + name + "'");
      for (const Section& s : file.sections_)
        if (s.name == name) fail(lineNo, "duplicate section [" + name + "]");
      file.sections_.push_back({name, {}, lineNo});
      current = &file.sections_.back();
      continue;
    }

    const size_t eq = line.find('=');
    if (eq == std::string::npos) fail(lineNo, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string valueToken = trim(line.substr(eq + 1));
    if (!validBareKey(key)) fail(lineNo, "invalid key '" + key + "'");
    if (valueToken.empty()) fail(lineNo, "missing value for key '" + key + "'");
    if (!current) fail(lineNo, "key '" + key + "' appears before any [section]");
    for (const Entry& e : current->entries)
      if (e.key == key) fail(lineNo, "duplicate key '" + key + "' in [" + current->name + "]");
    current->entries.push_back({key, parseValue(valueToken, lineNo)});
  }
  return file;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string ConfigFile::serialize() const {
  std::ostringstream os;
  for (size_t i = 0; i < sections_.size(); ++i) {
    if (i) os << '\n';
    os << '[' << sections_[i].name << "]\n";
    for (const Entry& e : sections_[i].entries)
      os << e.key << " = " << e.value.serialize() << '\n';
  }
  return os.str();
}

const ConfigValue* ConfigFile::find(const std::string& section, const std::string& key) const {
  for (const Section& s : sections_)
    if (s.name == section)
      for (const Entry& e : s.entries)
        if (e.key == key) return &e.value;
  return nullptr;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

const ConfigValue& ConfigFile::get(const std::string& section, const std::string& key) const {
  const ConfigValue* v = find(section, key);
  if (!v) throw ConfigError("missing required key '" + section + "." + key + "'");
  return *v;
}

void ConfigFile::set(const std::string& section, const std::string& key, ConfigValue value) {
  for (Section& s : sections_)
    if (s.name == section) {
      for (Entry& e : s.entries)
        if (e.key == key) {
          e.value = std::move(value);
          return;
        }
      s.entries.push_back({key, std::move(value)});
      return;
    }
  sections_.push_back({section, {{key, std::move(value)}}, 0});
}

bool ConfigReader::has(const std::string& section, const std::string& key) {
  if (!file_.has(section, key)) return false;
  consumed_.insert({section, key});
  return true;
}

const ConfigValue& ConfigReader::require(const std::string& section, const std::string& key) {
  consumed_.insert({section, key});
  return file_.get(section, key);
}

std::int64_t ConfigReader::getInt(const std::string& section, const std::string& key,
                                  std::int64_t fallback) {
  return has(section, key) ? file_.get(section, key).asInt() : fallback;
}

double ConfigReader::getDouble(const std::string& section, const std::string& key,
                               double fallback) {
  return has(section, key) ? file_.get(section, key).asDouble() : fallback;
}

bool ConfigReader::getBool(const std::string& section, const std::string& key, bool fallback) {
  return has(section, key) ? file_.get(section, key).asBool() : fallback;
}

std::string ConfigReader::getString(const std::string& section, const std::string& key,
                                    const std::string& fallback) {
  return has(section, key) ? file_.get(section, key).asString() : fallback;
}

std::vector<double> ConfigReader::getDoubleList(const std::string& section, const std::string& key,
                                                const std::vector<double>& fallback) {
  return has(section, key) ? file_.get(section, key).asDoubleList() : fallback;
}

void ConfigReader::finish() const {
  std::vector<std::string> unknown;
  for (const ConfigFile::Section& s : file_.sections())
    for (const ConfigFile::Entry& e : s.entries)
      if (!consumed_.count({s.name, e.key}))
        unknown.push_back("unknown key '" + s.name + "." + e.key + "' (line " +
                          std::to_string(e.value.line) + ")");
  if (!unknown.empty()) {
    std::string message = "config rejected:";
    for (const std::string& u : unknown) message += "\n  " + u;
    throw ConfigError(message);
  }
}

}  // namespace entrolab
