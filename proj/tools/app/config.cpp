#include "config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace ese::app {

namespace {

std::string format_error(const std::string& source, int line, const std::string& what) {
  std::ostringstream msg;
  msg << source;
  if (line > 0) msg << ':' << line;
  msg << ": " << what;
  return msg.str();
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& what)
    : std::runtime_error(format_error(source, line, what)), line_(line) {}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_list(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto pos = s.find(sep, start);
    const auto piece = trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (!piece.empty()) out.push_back(piece);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

Config Config::parse(std::istream& in, std::string source) {
  Config cfg;
  cfg.source_ = std::move(source);
  std::string section;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string text = raw;
    for (char mark : {'#', ';'}) {
      const auto pos = text.find(mark);
      if (pos != std::string::npos) text.erase(pos);
    }
    text = trim(text);
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') throw ConfigError(cfg.source_, line_no, "unterminated section header");
      section = trim(std::string_view(text).substr(1, text.size() - 2));
      if (section.empty()) throw ConfigError(cfg.source_, line_no, "empty section name");
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(cfg.source_, line_no, "expected 'key = value'");
    const std::string key = trim(std::string_view(text).substr(0, eq));
    if (key.empty()) throw ConfigError(cfg.source_, line_no, "missing key before '='");
    if (section.empty()) throw ConfigError(cfg.source_, line_no, "key '" + key + "' outside any [section]");
    const std::string full = section + "." + key;
    if (cfg.entries_.count(full)) throw ConfigError(cfg.source_, line_no, "duplicate key '" + full + "'");
    cfg.entries_[full] = {trim(std::string_view(text).substr(eq + 1)), line_no};
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open config file");
  return parse(in, path.string());
}

void Config::set(const std::string& key, std::string value) { entries_[key] = {std::move(value), 0}; }

int Config::line(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.line;
}

std::vector<std::string> Config::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : entries_) out.push_back(k);
  return out;
}

void Config::fail(const std::string& key, const std::string& what) const {
  throw ConfigError(source_, line(key), key + ": " + what);
}

const Config::Entry& Config::entry(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError(source_, 0, "missing required key '" + key + "'");
  return it->second;
}

std::string Config::get_string(const std::string& key, std::optional<std::string> fallback) const {
  if (!has(key) && fallback) return *fallback;
  return entry(key).value;
}

double Config::get_double(const std::string& key, std::optional<double> fallback) const {
  if (!has(key) && fallback) return *fallback;
  const auto& e = entry(key);
  std::istringstream in(e.value);
  double v = 0.0;
  if (!(in >> v) || !(in >> std::ws).eof()) fail(key, "expected a number, got '" + e.value + "'");
  return v;
}

long long Config::get_int(const std::string& key, std::optional<long long> fallback) const {
  if (!has(key) && fallback) return *fallback;
  const auto& e = entry(key);
  std::istringstream in(e.value);
  long long v = 0;
  if (!(in >> v) || !(in >> std::ws).eof()) fail(key, "expected an integer, got '" + e.value + "'");
  return v;
}

bool Config::get_bool(const std::string& key, std::optional<bool> fallback) const {
  if (!has(key) && fallback) return *fallback;
  const auto& v = entry(key).value;
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  fail(key, "expected true/false, got '" + v + "'");
}

std::vector<std::string> Config::get_list(const std::string& key,
                                          std::optional<std::vector<std::string>> fallback) const {
  if (!has(key) && fallback) return *fallback;
  return split_list(entry(key).value);
}

std::vector<double> Config::get_doubles(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : get_list(key)) {
    std::istringstream in(item);
    double v = 0.0;
    if (!(in >> v) || !(in >> std::ws).eof()) fail(key, "expected a list of numbers, got '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace ese::app
