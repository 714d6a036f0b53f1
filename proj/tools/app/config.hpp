#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ese::app {

/// Bad configuration or usage; `line` is 0 when no file line applies.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& what);

  int line() const { return line_; }

 private:
  int line_;
};

/// Sectioned key-value text file:
///
///   # comment
///   [problem]
///   p = 2          ; trailing comments allowed
///
/// Keys are addressed as "section.key". Values set programmatically (sweep
/// overrides) carry line 0.
class Config {
 public:
  static Config parse(std::istream& in, std::string source = "<config>");
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  void set(const std::string& key, std::string value);
  int line(const std::string& key) const;
  const std::string& source() const { return source_; }
  std::vector<std::string> keys() const;

  std::string get_string(const std::string& key, std::optional<std::string> fallback = std::nullopt) const;
  double get_double(const std::string& key, std::optional<double> fallback = std::nullopt) const;
  long long get_int(const std::string& key, std::optional<long long> fallback = std::nullopt) const;
  bool get_bool(const std::string& key, std::optional<bool> fallback = std::nullopt) const;
  /// Comma-separated list; empty entries dropped.
  std::vector<std::string> get_list(const std::string& key, std::optional<std::vector<std::string>> fallback = std::nullopt) const;
  std::vector<double> get_doubles(const std::string& key) const;

  /// Throws ConfigError pointing at the line of `key`.
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  const Entry& entry(const std::string& key) const;

  std::string source_;
  std::map<std::string, Entry> entries_;
};

std::string trim(std::string_view s);
std::vector<std::string> split_list(std::string_view s, char sep = ',');

}  // namespace ese::app
