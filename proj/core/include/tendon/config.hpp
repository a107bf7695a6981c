#pragma once

#include <map>
#include <string>
#include <vector>

namespace tendon {

/// Sectioned key/value configuration file:
///   [section]
///   key = value       # comment
/// Unknown keys are rejected on read-back by the typed accessors' callers;
/// missing keys fall back to the given defaults.
class Config {
  public:
    static Config load(const std::string& path);
    static Config from_string(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;
    std::string get_str(const std::string& section, const std::string& key,
                        const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key,
                      double fallback) const;
    long get_int(const std::string& section, const std::string& key,
                 long fallback) const;
    bool get_bool(const std::string& section, const std::string& key,
                  bool fallback) const;
    /// Comma-separated list of numbers.
    std::vector<double> get_list(const std::string& section,
                                 const std::string& key,
                                 const std::vector<double>& fallback) const;

    void set(const std::string& section, const std::string& key,
             const std::string& value);

  private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

/// Canonical config text with every recognized key at its default value.
std::string default_config_text();

}  // namespace tendon
