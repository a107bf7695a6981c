#include "tendon/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tendon {

namespace {
std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}
}  // namespace

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

Config Config::from_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::runtime_error("config line " + std::to_string(lineno) +
                                         ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key = value");
        cfg.sections_[section][trim(line.substr(0, eq))] =
            trim(line.substr(eq + 1));
    }
    return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

std::string Config::get_str(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return fallback;
    const auto k = s->second.find(key);
    return k == s->second.end() ? fallback : k->second;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get_str(section, key, "");
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size())
        throw std::runtime_error("config [" + section + "] " + key +
                                 ": not a number: " + v);
    return d;
}

long Config::get_int(const std::string& section, const std::string& key,
                     long fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get_str(section, key, "");
    std::size_t pos = 0;
    const long i = std::stol(v, &pos);
    if (pos != v.size())
        throw std::runtime_error("config [" + section + "] " + key +
                                 ": not an integer: " + v);
    return i;
}

bool Config::get_bool(const std::string& section, const std::string& key,
                      bool fallback) const {
    if (!has(section, key)) return fallback;
    std::string v = get_str(section, key, "");
    std::transform(v.begin(), v.end(), v.begin(), ::tolower);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::runtime_error("config [" + section + "] " + key +
                             ": not a boolean: " + v);
}

std::vector<double> Config::get_list(const std::string& section,
                                     const std::string& key,
                                     const std::vector<double>& fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get_str(section, key, "");
    std::vector<double> out;
    std::istringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

void Config::set(const std::string& section, const std::string& key,
                 const std::string& value) {
    sections_[section][key] = value;
}

}  // namespace tendon
