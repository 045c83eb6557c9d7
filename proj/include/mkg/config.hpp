#pragma once
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "mkg/errors.hpp"

namespace mkg {

// Plain-text configuration: `key = value` lines grouped under `[section]`
// headers.  Blank lines and lines starting with '#' or ';' are ignored.
class Config {
 public:
  static Config parse(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::string s = trim(line);
      if (s.empty() || s[0] == '#' || s[0] == ';') continue;
      if (s.front() == '[') {
        if (s.back() != ']')
          throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
        section = trim(s.substr(1, s.size() - 2));
        continue;
      }
      auto eq = s.find('=');
      if (eq == std::string::npos)
        throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
      std::string key = trim(s.substr(0, eq));
      std::string val = trim(s.substr(eq + 1));
      if (key.empty())
        throw ConfigError("line " + std::to_string(lineno) + ": empty key");
      cfg.values_[section + "." + key] = val;
    }
    return cfg;
  }

  static Config parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
  }

  bool has(const std::string& section, const std::string& key) const {
    return values_.count(section + "." + key) > 0;
  }
  std::string get(const std::string& section, const std::string& key,
                  const std::string& dflt) const {
    auto it = values_.find(section + "." + key);
    return it == values_.end() ? dflt : it->second;
  }
  double get_num(const std::string& section, const std::string& key, double dflt) const {
    auto it = values_.find(section + "." + key);
    if (it == values_.end()) return dflt;
    try {
      std::size_t used = 0;
      double v = std::stod(it->second, &used);
      if (used != it->second.size()) throw ConfigError("");
      return v;
    } catch (...) {
      throw ConfigError("bad numeric value for " + section + "." + key + ": " + it->second);
    }
  }
  int get_int(const std::string& section, const std::string& key, int dflt) const {
    double v = get_num(section, key, (double)dflt);
    int i = (int)v;
    if ((double)i != v)
      throw ConfigError("expected integer for " + section + "." + key);
    return i;
  }

 private:
  static std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
  }
  std::map<std::string, std::string> values_;
};

}  // namespace mkg
