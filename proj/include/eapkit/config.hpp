#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "eapkit/errors.hpp"
#include "eapkit/uncertainty.hpp"

namespace eapkit {

/// Flat key/value scenario config with INI-style nested sections:
///
///   # comment (';' works too)
///   [cavendish_null]
///   arm = 0.1
///   arm_sigma = 1e-3
///
/// Keys are addressed by dotted path ("cavendish_null.arm"). Entry order is
/// preserved so echoed configs reproduce the file layout. Duplicate keys are
/// rejected: silent override has caused enough silent wrong numbers.
class Config {
  public:
    static Config parse_string(const std::string& text, const std::string& origin = "<string>") {
        Config cfg;
        cfg.origin_ = origin;
        std::istringstream in(text);
        std::string line;
        std::string section;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string t = strip_comment(line);
            t = trim(t);
            if (t.empty()) continue;
            if (t.front() == '[') {
                if (t.back() != ']')
                    throw ConfigError(origin + ":" + std::to_string(lineno) +
                                      ": unterminated section header '" + t + "'");
                section = trim(t.substr(1, t.size() - 2));
                if (section.empty())
                    throw ConfigError(origin + ":" + std::to_string(lineno) +
                                      ": empty section name");
                continue;
            }
            const auto eq = t.find('=');
            if (eq == std::string::npos)
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": expected 'key = value', got '" + t + "'");
            const std::string key = trim(t.substr(0, eq));
            const std::string value = trim(t.substr(eq + 1));
            if (key.empty())
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
            const std::string path = section.empty() ? key : section + "." + key;
            if (cfg.find(path) != cfg.entries_.size())
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                                  path + "'");
            cfg.entries_.emplace_back(path, value);
        }
        return cfg;
    }

    static Config parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("config file not found or unreadable: " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_string(ss.str(), path);
    }

    bool has(const std::string& path) const { return find(path) != entries_.size(); }

    const std::string& get_string(const std::string& path) const {
        const std::size_t i = find(path);
        if (i == entries_.size())
            throw ConfigError("missing key '" + path + "' in " + origin_);
        return entries_[i].second;
    }

    std::string get_string_or(const std::string& path, const std::string& fallback) const {
        const std::size_t i = find(path);
        return i == entries_.size() ? fallback : entries_[i].second;
    }

    double get_double(const std::string& path) const {
        const std::string& raw = get_string(path);
        char* end = nullptr;
        const double v = std::strtod(raw.c_str(), &end);
        if (end == raw.c_str() || *end != '\0')
            throw ConfigError("key '" + path + "' is not a number: '" + raw + "'");
        return v;
    }

    double get_double_or(const std::string& path, double fallback) const {
        return has(path) ? get_double(path) : fallback;
    }

    std::size_t get_count(const std::string& path) const {
        const double v = get_double(path);
        if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v)))
            throw ConfigError("key '" + path + "' must be a non-negative integer");
        return static_cast<std::size_t>(v);
    }

    /// Value plus optional companion '<path>_sigma' (defaults to exact).
    Measured get_measured(const std::string& path) const {
        return Measured(get_double(path), get_double_or(path + "_sigma", 0.0));
    }

    /// Insert or replace; sweeps use this to move one parameter along the axis.
    void set(const std::string& path, const std::string& value) {
        const std::size_t i = find(path);
        if (i == entries_.size()) entries_.emplace_back(path, value);
        else entries_[i].second = value;
    }

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
    const std::string& origin() const { return origin_; }

  private:
    std::size_t find(const std::string& path) const {
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i].first == path) return i;
        return entries_.size();
    }

    static std::string strip_comment(const std::string& s) {
        // Full-line comments plus inline comments introduced by whitespace.
        const std::string t = trim(s);
        if (!t.empty() && (t.front() == '#' || t.front() == ';')) return "";
        std::string out = s;
        for (std::size_t i = 1; i < out.size(); ++i)
            if ((out[i] == '#' || out[i] == ';') &&
                (out[i - 1] == ' ' || out[i - 1] == '\t')) {
                out.erase(i);
                break;
            }
        return out;
    }

    static std::string trim(const std::string& s) {
        std::size_t b = 0, e = s.size();
        while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
        while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
        return s.substr(b, e - b);
    }

    std::vector<std::pair<std::string, std::string>> entries_;
    std::string origin_ = "<empty>";
};

} // namespace eapkit
