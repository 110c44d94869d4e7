// Shared helpers for the key = value config format: comment stripping,
// duplicate detection, and scalar parsing. Errors surface as ConfigError.

#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ibsim/config.hpp"

namespace ibsim::kv {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(trim(part));
    return out;
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        if (!value.empty() && value[0] == '-')
            throw ConfigError(key + ": must be non-negative, got '" + value + "'");
        std::uint64_t v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected an integer, got '" + value + "'");
    }
}

inline std::uint32_t parse_u32(const std::string& key, const std::string& value) {
    std::uint64_t v = parse_u64(key, value);
    if (v > 0xffffffffULL) throw ConfigError(key + ": value out of range: " + value);
    return static_cast<std::uint32_t>(v);
}

inline double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a real number, got '" + value + "'");
    }
}

inline bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

struct Line {
    int lineno = 0;
    std::string key;
    std::string value;
};

// Splits text into key/value lines, dropping comments and blanks;
// rejects malformed lines and duplicate keys.
inline std::vector<Line> parse_lines(const std::string& text) {
    std::vector<Line> out;
    std::map<std::string, bool> seen;
    std::stringstream ss(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(ss, raw)) {
        ++lineno;
        std::string line = raw;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        Line entry;
        entry.lineno = lineno;
        entry.key = trim(line.substr(0, eq));
        entry.value = trim(line.substr(eq + 1));
        if (seen[entry.key]) throw ConfigError("duplicate key '" + entry.key + "'");
        seen[entry.key] = true;
        out.push_back(std::move(entry));
    }
    return out;
}

}  // namespace ibsim::kv
