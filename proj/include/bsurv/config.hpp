#pragma once

// Run configuration shared by the command line tool: precision and budget
// knobs with a key=value file loader.  Flags given on the command line win
// over file entries, which win over the defaults below.

#include <fstream>
#include <string>

#include "bsurv/rational.hpp"

namespace bsurv {

struct Config {
    Rat eps = Rat(1, Int(1) << 64);  // enclosure width target for base roots
    std::size_t depth = 8;           // renormalization descent depth
    std::size_t cap = 40;            // longest carrier word considered
    std::size_t nmax = 40;           // word lengths fed to the entropy engine
    std::size_t horizon = 10000;     // orbit steps for membership checks
    std::string format = "json";    // json | csv
};

inline void validate(const Config& c) {
    if (c.eps <= 0 || c.eps >= Rat(1, Int(1) << 20))
        throw domain_error("eps must lie in (0, 2^-20)");
    if (c.depth == 0 || c.cap == 0 || c.nmax == 0 || c.horizon == 0)
        throw domain_error("depth, cap, nmax and horizon must be positive");
    if (c.format != "json" && c.format != "csv")
        throw domain_error("format must be json or csv");
}

// key=value lines; blank lines and lines starting with # are skipped.
inline Config load_config_file(const std::string& path, Config base = {}) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open config file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos || line[a] == '#') continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw parse_error("config line " + std::to_string(lineno) + ": expected key=value",
                              lineno);
        auto strip = [](std::string s) {
            std::size_t x = s.find_first_not_of(" \t\r");
            std::size_t y = s.find_last_not_of(" \t\r");
            return x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
        };
        std::string key = strip(line.substr(0, eq)), val = strip(line.substr(eq + 1));
        if (key == "eps")
            base.eps = parse_rational(val);
        else if (key == "depth")
            base.depth = static_cast<std::size_t>(std::stoull(val));
        else if (key == "cap")
            base.cap = static_cast<std::size_t>(std::stoull(val));
        else if (key == "nmax")
            base.nmax = static_cast<std::size_t>(std::stoull(val));
        else if (key == "horizon")
            base.horizon = static_cast<std::size_t>(std::stoull(val));
        else if (key == "format")
            base.format = val;
        else
            throw parse_error("config line " + std::to_string(lineno) + ": unknown key " + key,
                              lineno);
    }
    validate(base);
    return base;
}

}  // namespace bsurv
