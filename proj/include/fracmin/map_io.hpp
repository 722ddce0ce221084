#pragma once

// CSV map format: header "theta,phase", one row per grid node, radians,
// 17 significant digits.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fracmin/circle_maps.hpp"

namespace fracmin {

inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_map_csv(std::ostream& os, const GridMap& u) {
    os << "theta,phase\n";
    for (std::size_t i = 0; i < u.size(); ++i)
        os << format_g17(u.theta(i)) << ',' << format_g17(u.phase(i)) << '\n';
}

inline void write_map_csv(const std::string& path, const GridMap& u) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open " + path + " for writing");
    write_map_csv(os, u);
}

/// Parses the CSV map format. The theta column must be the uniform grid
/// 2*pi*i/n (to 1e-9) and the map must be degree-admissible.
inline GridMap read_map_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw DomainError("map csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "theta,phase") throw DomainError("map csv: expected header 'theta,phase'");
    std::vector<double> thetas;
    std::vector<double> phases;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw DomainError("map csv: line " + std::to_string(lineno) + " has no comma");
        try {
            std::size_t used = 0;
            const std::string a = line.substr(0, comma);
            const std::string b = line.substr(comma + 1);
            thetas.push_back(std::stod(a, &used));
            if (used != a.size()) throw std::invalid_argument("trailing");
            phases.push_back(std::stod(b, &used));
            if (used != b.size()) throw std::invalid_argument("trailing");
        } catch (const std::logic_error&) {
            throw DomainError("map csv: unparsable number on line " + std::to_string(lineno));
        }
    }
    const std::size_t n = thetas.size();
    if (n < min_grid_size) throw SizeError("map csv: need at least 8 rows");
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && !(thetas[i] > thetas[i - 1]))
            throw DomainError("map csv: theta column is not strictly increasing");
        const double expected = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        if (std::abs(thetas[i] - expected) > 1e-9)
            throw DomainError("map csv: theta column is not the uniform grid 2*pi*i/n");
    }
    GridMap u(std::move(phases));
    if (!u.admissible()) throw AdmissibilityError("map csv: map is not degree-admissible");
    return u;
}

inline GridMap read_map_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw DomainError("cannot open map file " + path);
    return read_map_csv(is);
}

} // namespace fracmin
