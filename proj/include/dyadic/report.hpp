#pragma once

/**
 * @file report.hpp
 * @brief CSV, SVG and JSON renderings of plateaus and dimension results,
 * and the on-disk spectral cache.
 */

#include "dimension.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace dyadic {

inline constexpr const char* kCsvHeader = "left_num,left_den,right_num,right_den,dim,level,representative";
inline constexpr const char* kCacheVersion = "dyadic-spectral-2";

/// 10 significant digits, as in the CSV.
inline std::string format_dim(double d) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", d);
    return buf;
}

inline std::string plateaus_csv(const std::vector<Plateau>& ps) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& p : ps) {
        out << p.left.num() << ',' << p.left.den() << ',' << p.right.num() << ',' << p.right.den() << ','
            << format_dim(p.dim) << ',' << p.level << ',' << p.representative.str() << '\n';
    }
    return out.str();
}

struct CsvRow {
    Fraction left;
    Fraction right;
    double dim = 0;
    unsigned level = 0;
    std::string representative;
};

inline std::vector<CsvRow> parse_plateaus_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw DomainError("missing plateau CSV header");
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::istringstream fields(line);
        for (std::string cell; std::getline(fields, cell, ',');) f.push_back(cell);
        if (f.size() != 7) throw DomainError("bad plateau CSV row: " + line);
        rows.push_back({Fraction(BigInt(f[0]), BigInt(f[1])), Fraction(BigInt(f[2]), BigInt(f[3])), std::stod(f[4]),
                        static_cast<unsigned>(std::stoul(f[5])), f[6]});
    }
    return rows;
}

/// Step plot of the CSV rows on c in [0, 1/2]: one segment per plateau and
/// the zero ray from `zero_from` on.
inline std::string plateaus_svg(const std::vector<CsvRow>& rows, double zero_from) {
    const double width = 800, height = 500, margin = 50;
    const double x_max = 0.5;
    auto sx = [&](double c) { return margin + (width - 2 * margin) * c / x_max; };
    auto sy = [&](double d) { return height - margin - (height - 2 * margin) * d; };
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(3);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(x_max) << "\" y2=\"" << sy(0)
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(0) << "\" y2=\"" << sy(1)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << sx(x_max) - 10 << "\" y=\"" << sy(0) + 30 << "\" font-size=\"14\">c</text>\n";
    out << "<text x=\"" << sx(0) - 40 << "\" y=\"" << sy(1) << "\" font-size=\"14\">dim</text>\n";
    out << "<g stroke=\"#1f4e9c\" stroke-width=\"2\">\n";
    for (const auto& r : rows) {
        out << "<line x1=\"" << sx(r.left.to_double()) << "\" y1=\"" << sy(r.dim) << "\" x2=\""
            << sx(r.right.to_double()) << "\" y2=\"" << sy(r.dim) << "\"/>\n";
    }
    out << "<line x1=\"" << sx(zero_from) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(x_max) << "\" y2=\"" << sy(0)
        << "\"/>\n</g>\n</svg>\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// JSON.

inline nlohmann::ordered_json plateau_json(const Plateau& p) {
    nlohmann::ordered_json j;
    j["left"] = p.left.str();
    j["right"] = p.right.str();
    j["left_decimal"] = p.left.to_double();
    j["right_decimal"] = p.right.to_double();
    j["left_word"] = p.left_word.str();
    j["right_word"] = p.right_word.str();
    j["dim"] = p.dim;
    j["level"] = p.level;
    j["representative"] = p.representative.str();
    return j;
}

inline nlohmann::ordered_json dimension_json(const std::string& input, const DimensionResult& r) {
    nlohmann::ordered_json j;
    j["input"] = input;
    j["level"] = r.level.str();
    j["empty"] = r.empty;
    j["dim"] = r.dim();
    j["dim_lower"] = r.dim_lower;
    j["dim_upper"] = r.dim_upper;
    j["representative"] = r.representative ? nlohmann::ordered_json(r.representative->str()) : nlohmann::ordered_json(nullptr);
    j["reduced_e1"] = r.reduced_e1.str();
    j["plateau"] = r.plateau ? plateau_json(*r.plateau) : nlohmann::ordered_json(nullptr);
    return j;
}

// ---------------------------------------------------------------------------
// Spectral cache file: {"version", "tol", "entries": {word: [lower, upper]}}.

/// Loads matching records into `cache`; returns false (and loads nothing) when
/// the file is missing or was written by another engine version or tolerance.
inline bool load_cache(const std::string& path, SpectralCache& cache, double tol) {
    std::ifstream in(path);
    if (!in) return false;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception&) {
        return false;
    }
    if (!j.is_object() || j.value("version", "") != kCacheVersion || !j.contains("tol") || j["tol"] != tol)
        return false;
    for (const auto& [key, v] : j["entries"].items()) cache.insert(key, {v.at(0).get<double>(), v.at(1).get<double>()});
    return true;
}

inline void save_cache(const std::string& path, const SpectralCache& cache, double tol) {
    nlohmann::ordered_json j;
    j["version"] = kCacheVersion;
    j["tol"] = tol;
    nlohmann::ordered_json entries = nlohmann::ordered_json::object();
    for (const auto& [key, e] : cache.snapshot()) entries[key] = {e.lower, e.upper};
    j["entries"] = std::move(entries);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write cache file " + path);
    out << j.dump(1) << '\n';
    if (!out) throw std::runtime_error("cannot write cache file " + path);
}

} // namespace dyadic
