#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rope2d/config.hpp"
#include "rope2d/fourier.hpp"

namespace rope2d {

/// Fixed 9-significant-digit decimal formatting for every real written to
/// disk, so outputs diff cleanly across runs and platforms.
inline std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

namespace detail {

inline std::ofstream open_for_write(const std::string& path, bool binary = false) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

}  // namespace detail

/// 8-bit binary PGM (P5, maxval 255, row-major), with [min, max] linearly
/// rescaled to [0, 255]. The rescale is display-only; metrics are computed on
/// the raw values. A constant image writes as all zeros.
inline void write_pgm(const RealImage& img, const std::string& path) {
    detail::require_square(img.pixels.size(), img.size, "image");
    const auto [lo_it, hi_it] = std::minmax_element(img.pixels.begin(), img.pixels.end());
    const double lo = *lo_it, hi = *hi_it;
    const double span = hi - lo;
    std::ofstream out = detail::open_for_write(path, /*binary=*/true);
    out << "P5\n" << img.size << " " << img.size << "\n255\n";
    std::vector<unsigned char> bytes;
    bytes.reserve(img.pixels.size());
    for (double v : img.pixels) {
        const double scaled = span > 0.0 ? (v - lo) / span * 255.0 : 0.0;
        bytes.push_back(static_cast<unsigned char>(std::lround(scaled)));
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

inline void write_pgm(const BinaryImage& img, const std::string& path) {
    write_pgm(img.to_real(), path);
}

/// CSV of frequency-support points:
///   variant,direction_deg,theta_index,theta,fx,fy,sign
/// One row per point; direction angles exported in degrees.
inline void write_support_csv(const std::vector<FrequencyPoint>& points,
                              const DirectionSet& directions, const std::string& variant_label,
                              const std::string& path) {
    std::ofstream out = detail::open_for_write(path);
    out << "variant,direction_deg,theta_index,theta,fx,fy,sign\n";
    for (const auto& p : points) {
        const double deg = directions.angles[p.direction_index] * 180.0 / std::numbers::pi;
        const double theta = std::hypot(p.fx, p.fy);
        out << variant_label << ',' << format_real(deg) << ',' << p.theta_index << ','
            << format_real(theta) << ',' << format_real(p.fx) << ',' << format_real(p.fy) << ','
            << p.sign << '\n';
    }
    if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

/// Plain key=value lines, one per entry, in the given order.
inline void write_metrics(const std::vector<std::pair<std::string, std::string>>& entries,
                          const std::string& path) {
    std::ofstream out = detail::open_for_write(path);
    for (const auto& [key, value] : entries) out << key << '=' << value << '\n';
    if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

/// Reads whitespace-separated reals and slices them into vectors of `dim`
/// values each. The value count must be a positive multiple of dim.
inline std::vector<std::vector<double>> read_vectors(const std::string& path, int dim) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::vector<double> values;
    double v;
    while (in >> v) values.push_back(v);
    if (!in.eof()) throw std::runtime_error("malformed number in '" + path + "'");
    if (values.empty() || values.size() % static_cast<std::size_t>(dim) != 0)
        throw std::runtime_error("'" + path + "' holds " + std::to_string(values.size()) +
                                    " values, not a positive multiple of dim " +
                                    std::to_string(dim));
    std::vector<std::vector<double>> vectors;
    vectors.reserve(values.size() / dim);
    for (std::size_t i = 0; i < values.size(); i += dim)
        vectors.emplace_back(values.begin() + i, values.begin() + i + dim);
    return vectors;
}

/// One vector per line, values space-separated with format_real.
inline void write_vectors(const std::vector<std::vector<double>>& vectors,
                          const std::string& path) {
    std::ofstream out = detail::open_for_write(path);
    for (const auto& vec : vectors) {
        for (std::size_t i = 0; i < vec.size(); ++i) {
            if (i) out << ' ';
            out << format_real(vec[i]);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

}  // namespace rope2d
