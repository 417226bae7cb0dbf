#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rope2d/config.hpp"
#include "rope2d/rope.hpp"

namespace rope2d {

/// Square n x n grayscale image, row-major; pixels[r * size + c].
struct RealImage {
    int size = 0;
    std::vector<double> pixels;
};

/// Square 0/1 image, row-major.
struct BinaryImage {
    int size = 0;
    std::vector<std::uint8_t> pixels;

    RealImage to_real() const {
        RealImage img{size, std::vector<double>(pixels.begin(), pixels.end())};
        return img;
    }
};

/// 2D DFT coefficients, row-major; coefficients[ky * size + kx] where kx is
/// the frequency along image columns (x) and ky along image rows (y).
struct Spectrum {
    int size = 0;
    std::vector<std::complex<double>> coefficients;
};

/// Set of DFT bins a reconstruction keeps; everything else is zeroed.
/// Closed under bin negation so reconstructions of real images stay real.
struct SpectrumMask {
    int size = 0;
    std::vector<std::uint8_t> kept;  // n*n flags, row-major like Spectrum

    bool contains(int row, int col) const {
        return kept[static_cast<std::size_t>(row) * size + col] != 0;
    }

    int kept_count() const {
        int n = 0;
        for (auto flag : kept) n += flag != 0;
        return n;
    }

    std::vector<std::pair<int, int>> kept_bins() const {
        std::vector<std::pair<int, int>> bins;
        for (int r = 0; r < size; ++r)
            for (int c = 0; c < size; ++c)
                if (contains(r, c)) bins.emplace_back(r, c);
        return bins;
    }
};

/// One representable 2D frequency: (fx, fy) = sign * theta * (cos phi, sin phi),
/// in radians per unit position.
struct FrequencyPoint {
    double fx = 0.0;
    double fy = 0.0;
    int direction_index = 0;
    int theta_index = 0;
    int sign = 1;
};

namespace detail {

// One 1D DFT pass. Radix-2 iterative FFT when n is a power of two, direct
// O(n^2) evaluation otherwise. No normalization; `inverse` flips the twiddle
// sign only.
inline void transform_1d(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n <= 1) return;
    const double sign = inverse ? 1.0 : -1.0;
    if ((n & (n - 1)) != 0) {
        std::vector<std::complex<double>> out(n);
        for (std::size_t k = 0; k < n; ++k) {
            std::complex<double> acc{0.0, 0.0};
            for (std::size_t j = 0; j < n; ++j) {
                const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(j * k % n) / n;
                acc += a[j] * std::complex<double>(std::cos(ang), std::sin(ang));
            }
            out[k] = acc;
        }
        a = std::move(out);
        return;
    }
    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wstep(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w{1.0, 0.0};
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wstep;
            }
        }
    }
}

// Row-column decomposition over a square complex grid.
inline void transform_2d(std::vector<std::complex<double>>& grid, int n, bool inverse) {
    std::vector<std::complex<double>> line(n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) line[c] = grid[static_cast<std::size_t>(r) * n + c];
        transform_1d(line, inverse);
        for (int c = 0; c < n; ++c) grid[static_cast<std::size_t>(r) * n + c] = line[c];
    }
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) line[r] = grid[static_cast<std::size_t>(r) * n + c];
        transform_1d(line, inverse);
        for (int r = 0; r < n; ++r) grid[static_cast<std::size_t>(r) * n + c] = line[r];
    }
}

inline void require_square(std::size_t pixel_count, int size, const char* what) {
    if (size <= 0 || pixel_count != static_cast<std::size_t>(size) * size)
        throw std::invalid_argument(std::string(what) + " must be a square grid (size " +
                                    std::to_string(size) + ", " + std::to_string(pixel_count) +
                                    " values)");
}

}  // namespace detail

inline Spectrum dft2d(const RealImage& img) {
    detail::require_square(img.pixels.size(), img.size, "image");
    Spectrum s;
    s.size = img.size;
    s.coefficients.assign(img.pixels.begin(), img.pixels.end());
    detail::transform_2d(s.coefficients, s.size, /*inverse=*/false);
    return s;
}

inline Spectrum dft2d(const BinaryImage& img) { return dft2d(img.to_real()); }

/// Inverse 2D DFT with 1/n^2 normalization; returns the complex spatial field
/// so callers can check how real it is.
inline Spectrum idft2d(const Spectrum& s) {
    detail::require_square(s.coefficients.size(), s.size, "spectrum");
    Spectrum out = s;
    detail::transform_2d(out.coefficients, out.size, /*inverse=*/true);
    const double scale = 1.0 / (static_cast<double>(out.size) * out.size);
    for (auto& c : out.coefficients) c *= scale;
    return out;
}

inline RealImage real_part(const Spectrum& s) {
    RealImage img;
    img.size = s.size;
    img.pixels.reserve(s.coefficients.size());
    for (const auto& c : s.coefficients) img.pixels.push_back(c.real());
    return img;
}

inline double max_abs_imag(const Spectrum& s) {
    double m = 0.0;
    for (const auto& c : s.coefficients) m = std::max(m, std::abs(c.imag()));
    return m;
}

/// The frequencies a variant can represent, as signed 2D points.
/// Axial: (+-theta_t, 0) and (0, +-theta_t), direction indices {0, 1} matching
/// make_direction_set(2). Spiral: +-theta_i * u_k for every index i assigned to
/// direction k. Both variants emit exactly `dim` points.
inline std::vector<FrequencyPoint> support_points(Variant variant, const RopeConfig& cfg) {
    std::vector<FrequencyPoint> points;
    if (variant == Variant::axial) {
        validate_pool_config(cfg);
        const FrequencyPool pool = make_frequency_pool(cfg);
        points.reserve(static_cast<std::size_t>(cfg.dim));
        for (int t = 0; t < static_cast<int>(pool.thetas.size()); ++t) {
            const double th = pool.thetas[t];
            points.push_back({+th, 0.0, 0, t, +1});
            points.push_back({-th, 0.0, 0, t, -1});
        }
        for (int t = 0; t < static_cast<int>(pool.thetas.size()); ++t) {
            const double th = pool.thetas[t];
            points.push_back({0.0, +th, 1, t, +1});
            points.push_back({0.0, -th, 1, t, -1});
        }
        return points;
    }
    if (variant == Variant::spiral) {
        validate_spiral_config(cfg);
        const FrequencyPool pool = make_frequency_pool(cfg);
        const DirectionSet dirs = make_direction_set(cfg.k_directions);
        const FrequencyAssignment assignment = assign_frequencies(cfg);
        points.reserve(static_cast<std::size_t>(cfg.dim));
        for (int k = 0; k < cfg.k_directions; ++k) {
            const auto& u = dirs.unit_vectors[k];
            for (int idx : assignment.per_direction[k]) {
                const double th = pool.thetas[idx];
                // The +0.0 folds any negative zero (e.g. -theta * 0 on an
                // axis-aligned direction) into plain zero for the exports.
                points.push_back({+th * u[0] + 0.0, +th * u[1] + 0.0, k, idx, +1});
                points.push_back({-th * u[0] + 0.0, -th * u[1] + 0.0, k, idx, -1});
            }
        }
        return points;
    }
    throw std::invalid_argument("frequency support is defined for the axial and spiral variants");
}

struct MaskBuildResult {
    SpectrumMask mask;
    int clamped_points = 0;  // points with at least one component clamped to Nyquist
};

/// Snaps each continuous frequency (radians per position) to the nearest DFT
/// bin of an n x n grid: bin index round(n * f / (2*pi)) per component,
/// clamped to the Nyquist index n/2. Conjugate bins are added so the mask is
/// closed under negation; duplicates collapse.
inline MaskBuildResult build_mask(const std::vector<FrequencyPoint>& points, int n) {
    if (n < 2) throw std::invalid_argument("mask grid size must be >= 2 (got " + std::to_string(n) + ")");
    MaskBuildResult result;
    result.mask.size = n;
    result.mask.kept.assign(static_cast<std::size_t>(n) * n, 0);
    const double scale = n / (2.0 * std::numbers::pi);
    const long nyquist = n / 2;
    auto wrap = [n](long b) { return static_cast<int>(((b % n) + n) % n); };
    for (const auto& p : points) {
        long bx = std::lround(p.fx * scale);
        long by = std::lround(p.fy * scale);
        bool clamped = false;
        if (bx > nyquist) { bx = nyquist; clamped = true; }
        if (bx < -nyquist) { bx = -nyquist; clamped = true; }
        if (by > nyquist) { by = nyquist; clamped = true; }
        if (by < -nyquist) { by = -nyquist; clamped = true; }
        result.clamped_points += clamped;
        result.mask.kept[static_cast<std::size_t>(wrap(by)) * n + wrap(bx)] = 1;
        result.mask.kept[static_cast<std::size_t>(wrap(-by)) * n + wrap(-bx)] = 1;
    }
    return result;
}

inline SpectrumMask full_mask(int n) {
    if (n < 2) throw std::invalid_argument("mask grid size must be >= 2 (got " + std::to_string(n) + ")");
    SpectrumMask mask;
    mask.size = n;
    mask.kept.assign(static_cast<std::size_t>(n) * n, 1);
    return mask;
}

inline Spectrum apply_mask(const Spectrum& s, const SpectrumMask& mask) {
    if (s.size != mask.size)
        throw std::invalid_argument("spectrum size " + std::to_string(s.size) +
                                    " does not match mask size " + std::to_string(mask.size));
    Spectrum out = s;
    for (std::size_t i = 0; i < out.coefficients.size(); ++i)
        if (!mask.kept[i]) out.coefficients[i] = {0.0, 0.0};
    return out;
}

/// Single 1-pixel at (n/2, n/2).
inline BinaryImage make_point_image(int n) {
    if (n < 2) throw std::invalid_argument("image size must be >= 2 (got " + std::to_string(n) + ")");
    BinaryImage img;
    img.size = n;
    img.pixels.assign(static_cast<std::size_t>(n) * n, 0);
    img.pixels[static_cast<std::size_t>(n / 2) * n + n / 2] = 1;
    return img;
}

/// Midpoint-rasterized circle outline of the given radius. Center defaults to
/// (n/2, n/2); a radius that does not fit strictly inside the grid is rejected.
inline BinaryImage make_circle_image(int n, int radius, int center_row = -1, int center_col = -1) {
    if (n < 2) throw std::invalid_argument("image size must be >= 2 (got " + std::to_string(n) + ")");
    if (center_row < 0) center_row = n / 2;
    if (center_col < 0) center_col = n / 2;
    if (radius <= 0 || radius >= (n + 1) / 2)
        throw std::invalid_argument("circle radius must satisfy 0 < radius < size/2 (radius " +
                                    std::to_string(radius) + ", size " + std::to_string(n) + ")");
    if (center_row - radius < 0 || center_row + radius >= n || center_col - radius < 0 ||
        center_col + radius >= n)
        throw std::invalid_argument("circle of radius " + std::to_string(radius) +
                                    " does not fit inside the grid at center (" +
                                    std::to_string(center_row) + "," + std::to_string(center_col) + ")");
    BinaryImage img;
    img.size = n;
    img.pixels.assign(static_cast<std::size_t>(n) * n, 0);
    auto plot = [&](int dr, int dc) {
        img.pixels[static_cast<std::size_t>(center_row + dr) * n + (center_col + dc)] = 1;
    };
    int x = radius, y = 0, d = 1 - radius;
    while (x >= y) {
        plot(y, x); plot(y, -x); plot(-y, x); plot(-y, -x);
        plot(x, y); plot(x, -y); plot(-x, y); plot(-x, -y);
        ++y;
        if (d < 0) {
            d += 2 * y + 1;
        } else {
            --x;
            d += 2 * (y - x) + 1;
        }
    }
    return img;
}

struct ReconstructionResult {
    RealImage image;
    double max_imag = 0.0;  // how far from real the masked inverse transform came out
};

/// FFT -> mask -> inverse FFT.
inline ReconstructionResult reconstruct(const BinaryImage& img, const SpectrumMask& mask) {
    if (img.size != mask.size)
        throw std::invalid_argument("image size " + std::to_string(img.size) +
                                    " does not match mask size " + std::to_string(mask.size));
    const Spectrum masked = apply_mask(dft2d(img), mask);
    const Spectrum spatial = idft2d(masked);
    return {real_part(spatial), max_abs_imag(spatial)};
}

inline double mean_squared_error(const RealImage& a, const RealImage& b) {
    if (a.size != b.size)
        throw std::invalid_argument("image sizes differ (" + std::to_string(a.size) + " vs " +
                                    std::to_string(b.size) + ")");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const double d = a.pixels[i] - b.pixels[i];
        acc += d * d;
    }
    return acc / static_cast<double>(a.pixels.size());
}

inline double mean_squared_error(const BinaryImage& a, const RealImage& b) {
    return mean_squared_error(a.to_real(), b);
}

/// Fraction of off-center image energy (squared pixels, center pixel excluded)
/// that sits on the row and column through (center_row, center_col).
/// Quantifies how strongly a reconstruction's artifacts align with the axes.
inline double central_cross_energy_fraction(const RealImage& img, int center_row, int center_col) {
    detail::require_square(img.pixels.size(), img.size, "image");
    if (center_row < 0 || center_row >= img.size || center_col < 0 || center_col >= img.size)
        throw std::out_of_range("center (" + std::to_string(center_row) + "," +
                                std::to_string(center_col) + ") outside image of size " +
                                std::to_string(img.size));
    const int n = img.size;
    auto energy = [&](int r, int c) {
        const double v = img.pixels[static_cast<std::size_t>(r) * n + c];
        return v * v;
    };
    double total = 0.0, cross = 0.0;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            if (r == center_row && c == center_col) continue;
            const double e = energy(r, c);
            total += e;
            if (r == center_row || c == center_col) cross += e;
        }
    if (total == 0.0) return 0.0;
    return cross / total;
}

}  // namespace rope2d
