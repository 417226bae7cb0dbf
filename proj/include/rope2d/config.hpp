#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace rope2d {

/// Rotary embedding configuration for one attention head.
///
/// `dim` is the per-head embedding dimension d. The 2D variants draw from a
/// shared pool of d/4 geometric frequencies, so `dim` must be divisible by 4.
/// The spiral variant additionally splits channels into `k_directions` groups
/// and requires dim % (4 * k_directions) == 0, which guarantees every
/// direction receives dim/(2K) frequencies and every perpendicular direction
/// pair receives dim/(4K) adjacent frequency pairs.
struct RopeConfig {
    int dim = 64;
    int k_directions = 8;
    double theta_base = 10000.0;
    double freq_scale = 1.0;
};

struct GridPosition {
    double x = 0.0;
    double y = 0.0;
};

inline GridPosition operator-(GridPosition a, GridPosition b) {
    return {a.x - b.x, a.y - b.y};
}

inline GridPosition operator-(GridPosition a) { return {-a.x, -a.y}; }

// Pool/axial constraints: dim > 0, dim % 4 == 0, theta_base > 1, freq_scale > 0.
inline void validate_pool_config(const RopeConfig& cfg) {
    if (cfg.dim <= 0 || cfg.dim % 4 != 0)
        throw std::invalid_argument("dim must be a positive multiple of 4 (got " +
                                    std::to_string(cfg.dim) + ")");
    if (!(cfg.theta_base > 1.0))
        throw std::invalid_argument("theta_base must be > 1 so the frequency pool is strictly decreasing");
    if (!(cfg.freq_scale > 0.0))
        throw std::invalid_argument("freq_scale must be positive");
}

// Spiral constraints on top of the pool constraints: K even, K >= 2,
// dim % (4K) == 0.
inline void validate_spiral_config(const RopeConfig& cfg) {
    validate_pool_config(cfg);
    if (cfg.k_directions < 2 || cfg.k_directions % 2 != 0)
        throw std::invalid_argument("k_directions must be even and >= 2 (got " +
                                    std::to_string(cfg.k_directions) + ")");
    if (cfg.dim % (4 * cfg.k_directions) != 0)
        throw std::invalid_argument("dim must be divisible by 4*k_directions (dim=" +
                                    std::to_string(cfg.dim) + ", k_directions=" +
                                    std::to_string(cfg.k_directions) + ")");
}

/// Shared pool of d/4 base frequencies,
///   theta_t = freq_scale * theta_base^(-t / (d/4)),  t = 0 .. d/4-1.
/// Strictly decreasing; theta_0 == freq_scale exactly.
struct FrequencyPool {
    std::vector<double> thetas;
};

inline FrequencyPool make_frequency_pool(const RopeConfig& cfg) {
    validate_pool_config(cfg);
    const int count = cfg.dim / 4;
    FrequencyPool pool;
    pool.thetas.reserve(count);
    for (int t = 0; t < count; ++t)
        pool.thetas.push_back(cfg.freq_scale *
                              std::pow(cfg.theta_base, -static_cast<double>(t) / count));
    return pool;
}

// 1D sequence convention: d/2 frequencies theta_t = base^(-t/(d/2)), one per
// consecutive channel pair of a full d-dimensional vector.
inline std::vector<double> make_frequency_pool_1d(int dim, double theta_base = 10000.0,
                                                  double freq_scale = 1.0) {
    if (dim <= 0 || dim % 2 != 0)
        throw std::invalid_argument("1d pool requires a positive even dim (got " +
                                    std::to_string(dim) + ")");
    if (!(theta_base > 1.0))
        throw std::invalid_argument("theta_base must be > 1 so the frequency pool is strictly decreasing");
    const int count = dim / 2;
    std::vector<double> thetas;
    thetas.reserve(count);
    for (int t = 0; t < count; ++t)
        thetas.push_back(freq_scale * std::pow(theta_base, -static_cast<double>(t) / count));
    return thetas;
}

/// K directions uniformly spaced over [0, pi): phi_k = k*pi/K with unit
/// vectors u_k = (cos phi_k, sin phi_k). Covering [0, pi) suffices because
/// opposite directions are parallel and rotations handle signed projections.
struct DirectionSet {
    std::vector<double> angles;
    std::vector<std::array<double, 2>> unit_vectors;
};

inline DirectionSet make_direction_set(int k_directions) {
    if (k_directions < 2 || k_directions % 2 != 0)
        throw std::invalid_argument("k_directions must be even and >= 2 (got " +
                                    std::to_string(k_directions) + ")");
    DirectionSet set;
    set.angles.reserve(k_directions);
    set.unit_vectors.reserve(k_directions);
    for (int k = 0; k < k_directions; ++k) {
        const double phi = static_cast<double>(k) * std::numbers::pi / k_directions;
        set.angles.push_back(phi);
        set.unit_vectors.push_back({std::cos(phi), std::sin(phi)});
    }
    return set;
}

/// Per-direction frequency index sets realizing the grouped interleaved
/// assignment.
///
/// Adjacent pool frequencies are grouped into pairs (theta_{2j}, theta_{2j+1})
/// for pair index j = 0 .. d/8-1. Perpendicular directions k and k+K/2 share
/// one set: direction pair k < K/2 takes the pairs with j congruent to
/// k mod K/2, in increasing j. With K=4 and d=32 this yields
///   directions 0/90 deg   -> {0, 1, 4, 5}
///   directions 45/135 deg -> {2, 3, 6, 7}
/// so every direction mixes low and high frequencies, every pool index is
/// used by exactly one perpendicular pair, and K=2 degenerates to the axial
/// layout (both axes take the whole pool in order).
struct FrequencyAssignment {
    std::vector<std::vector<int>> per_direction;
};

inline FrequencyAssignment assign_frequencies(const RopeConfig& cfg) {
    validate_spiral_config(cfg);
    const int k_dirs = cfg.k_directions;
    const int pair_count = cfg.dim / 8;
    FrequencyAssignment out;
    out.per_direction.assign(k_dirs, {});
    for (int k = 0; k < k_dirs / 2; ++k) {
        std::vector<int> indices;
        indices.reserve(cfg.dim / (2 * k_dirs));
        for (int j = k; j < pair_count; j += k_dirs / 2) {
            indices.push_back(2 * j);
            indices.push_back(2 * j + 1);
        }
        out.per_direction[k] = indices;
        out.per_direction[k + k_dirs / 2] = std::move(indices);
    }
    return out;
}

// Number of 2x2 rotation blocks applied to a d-dimensional vector. Identical
// for the axial and spiral variants (both use d/2 blocks over d/4 distinct
// frequencies).
inline int rotation_pair_count(const RopeConfig& cfg) {
    validate_pool_config(cfg);
    return cfg.dim / 2;
}

namespace presets {

// K=16 with every frequency scaled by 1.5, as used for classification
// backbones.
inline RopeConfig classification(int head_dim) { return {head_dim, 16, 10000.0, 1.5}; }

// DiT-S/B/L generation models: K=8, scale 1.5.
inline RopeConfig dit_small_base_large(int head_dim) { return {head_dim, 8, 10000.0, 1.5}; }

// DiT-XL: K=6, scale 1.5.
inline RopeConfig dit_xl(int head_dim) { return {head_dim, 6, 10000.0, 1.5}; }

}  // namespace presets

}  // namespace rope2d
