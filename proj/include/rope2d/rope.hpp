#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rope2d/config.hpp"

namespace rope2d {

enum class Variant { rope_1d, axial, spiral };

inline const char* variant_name(Variant v) {
    switch (v) {
        case Variant::rope_1d: return "1d";
        case Variant::axial: return "axial";
        case Variant::spiral: return "spiral";
    }
    return "?";
}

/// Projection of position p onto a unit direction vector:
/// t = p_x * cos(phi) + p_y * sin(phi).
inline double project_position(GridPosition p, std::array<double, 2> direction) {
    return p.x * direction[0] + p.y * direction[1];
}

namespace detail {

// Rotate the channel pair (x[2t], x[2t+1]) by angle m*theta_t, writing into out.
inline void rotate_pairs(std::span<const double> x, double m,
                         std::span<const double> thetas, std::span<double> out) {
    for (std::size_t t = 0; t < thetas.size(); ++t) {
        const double angle = m * thetas[t];
        const double c = std::cos(angle);
        const double s = std::sin(angle);
        const double a = x[2 * t];
        const double b = x[2 * t + 1];
        out[2 * t] = a * c - b * s;
        out[2 * t + 1] = a * s + b * c;
    }
}

}  // namespace detail

/// 1D rotary embedding: consecutive channel pairs (x_{2t}, x_{2t+1}) rotated
/// by m * theta_t. Requires exactly one frequency per pair.
inline std::vector<double> apply_rope_1d(std::span<const double> x, double m,
                                         std::span<const double> thetas) {
    if (x.size() != 2 * thetas.size())
        throw std::invalid_argument("vector length " + std::to_string(x.size()) +
                                    " does not match frequency count " +
                                    std::to_string(thetas.size()) + " (need one per pair)");
    std::vector<double> out(x.size());
    detail::rotate_pairs(x, m, thetas, out);
    return out;
}

/// Axial 2D rotary embedding: the first d/2 channels are rotated by the
/// x-coordinate, the second d/2 by the y-coordinate, both halves using the
/// full d/4-entry pool in order.
inline std::vector<double> apply_axial_2d(std::span<const double> x, GridPosition p,
                                          const RopeConfig& cfg) {
    validate_pool_config(cfg);
    if (static_cast<int>(x.size()) != cfg.dim)
        throw std::invalid_argument("vector length " + std::to_string(x.size()) +
                                    " does not match configured dim " + std::to_string(cfg.dim));
    const FrequencyPool pool = make_frequency_pool(cfg);
    const std::size_t half = x.size() / 2;
    std::vector<double> out(x.size());
    detail::rotate_pairs(x.subspan(0, half), p.x, pool.thetas, std::span(out).subspan(0, half));
    detail::rotate_pairs(x.subspan(half), p.y, pool.thetas, std::span(out).subspan(half));
    return out;
}

/// Precomputed spiral state: pool, direction set, and frequency assignment for
/// one config. Immutable after construction and safe to share across threads.
struct SpiralPlan {
    RopeConfig cfg;
    FrequencyPool pool;
    DirectionSet directions;
    FrequencyAssignment assignment;

    static SpiralPlan make(const RopeConfig& cfg) {
        validate_spiral_config(cfg);
        return {cfg, make_frequency_pool(cfg), make_direction_set(cfg.k_directions),
                assign_frequencies(cfg)};
    }
};

inline std::vector<double> apply_spiral(std::span<const double> x, GridPosition p,
                                        const SpiralPlan& plan) {
    const RopeConfig& cfg = plan.cfg;
    if (static_cast<int>(x.size()) != cfg.dim)
        throw std::invalid_argument("vector length " + std::to_string(x.size()) +
                                    " does not match configured dim " + std::to_string(cfg.dim));
    const int group_dim = cfg.dim / cfg.k_directions;
    const int group_pairs = group_dim / 2;
    std::vector<double> out(x.size());
    for (int k = 0; k < cfg.k_directions; ++k) {
        const double t_k = project_position(p, plan.directions.unit_vectors[k]);
        const auto& indices = plan.assignment.per_direction[k];
        const std::size_t base = static_cast<std::size_t>(k) * group_dim;
        for (int j = 0; j < group_pairs; ++j) {
            const double angle = t_k * plan.pool.thetas[indices[j]];
            const double c = std::cos(angle);
            const double s = std::sin(angle);
            const double a = x[base + 2 * j];
            const double b = x[base + 2 * j + 1];
            out[base + 2 * j] = a * c - b * s;
            out[base + 2 * j + 1] = a * s + b * c;
        }
    }
    return out;
}

/// Spiral rotary embedding: channel group k (a consecutive block of d/K
/// channels) is rotated by the projected position t_k(p) using the group's
/// assigned frequencies, pairs ordered by increasing frequency index.
inline std::vector<double> apply_spiral(std::span<const double> x, GridPosition p,
                                        const RopeConfig& cfg,
                                        const FrequencyAssignment& assignment) {
    validate_spiral_config(cfg);
    const int group_count = static_cast<int>(assignment.per_direction.size());
    if (group_count != cfg.k_directions)
        throw std::invalid_argument("assignment has " + std::to_string(group_count) +
                                    " direction lists but config expects " +
                                    std::to_string(cfg.k_directions));
    const int per_dir = cfg.dim / (2 * cfg.k_directions);
    for (const auto& list : assignment.per_direction)
        if (static_cast<int>(list.size()) != per_dir)
            throw std::invalid_argument("assignment list length " + std::to_string(list.size()) +
                                        " does not match dim/(2K) = " + std::to_string(per_dir));
    SpiralPlan plan{cfg, make_frequency_pool(cfg), make_direction_set(cfg.k_directions),
                    assignment};
    return apply_spiral(x, p, plan);
}

inline std::vector<double> apply_spiral(std::span<const double> x, GridPosition p,
                                        const RopeConfig& cfg) {
    return apply_spiral(x, p, SpiralPlan::make(cfg));
}

// Applies the selected variant at position p. The 1d variant rotates the full
// vector by the scalar position p.x with the d/2-entry sequence pool.
inline std::vector<double> apply_variant(std::span<const double> x, GridPosition p,
                                         Variant variant, const RopeConfig& cfg) {
    switch (variant) {
        case Variant::rope_1d: {
            const auto thetas = make_frequency_pool_1d(cfg.dim, cfg.theta_base, cfg.freq_scale);
            return apply_rope_1d(x, p.x, thetas);
        }
        case Variant::axial:
            return apply_axial_2d(x, p, cfg);
        case Variant::spiral:
            return apply_spiral(x, p, cfg);
    }
    throw std::invalid_argument("unknown variant");
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

/// Absolute discrepancy of the relative-position identity:
/// |<apply(q, p1), apply(k, p2)> - <apply(q, p1 - p2), apply(k, 0)>|.
/// Zero up to rounding for every variant because projections are linear in p.
inline double check_relative_identity(std::span<const double> q, std::span<const double> k,
                                      GridPosition p1, GridPosition p2, Variant variant,
                                      const RopeConfig& cfg) {
    const double lhs = dot(apply_variant(q, p1, variant, cfg), apply_variant(k, p2, variant, cfg));
    const double rhs = dot(apply_variant(q, p1 - p2, variant, cfg),
                           apply_variant(k, GridPosition{0.0, 0.0}, variant, cfg));
    return std::abs(lhs - rhs);
}

}  // namespace rope2d
