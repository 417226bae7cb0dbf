#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rope2d/config.hpp"
#include "rope2d/rope.hpp"

namespace rope2d {

/// Precomputed (cos, sin) factors for every grid position and rotation pair.
///
/// Entry layout matches the channel layout of the variant the table was built
/// for: rotation pair t covers channels (2t, 2t+1), and the angle stored at
/// pair t of position (row, col) is exactly the angle the direct formula uses
/// there. Positions are absolute — position (row, col) maps to coordinates
/// (x, y) = (col, row) — so a larger table restricted to a smaller grid's
/// index range is identical to the smaller table entry for entry.
///
/// Immutable after construction; safe to share across concurrent readers.
struct RotationTable {
    int grid_h = 0;
    int grid_w = 0;
    int dim = 0;
    Variant variant = Variant::spiral;
    std::vector<double> cosines;  // grid_h * grid_w * (dim/2), position-major
    std::vector<double> sines;

    int pairs() const { return dim / 2; }

    std::size_t entry_offset(int row, int col) const {
        return (static_cast<std::size_t>(row) * grid_w + col) * pairs();
    }
};

namespace detail {

// Angles for the d/2 rotation pairs of one position, in channel-pair order.
inline std::vector<double> pair_angles(GridPosition p, Variant variant, const RopeConfig& cfg,
                                       const FrequencyPool& pool, const DirectionSet& dirs,
                                       const FrequencyAssignment& assignment,
                                       const std::vector<double>& thetas_1d) {
    std::vector<double> angles(cfg.dim / 2);
    switch (variant) {
        case Variant::rope_1d:
            for (int t = 0; t < cfg.dim / 2; ++t) angles[t] = p.x * thetas_1d[t];
            break;
        case Variant::axial: {
            const int quarter = cfg.dim / 4;
            for (int t = 0; t < quarter; ++t) {
                angles[t] = p.x * pool.thetas[t];
                angles[quarter + t] = p.y * pool.thetas[t];
            }
            break;
        }
        case Variant::spiral: {
            const int group_pairs = cfg.dim / (2 * cfg.k_directions);
            for (int k = 0; k < cfg.k_directions; ++k) {
                const double t_k = project_position(p, dirs.unit_vectors[k]);
                for (int j = 0; j < group_pairs; ++j)
                    angles[k * group_pairs + j] = t_k * pool.thetas[assignment.per_direction[k][j]];
            }
            break;
        }
    }
    return angles;
}

}  // namespace detail

/// Builds the rotation table for an h x w grid. Row r, column c corresponds
/// to position (x, y) = (c, r).
inline RotationTable precompute_table(const RopeConfig& cfg, int h, int w,
                                      Variant variant = Variant::spiral) {
    if (h < 1 || w < 1)
        throw std::invalid_argument("grid dimensions must be >= 1 (got " + std::to_string(h) +
                                    "x" + std::to_string(w) + ")");
    FrequencyPool pool;
    DirectionSet dirs;
    FrequencyAssignment assignment;
    std::vector<double> thetas_1d;
    switch (variant) {
        case Variant::rope_1d:
            thetas_1d = make_frequency_pool_1d(cfg.dim, cfg.theta_base, cfg.freq_scale);
            break;
        case Variant::axial:
            validate_pool_config(cfg);
            pool = make_frequency_pool(cfg);
            break;
        case Variant::spiral:
            validate_spiral_config(cfg);
            pool = make_frequency_pool(cfg);
            dirs = make_direction_set(cfg.k_directions);
            assignment = assign_frequencies(cfg);
            break;
    }

    RotationTable table;
    table.grid_h = h;
    table.grid_w = w;
    table.dim = cfg.dim;
    table.variant = variant;
    table.cosines.resize(static_cast<std::size_t>(h) * w * (cfg.dim / 2));
    table.sines.resize(table.cosines.size());
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const GridPosition p{static_cast<double>(c), static_cast<double>(r)};
            const auto angles =
                detail::pair_angles(p, variant, cfg, pool, dirs, assignment, thetas_1d);
            const std::size_t base = table.entry_offset(r, c);
            for (int t = 0; t < cfg.dim / 2; ++t) {
                table.cosines[base + t] = std::cos(angles[t]);
                table.sines[base + t] = std::sin(angles[t]);
            }
        }
    }
    return table;
}

/// Allocation-free rotation for hot loops (bench, grid sweeps). No bounds
/// checks; callers validate once outside the loop.
inline void apply_with_table_unchecked(std::span<const double> x, int row, int col,
                                       const RotationTable& table, std::span<double> out) {
    const std::size_t base = table.entry_offset(row, col);
    const double* cs = table.cosines.data() + base;
    const double* sn = table.sines.data() + base;
    for (int t = 0; t < table.pairs(); ++t) {
        const double a = x[2 * t];
        const double b = x[2 * t + 1];
        out[2 * t] = a * cs[t] - b * sn[t];
        out[2 * t + 1] = a * sn[t] + b * cs[t];
    }
}

/// Rotates x with the precomputed factors at grid index (row, col). Matches
/// the direct formula for the table's variant bit for bit (same angle values,
/// same operation order).
inline std::vector<double> apply_with_table(std::span<const double> x, int row, int col,
                                            const RotationTable& table) {
    if (row < 0 || row >= table.grid_h || col < 0 || col >= table.grid_w)
        throw std::out_of_range("grid index (" + std::to_string(row) + "," + std::to_string(col) +
                                ") outside table extent " + std::to_string(table.grid_h) + "x" +
                                std::to_string(table.grid_w));
    if (static_cast<int>(x.size()) != table.dim)
        throw std::invalid_argument("vector length " + std::to_string(x.size()) +
                                    " does not match table dim " + std::to_string(table.dim));
    std::vector<double> out(x.size());
    apply_with_table_unchecked(x, row, col, table, out);
    return out;
}

}  // namespace rope2d
