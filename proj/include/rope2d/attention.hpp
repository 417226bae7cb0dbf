#pragma once

#include <chrono>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rope2d/config.hpp"
#include "rope2d/rng.hpp"
#include "rope2d/rope.hpp"
#include "rope2d/table.hpp"

namespace rope2d {

enum class PeKind { none, ape_sinusoidal, axial, spiral };

inline const char* pe_kind_name(PeKind k) {
    switch (k) {
        case PeKind::none: return "none";
        case PeKind::ape_sinusoidal: return "ape";
        case PeKind::axial: return "axial";
        case PeKind::spiral: return "spiral";
    }
    return "?";
}

/// Minimal multi-head attention setup: enough to compute pre-softmax logits
/// q.k/sqrt(head_dim) with a pluggable positional encoding, nothing more.
struct AttentionConfig {
    int heads = 4;
    int head_dim = 64;
    PeKind pe = PeKind::spiral;
    RopeConfig rope;  // rope.dim must equal head_dim for the rotary kinds
    // Where the sinusoidal embedding is added: to the tokens before the q/k
    // projection (false, the default) or to q/k after it (true). Both are
    // absolute encodings; the flag only changes which space the offset lives in.
    bool ape_after_projection = false;

    int model_dim() const { return heads * head_dim; }
};

/// H x W grid of token embeddings plus the absolute position of cell (0,0).
/// Cell (row, col) sits at coordinates (origin_x + col, origin_y + row).
struct TokenGrid {
    int grid_h = 0;
    int grid_w = 0;
    int model_dim = 0;
    double origin_x = 0.0;
    double origin_y = 0.0;
    std::vector<double> values;  // grid_h * grid_w * model_dim, row-major tokens

    int token_count() const { return grid_h * grid_w; }

    std::span<const double> token(int index) const {
        return {values.data() + static_cast<std::size_t>(index) * model_dim,
                static_cast<std::size_t>(model_dim)};
    }

    GridPosition position(int index) const {
        return {origin_x + index % grid_w, origin_y + index / grid_w};
    }
};

/// Dense q/k projection weights, row-major out_dim x in_dim.
struct QkWeights {
    int out_dim = 0;
    int in_dim = 0;
    std::vector<double> wq;
    std::vector<double> wk;
};

/// Pre-softmax attention logits, one (T x T) row-major matrix per head.
struct LogitSet {
    int heads = 0;
    int tokens = 0;
    std::vector<std::vector<double>> per_head;
};

inline TokenGrid make_random_grid(int h, int w, int model_dim, Xorshift64Star& rng) {
    if (h < 1 || w < 1 || model_dim < 1)
        throw std::invalid_argument("grid must have positive extent and model dim");
    TokenGrid grid;
    grid.grid_h = h;
    grid.grid_w = w;
    grid.model_dim = model_dim;
    grid.values.resize(static_cast<std::size_t>(h) * w * model_dim);
    for (auto& v : grid.values) v = rng.uniform_pm1();
    return grid;
}

inline QkWeights make_random_weights(int out_dim, int in_dim, Xorshift64Star& rng) {
    if (out_dim < 1 || in_dim < 1)
        throw std::invalid_argument("weight dimensions must be positive");
    QkWeights w;
    w.out_dim = out_dim;
    w.in_dim = in_dim;
    w.wq.resize(static_cast<std::size_t>(out_dim) * in_dim);
    w.wk.resize(w.wq.size());
    for (auto& v : w.wq) v = rng.uniform_pm1();
    for (auto& v : w.wk) v = rng.uniform_pm1();
    return w;
}

/// Fixed 2D sinusoidal embedding: the first dims/2 channels encode x, the
/// second dims/2 encode y; within each half, channel pair i carries
/// (sin(c * w_i), cos(c * w_i)) with w_i = 10000^(-2i / (dims/2)).
inline std::vector<double> sinusoidal_ape(int dims, double x, double y) {
    if (dims <= 0 || dims % 4 != 0)
        throw std::invalid_argument("sinusoidal embedding needs dims divisible by 4 (got " +
                                    std::to_string(dims) + ")");
    const int half = dims / 2;
    std::vector<double> out(dims);
    for (int i = 0; i < half / 2; ++i) {
        const double omega = std::pow(10000.0, -2.0 * i / half);
        out[2 * i] = std::sin(x * omega);
        out[2 * i + 1] = std::cos(x * omega);
        out[half + 2 * i] = std::sin(y * omega);
        out[half + 2 * i + 1] = std::cos(y * omega);
    }
    return out;
}

namespace detail {

// Per-head rotary application with state built once per logits call.
struct HeadRotator {
    PeKind kind = PeKind::none;
    RopeConfig cfg;
    FrequencyPool pool;       // axial
    SpiralPlan plan;          // spiral

    static HeadRotator make(PeKind kind, const RopeConfig& cfg) {
        HeadRotator rot;
        rot.kind = kind;
        rot.cfg = cfg;
        if (kind == PeKind::axial) {
            validate_pool_config(cfg);
            rot.pool = make_frequency_pool(cfg);
        } else if (kind == PeKind::spiral) {
            rot.plan = SpiralPlan::make(cfg);
        }
        return rot;
    }

    void rotate_inplace(std::span<double> x, GridPosition p) const {
        if (kind == PeKind::axial) {
            const std::size_t half = x.size() / 2;
            std::vector<double> tmp(x.begin(), x.end());
            rotate_pairs(std::span<const double>(tmp).subspan(0, half), p.x, pool.thetas,
                         x.subspan(0, half));
            rotate_pairs(std::span<const double>(tmp).subspan(half), p.y, pool.thetas,
                         x.subspan(half));
        } else if (kind == PeKind::spiral) {
            const auto rotated = apply_spiral(x, p, plan);
            std::copy(rotated.begin(), rotated.end(), x.begin());
        }
    }
};

inline void matvec(const std::vector<double>& m, int out_dim, int in_dim,
                   std::span<const double> x, std::span<double> out) {
    for (int r = 0; r < out_dim; ++r) {
        const double* row = m.data() + static_cast<std::size_t>(r) * in_dim;
        double acc = 0.0;
        for (int c = 0; c < in_dim; ++c) acc += row[c] * x[c];
        out[r] = acc;
    }
}

}  // namespace detail

/// Full-grid pre-softmax logits per head. The configured positional encoding
/// is applied to q and k only; pe = none yields position-free logits.
inline LogitSet attention_logits(const TokenGrid& tokens, const AttentionConfig& cfg,
                                 const QkWeights& weights) {
    if (cfg.heads < 1 || cfg.head_dim < 1)
        throw std::invalid_argument("heads and head_dim must be positive");
    if (tokens.model_dim != weights.in_dim)
        throw std::invalid_argument("token model dim " + std::to_string(tokens.model_dim) +
                                    " does not match weight input dim " +
                                    std::to_string(weights.in_dim));
    if (weights.out_dim != cfg.model_dim())
        throw std::invalid_argument("weight output dim " + std::to_string(weights.out_dim) +
                                    " does not match heads*head_dim = " +
                                    std::to_string(cfg.model_dim()));
    const bool rotary = cfg.pe == PeKind::axial || cfg.pe == PeKind::spiral;
    if (rotary && cfg.rope.dim != cfg.head_dim)
        throw std::invalid_argument("rope dim " + std::to_string(cfg.rope.dim) +
                                    " must equal head_dim " + std::to_string(cfg.head_dim));
    detail::HeadRotator rotator;
    if (rotary) rotator = detail::HeadRotator::make(cfg.pe, cfg.rope);

    const int T = tokens.token_count();
    const int D = cfg.model_dim();
    std::vector<double> q(static_cast<std::size_t>(T) * D), k(q.size());
    std::vector<double> staged;  // token after the optional pre-projection APE
    for (int t = 0; t < T; ++t) {
        std::span<const double> tok = tokens.token(t);
        const GridPosition pos = tokens.position(t);
        if (cfg.pe == PeKind::ape_sinusoidal && !cfg.ape_after_projection) {
            const auto ape = sinusoidal_ape(tokens.model_dim, pos.x, pos.y);
            staged.assign(tok.begin(), tok.end());
            for (int i = 0; i < tokens.model_dim; ++i) staged[i] += ape[i];
            tok = staged;
        }
        std::span<double> qt(q.data() + static_cast<std::size_t>(t) * D, D);
        std::span<double> kt(k.data() + static_cast<std::size_t>(t) * D, D);
        detail::matvec(weights.wq, D, weights.in_dim, tok, qt);
        detail::matvec(weights.wk, D, weights.in_dim, tok, kt);
        if (cfg.pe == PeKind::ape_sinusoidal && cfg.ape_after_projection) {
            const auto ape = sinusoidal_ape(D, pos.x, pos.y);
            for (int i = 0; i < D; ++i) {
                qt[i] += ape[i];
                kt[i] += ape[i];
            }
        }
        if (rotary) {
            for (int h = 0; h < cfg.heads; ++h) {
                rotator.rotate_inplace(qt.subspan(h * cfg.head_dim, cfg.head_dim), pos);
                rotator.rotate_inplace(kt.subspan(h * cfg.head_dim, cfg.head_dim), pos);
            }
        }
    }

    LogitSet logits;
    logits.heads = cfg.heads;
    logits.tokens = T;
    logits.per_head.assign(cfg.heads, std::vector<double>(static_cast<std::size_t>(T) * T));
    const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.head_dim));
    for (int h = 0; h < cfg.heads; ++h) {
        auto& m = logits.per_head[h];
        const int off = h * cfg.head_dim;
        for (int i = 0; i < T; ++i) {
            const double* qi = q.data() + static_cast<std::size_t>(i) * D + off;
            for (int j = 0; j < T; ++j) {
                const double* kj = k.data() + static_cast<std::size_t>(j) * D + off;
                double acc = 0.0;
                for (int c = 0; c < cfg.head_dim; ++c) acc += qi[c] * kj[c];
                m[static_cast<std::size_t>(i) * T + j] = acc * scale;
            }
        }
    }
    return logits;
}

inline double max_abs_difference(const LogitSet& a, const LogitSet& b) {
    if (a.heads != b.heads || a.tokens != b.tokens)
        throw std::invalid_argument("logit sets have different shapes");
    double m = 0.0;
    for (int h = 0; h < a.heads; ++h)
        for (std::size_t i = 0; i < a.per_head[h].size(); ++i)
            m = std::max(m, std::abs(a.per_head[h][i] - b.per_head[h][i]));
    return m;
}

/// Max elementwise logit change when the whole grid is translated by
/// (dx, dy). Zero (within rounding) for the rotary kinds, which see only
/// relative positions; generically large for absolute encodings.
inline double translation_test(const AttentionConfig& cfg, const TokenGrid& tokens,
                               const QkWeights& weights, double dx, double dy) {
    const LogitSet base = attention_logits(tokens, cfg, weights);
    TokenGrid shifted = tokens;
    shifted.origin_x += dx;
    shifted.origin_y += dy;
    const LogitSet moved = attention_logits(shifted, cfg, weights);
    return max_abs_difference(base, moved);
}

struct ExtrapolationReport {
    double max_abs_diff = 0.0;
    int positions_checked = 0;
};

/// Builds rotation tables for a small and a large grid and rotates the same
/// random vectors at every shared position with both. Positions are absolute,
/// so the results must agree; the report carries the worst deviation.
inline ExtrapolationReport extrapolation_test(const RopeConfig& cfg, Variant variant, int small_h,
                                              int small_w, int large_h, int large_w,
                                              std::uint64_t seed) {
    if (small_h > large_h || small_w > large_w)
        throw std::invalid_argument("small grid must embed in the large grid");
    const RotationTable small = precompute_table(cfg, small_h, small_w, variant);
    const RotationTable large = precompute_table(cfg, large_h, large_w, variant);
    Xorshift64Star rng(seed);
    std::vector<double> x(cfg.dim);
    ExtrapolationReport report;
    for (int r = 0; r < small_h; ++r) {
        for (int c = 0; c < small_w; ++c) {
            for (auto& v : x) v = rng.uniform_pm1();
            const auto a = apply_with_table(x, r, c, small);
            const auto b = apply_with_table(x, r, c, large);
            for (int i = 0; i < cfg.dim; ++i)
                report.max_abs_diff = std::max(report.max_abs_diff, std::abs(a[i] - b[i]));
            ++report.positions_checked;
        }
    }
    return report;
}

struct BenchReport {
    int iterations = 0;
    int rotation_pairs = 0;
    double axial_mean_us = 0.0;
    double axial_stddev_us = 0.0;
    double spiral_mean_us = 0.0;
    double spiral_stddev_us = 0.0;
    double ratio = 0.0;  // spiral mean / axial mean; 0 when nothing was timed
    double checksum = 0.0;
};

namespace detail {

inline double mean_of(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    double acc = 0.0;
    for (double x : xs) acc += x;
    return acc / static_cast<double>(xs.size());
}

inline double stddev_of(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double acc = 0.0;
    for (double x : xs) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

}  // namespace detail

/// Times table-based rotation of every token on an h x w grid, axial vs
/// spiral, interleaving the two so clock drift hits both equally. Both tables
/// come from the same config, so the operation counts are identical by
/// construction; the interesting output is the mean-time ratio.
inline BenchReport overhead_bench(const RopeConfig& cfg, int grid_h, int grid_w, int iterations,
                                  std::uint64_t seed) {
    if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");
    validate_spiral_config(cfg);
    const RotationTable axial = precompute_table(cfg, grid_h, grid_w, Variant::axial);
    const RotationTable spiral = precompute_table(cfg, grid_h, grid_w, Variant::spiral);
    if (axial.pairs() != spiral.pairs())
        throw std::invalid_argument("rotation-pair counts differ between variants");

    BenchReport report;
    report.iterations = iterations;
    report.rotation_pairs = axial.pairs();
    if (iterations == 0) return report;

    Xorshift64Star rng(seed);
    const int T = grid_h * grid_w;
    std::vector<double> tokens(static_cast<std::size_t>(T) * cfg.dim);
    for (auto& v : tokens) v = rng.uniform_pm1();
    std::vector<double> out(cfg.dim);

    auto run_grid = [&](const RotationTable& table) {
        double acc = 0.0;
        for (int r = 0; r < grid_h; ++r)
            for (int c = 0; c < grid_w; ++c) {
                const std::size_t idx = (static_cast<std::size_t>(r) * grid_w + c) * cfg.dim;
                apply_with_table_unchecked(
                    std::span<const double>(tokens.data() + idx, cfg.dim), r, c, table, out);
                acc += out[0] + out[cfg.dim - 1];
            }
        return acc;
    };

    using clock = std::chrono::steady_clock;
    const int warmup = std::min(iterations, 3);
    for (int i = 0; i < warmup; ++i) report.checksum += run_grid(axial) + run_grid(spiral);

    std::vector<double> axial_us, spiral_us;
    axial_us.reserve(iterations);
    spiral_us.reserve(iterations);
    for (int i = 0; i < iterations; ++i) {
        auto t0 = clock::now();
        report.checksum += run_grid(axial);
        auto t1 = clock::now();
        report.checksum += run_grid(spiral);
        auto t2 = clock::now();
        axial_us.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
        spiral_us.push_back(std::chrono::duration<double, std::micro>(t2 - t1).count());
    }
    report.axial_mean_us = detail::mean_of(axial_us);
    report.axial_stddev_us = detail::stddev_of(axial_us, report.axial_mean_us);
    report.spiral_mean_us = detail::mean_of(spiral_us);
    report.spiral_stddev_us = detail::stddev_of(spiral_us, report.spiral_mean_us);
    report.ratio = report.axial_mean_us > 0.0 ? report.spiral_mean_us / report.axial_mean_us : 0.0;
    return report;
}

/// Row-wise stable softmax of a T x T matrix.
inline std::vector<double> softmax_rows(const std::vector<double>& logits, int n) {
    if (logits.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("softmax expects an n x n matrix");
    std::vector<double> out(logits.size());
    for (int r = 0; r < n; ++r) {
        const double* row = logits.data() + static_cast<std::size_t>(r) * n;
        double* dst = out.data() + static_cast<std::size_t>(r) * n;
        double mx = row[0];
        for (int c = 1; c < n; ++c) mx = std::max(mx, row[c]);
        double sum = 0.0;
        for (int c = 0; c < n; ++c) {
            dst[c] = std::exp(row[c] - mx);
            sum += dst[c];
        }
        for (int c = 0; c < n; ++c) dst[c] /= sum;
    }
    return out;
}

}  // namespace rope2d
