#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rope2d/attention.hpp"
#include "rope2d/config.hpp"
#include "rope2d/fourier.hpp"
#include "rope2d/rng.hpp"
#include "rope2d/rope.hpp"
#include "rope2d/table.hpp"

namespace rope2d {

/// One measured invariant. `value` is the observed discrepancy (or count of
/// violations); `pass` compares it against `limit` — at most `limit` for
/// ordinary invariants, strictly above `limit` for negative controls.
struct InvariantCheck {
    std::string suite;
    std::string name;
    double value = 0.0;
    double limit = 0.0;
    bool require_above = false;
    bool pass = false;
};

namespace detail {

inline InvariantCheck check_below(const std::string& suite, const std::string& name, double value,
                                  double limit) {
    return {suite, name, value, limit, false, value <= limit};
}

inline InvariantCheck check_above(const std::string& suite, const std::string& name, double value,
                                  double limit) {
    return {suite, name, value, limit, true, value > limit};
}

inline std::vector<double> random_vector(int dim, Xorshift64Star& rng) {
    std::vector<double> x(dim);
    for (auto& v : x) v = rng.uniform_pm1();
    return x;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace detail

inline std::vector<InvariantCheck> verify_pool(int /*trials*/, std::uint64_t /*seed*/) {
    std::vector<InvariantCheck> out;
    double worst_theta0 = 0.0, worst_monotone = 0.0;
    int length_violations = 0;
    for (double scale : {1.0, 1.5}) {
        for (int dim : {8, 32, 64, 1024}) {
            const RopeConfig cfg{dim, 2, 10000.0, scale};
            const FrequencyPool pool = make_frequency_pool(cfg);
            if (static_cast<int>(pool.thetas.size()) != dim / 4) ++length_violations;
            worst_theta0 = std::max(worst_theta0, std::abs(pool.thetas[0] - scale));
            for (std::size_t t = 1; t < pool.thetas.size(); ++t)
                if (pool.thetas[t] >= pool.thetas[t - 1]) worst_monotone += 1.0;
        }
    }
    out.push_back(detail::check_below("pool", "length is dim/4", length_violations, 0));
    out.push_back(detail::check_below("pool", "theta0 equals freq_scale exactly", worst_theta0, 0.0));
    out.push_back(detail::check_below("pool", "strictly decreasing", worst_monotone, 0));
    const FrequencyPool p32 = make_frequency_pool({32, 2, 10000.0, 1.0});
    out.push_back(detail::check_below("pool", "theta7 closed form (dim=32)",
                                      std::abs(p32.thetas[7] - 3.1622776601683794e-4), 1e-15));
    const auto onedim = make_frequency_pool_1d(64);
    out.push_back(detail::check_below("pool", "1d pool has dim/2 entries",
                                      std::abs(static_cast<int>(onedim.size()) - 32), 0));
    return out;
}

inline std::vector<InvariantCheck> verify_directions(int /*trials*/, std::uint64_t /*seed*/) {
    std::vector<InvariantCheck> out;
    double worst_spacing = 0.0, worst_norm = 0.0, worst_first = 0.0;
    for (int k : {2, 4, 6, 8, 16}) {
        const DirectionSet set = make_direction_set(k);
        worst_first = std::max(worst_first, std::abs(set.angles[0]));
        for (int i = 1; i < k; ++i)
            worst_spacing = std::max(
                worst_spacing, std::abs(set.angles[i] - set.angles[i - 1] - std::numbers::pi / k));
        for (const auto& u : set.unit_vectors)
            worst_norm = std::max(worst_norm, std::abs(std::hypot(u[0], u[1]) - 1.0));
    }
    out.push_back(detail::check_below("directions", "first angle is 0", worst_first, 0.0));
    out.push_back(detail::check_below("directions", "uniform spacing pi/K", worst_spacing, 1e-12));
    out.push_back(detail::check_below("directions", "unit norms", worst_norm, 1e-12));
    return out;
}

inline std::vector<InvariantCheck> verify_assignment(int /*trials*/, std::uint64_t /*seed*/) {
    std::vector<InvariantCheck> out;
    int violations = 0;
    for (auto [dim, k] : std::vector<std::pair<int, int>>{{32, 4}, {32, 2}, {64, 8}, {64, 16},
                                                          {32, 8}, {48, 6}, {1024, 8}}) {
        const RopeConfig cfg{dim, k, 10000.0, 1.0};
        const FrequencyAssignment a = assign_frequencies(cfg);
        std::vector<int> uses(dim / 4, 0);
        for (int d = 0; d < k; ++d) {
            if (static_cast<int>(a.per_direction[d].size()) != dim / (2 * k)) ++violations;
            for (int idx : a.per_direction[d]) ++uses[idx];
        }
        for (int u : uses)
            if (u != 2) ++violations;
        for (int d = 0; d < k / 2; ++d)
            if (a.per_direction[d] != a.per_direction[d + k / 2]) ++violations;
        // Lists are adjacent pairs (2j, 2j+1) with pair index j congruent to
        // the direction-pair index mod K/2, increasing.
        for (int d = 0; d < k / 2; ++d) {
            const auto& list = a.per_direction[d];
            int expected_j = d;
            for (std::size_t i = 0; i + 1 < list.size(); i += 2) {
                if (list[i] != 2 * expected_j || list[i + 1] != 2 * expected_j + 1) ++violations;
                expected_j += k / 2;
            }
        }
    }
    out.push_back(detail::check_below("assignment", "coverage, sharing, and pair rule", violations, 0));
    const FrequencyAssignment ex = assign_frequencies({32, 4, 10000.0, 1.0});
    const bool worked = ex.per_direction[0] == std::vector<int>{0, 1, 4, 5} &&
                        ex.per_direction[1] == std::vector<int>{2, 3, 6, 7} &&
                        ex.per_direction[2] == std::vector<int>{0, 1, 4, 5} &&
                        ex.per_direction[3] == std::vector<int>{2, 3, 6, 7};
    out.push_back(detail::check_below("assignment", "K=4 dim=32 reference layout", worked ? 0 : 1, 0));
    return out;
}

inline std::vector<InvariantCheck> verify_isometry(int trials, std::uint64_t seed) {
    Xorshift64Star rng(seed);
    double worst = 0.0;
    const int n = std::max(10, trials / 10);
    for (int i = 0; i < n; ++i) {
        const RopeConfig cfg{64, (i % 2) ? 8 : 16, 10000.0, 1.0};
        const auto x = detail::random_vector(cfg.dim, rng);
        const GridPosition p{rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0)};
        for (Variant v : {Variant::rope_1d, Variant::axial, Variant::spiral}) {
            const auto y = apply_variant(x, p, v, cfg);
            worst = std::max(worst, std::abs(norm2(y) - norm2(x)));
        }
    }
    return {detail::check_below("isometry", "norm preserved across variants", worst, 1e-12)};
}

inline std::vector<InvariantCheck> verify_origin(int trials, std::uint64_t seed) {
    Xorshift64Star rng(seed);
    double worst = 0.0;
    const int n = std::max(10, trials / 100);
    for (int i = 0; i < n; ++i) {
        const RopeConfig cfg{64, 8, 10000.0, 1.0};
        const auto x = detail::random_vector(cfg.dim, rng);
        for (Variant v : {Variant::rope_1d, Variant::axial, Variant::spiral})
            worst = std::max(worst,
                             detail::max_abs_diff(apply_variant(x, {0.0, 0.0}, v, cfg), x));
    }
    return {detail::check_below("origin", "identity at position (0,0)", worst, 0.0)};
}

inline std::vector<InvariantCheck> verify_relative(int trials, std::uint64_t seed) {
    Xorshift64Star rng(seed);
    double worst = 0.0;
    struct Case { Variant variant; int k; };
    const Case cases[] = {{Variant::rope_1d, 2}, {Variant::axial, 2},    {Variant::spiral, 2},
                          {Variant::spiral, 4},  {Variant::spiral, 8},   {Variant::spiral, 16}};
    for (const Case& c : cases) {
        const RopeConfig cfg{64, c.k, 10000.0, 1.0};
        for (int i = 0; i < trials; ++i) {
            const auto q = detail::random_vector(cfg.dim, rng);
            const auto k = detail::random_vector(cfg.dim, rng);
            const GridPosition p1{rng.uniform(-32.0, 32.0), rng.uniform(-32.0, 32.0)};
            const GridPosition p2{rng.uniform(-32.0, 32.0), rng.uniform(-32.0, 32.0)};
            worst = std::max(worst, check_relative_identity(q, k, p1, p2, c.variant, cfg));
        }
    }
    return {detail::check_below("relative", "dot products depend on p1-p2 only", worst, 1e-9)};
}

inline std::vector<InvariantCheck> verify_degeneracy(int trials, std::uint64_t seed) {
    Xorshift64Star rng(seed);
    double worst = 0.0;
    const RopeConfig cfg{64, 2, 10000.0, 1.0};
    for (int i = 0; i < std::max(10, trials); ++i) {
        const auto x = detail::random_vector(cfg.dim, rng);
        const GridPosition p{rng.uniform(-32.0, 32.0), rng.uniform(-32.0, 32.0)};
        worst = std::max(worst, detail::max_abs_diff(apply_spiral(x, p, cfg),
                                                     apply_axial_2d(x, p, cfg)));
    }
    return {detail::check_below("degeneracy", "spiral K=2 equals axial", worst, 1e-12)};
}

inline std::vector<InvariantCheck> verify_composition(int trials, std::uint64_t seed) {
    Xorshift64Star rng(seed);
    double worst = 0.0;
    const int n = std::max(10, trials / 10);
    for (int i = 0; i < n; ++i) {
        const RopeConfig cfg{64, 8, 10000.0, 1.0};
        const auto x = detail::random_vector(cfg.dim, rng);
        const GridPosition p{rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0)};
        for (Variant v : {Variant::rope_1d, Variant::axial, Variant::spiral}) {
            const auto there = apply_variant(x, p, v, cfg);
            const auto back = apply_variant(there, -p, v, cfg);
            worst = std::max(worst, detail::max_abs_diff(back, x));
        }
    }
    return {detail::check_below("composition", "rotation at -p undoes rotation at p", worst, 1e-11)};
}

inline std::vector<InvariantCheck> verify_parity(int /*trials*/, std::uint64_t /*seed*/) {
    int violations = 0;
    for (auto [dim, k] : std::vector<std::pair<int, int>>{{32, 4}, {64, 8}, {64, 16}, {1024, 8}}) {
        const RopeConfig cfg{dim, k, 10000.0, 1.0};
        // Axial and spiral must rotate the same number of pairs over the same
        // number of distinct frequencies.
        if (rotation_pair_count(cfg) != dim / 2) ++violations;
        const FrequencyAssignment a = assign_frequencies(cfg);
        int pairs = 0;
        std::set<int> distinct;
        for (const auto& list : a.per_direction) {
            pairs += static_cast<int>(list.size());
            distinct.insert(list.begin(), list.end());
        }
        if (pairs != dim / 2) ++violations;  // total index slots == channel pairs
        if (static_cast<int>(distinct.size()) != dim / 4) ++violations;
    }
    return {detail::check_below("parity", "d/2 rotation pairs over d/4 frequencies", violations, 0)};
}

inline std::vector<InvariantCheck> verify_table(int trials, std::uint64_t seed) {
    std::vector<InvariantCheck> out;
    Xorshift64Star rng(seed);
    const RopeConfig cfg{64, 8, 10000.0, 1.0};
    const RotationTable table = precompute_table(cfg, 16, 16, Variant::spiral);
    const SpiralPlan plan = SpiralPlan::make(cfg);
    double worst = 0.0;
    for (int i = 0; i < std::max(100, trials); ++i) {
        const auto x = detail::random_vector(cfg.dim, rng);
        const int r = static_cast<int>(rng.uniform_int(0, 15));
        const int c = static_cast<int>(rng.uniform_int(0, 15));
        worst = std::max(
            worst, detail::max_abs_diff(apply_with_table(x, r, c, table),
                                        apply_spiral(x, {double(c), double(r)}, plan)));
    }
    out.push_back(detail::check_below("table", "table matches direct formula", worst, 1e-12));
    double worst_unit = 0.0;
    for (std::size_t i = 0; i < table.cosines.size(); ++i)
        worst_unit = std::max(worst_unit, std::abs(table.cosines[i] * table.cosines[i] +
                                                   table.sines[i] * table.sines[i] - 1.0));
    out.push_back(detail::check_below("table", "cos^2 + sin^2 == 1", worst_unit, 1e-12));
    double worst_origin = 0.0;
    for (int t = 0; t < table.pairs(); ++t) {
        worst_origin = std::max(worst_origin, std::abs(table.cosines[t] - 1.0));
        worst_origin = std::max(worst_origin, std::abs(table.sines[t]));
    }
    out.push_back(detail::check_below("table", "identity entries at (0,0)", worst_origin, 0.0));
    return out;
}

inline std::vector<InvariantCheck> verify_extrapolation(int /*trials*/, std::uint64_t seed) {
    double worst = 0.0;
    for (Variant v : {Variant::axial, Variant::spiral}) {
        const RopeConfig cfg{64, 8, 10000.0, 1.0};
        worst = std::max(worst, extrapolation_test(cfg, v, 9, 9, 32, 32, seed).max_abs_diff);
        worst = std::max(worst, extrapolation_test(cfg, v, 14, 14, 32, 32, seed + 1).max_abs_diff);
    }
    return {detail::check_below("extrapolation", "tables agree on shared sub-grids", worst, 1e-12)};
}

inline std::vector<InvariantCheck> verify_fourier(int /*trials*/, std::uint64_t seed) {
    std::vector<InvariantCheck> out;
    Xorshift64Star rng(seed);

    RealImage img{16, {}};
    img.pixels.resize(256);
    for (auto& v : img.pixels) v = rng.uniform_pm1();
    const Spectrum round = idft2d(dft2d(img));
    double worst_rt = max_abs_imag(round);
    const RealImage back = real_part(round);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        worst_rt = std::max(worst_rt, std::abs(back.pixels[i] - img.pixels[i]));
    out.push_back(detail::check_below("fourier", "transform round-trip", worst_rt, 1e-9));

    const RopeConfig cfg{1024, 8, 10000.0, 1.0};
    const auto axial_mask = build_mask(support_points(Variant::axial, cfg), 64).mask;
    const auto spiral_mask = build_mask(support_points(Variant::spiral, cfg), 64).mask;
    int off_axis = 0;
    for (const auto& [r, c] : axial_mask.kept_bins())
        if (r != 0 && c != 0) ++off_axis;
    out.push_back(detail::check_below("fourier", "axial support on frequency axes", off_axis, 0));

    const BinaryImage point = make_point_image(64);
    const auto rec_axial = reconstruct(point, axial_mask);
    const auto rec_spiral = reconstruct(point, spiral_mask);
    out.push_back(detail::check_below("fourier", "masked reconstruction stays real",
                                      std::max(rec_axial.max_imag, rec_spiral.max_imag), 1e-9));

    // Growing a mask can only push the reconstruction closer to the original.
    SpectrumMask grown = axial_mask;
    for (const auto& [r, c] : spiral_mask.kept_bins())
        grown.kept[static_cast<std::size_t>(r) * 64 + c] = 1;
    const double mse_small = mean_squared_error(point, rec_axial.image);
    const double mse_grown = mean_squared_error(point, reconstruct(point, grown).image);
    out.push_back(detail::check_below("fourier", "adding bins never raises mse",
                                      mse_grown - mse_small, 1e-15));
    return out;
}

inline std::vector<InvariantCheck> verify_translation(int trials, std::uint64_t seed) {
    std::vector<InvariantCheck> out;
    Xorshift64Star rng(seed);
    AttentionConfig cfg;
    cfg.heads = 2;
    cfg.head_dim = 32;
    cfg.rope = RopeConfig{32, 8, 10000.0, 1.0};
    const TokenGrid tokens = make_random_grid(6, 6, cfg.model_dim(), rng);
    const QkWeights weights = make_random_weights(cfg.model_dim(), cfg.model_dim(), rng);
    const int n = std::clamp(trials / 50, 3, 20);
    double worst_rope = 0.0, ape_control = 0.0;
    for (int i = 0; i < n; ++i) {
        const double dx = std::floor(rng.uniform(-8.0, 9.0));
        const double dy = std::floor(rng.uniform(-8.0, 9.0));
        for (PeKind kind : {PeKind::axial, PeKind::spiral}) {
            cfg.pe = kind;
            worst_rope = std::max(worst_rope, translation_test(cfg, tokens, weights, dx, dy));
        }
        if (dx != 0.0 || dy != 0.0) {
            cfg.pe = PeKind::ape_sinusoidal;
            ape_control = std::max(ape_control, translation_test(cfg, tokens, weights, dx, dy));
        }
    }
    out.push_back(detail::check_below("translation", "rotary logits shift-invariant", worst_rope, 1e-8));
    out.push_back(detail::check_above("translation", "sinusoidal control moves", ape_control, 1e-3));
    return out;
}

inline std::vector<InvariantCheck> verify_softmax(int /*trials*/, std::uint64_t seed) {
    Xorshift64Star rng(seed);
    AttentionConfig cfg;
    cfg.heads = 2;
    cfg.head_dim = 32;
    cfg.pe = PeKind::spiral;
    cfg.rope = RopeConfig{32, 8, 10000.0, 1.0};
    const TokenGrid tokens = make_random_grid(4, 4, cfg.model_dim(), rng);
    const QkWeights weights = make_random_weights(cfg.model_dim(), cfg.model_dim(), rng);
    const LogitSet logits = attention_logits(tokens, cfg, weights);
    double worst = 0.0;
    for (const auto& head : logits.per_head) {
        const auto sm = softmax_rows(head, logits.tokens);
        for (int r = 0; r < logits.tokens; ++r) {
            double sum = 0.0;
            for (int c = 0; c < logits.tokens; ++c)
                sum += sm[static_cast<std::size_t>(r) * logits.tokens + c];
            worst = std::max(worst, std::abs(sum - 1.0));
        }
    }
    return {detail::check_below("softmax", "rows sum to 1", worst, 1e-9)};
}

inline std::vector<InvariantCheck> verify_determinism(int /*trials*/, std::uint64_t seed) {
    std::vector<InvariantCheck> out;
    auto logits_for = [](std::uint64_t s) {
        Xorshift64Star rng(s);
        AttentionConfig cfg;
        cfg.heads = 2;
        cfg.head_dim = 32;
        cfg.pe = PeKind::spiral;
        cfg.rope = RopeConfig{32, 8, 10000.0, 1.0};
        const TokenGrid tokens = make_random_grid(4, 4, cfg.model_dim(), rng);
        const QkWeights weights = make_random_weights(cfg.model_dim(), cfg.model_dim(), rng);
        return attention_logits(tokens, cfg, weights);
    };
    const double repeat_diff = max_abs_difference(logits_for(seed), logits_for(seed));
    out.push_back(detail::check_below("determinism", "same seed reproduces logits", repeat_diff, 0.0));
    const double other_diff = max_abs_difference(logits_for(seed), logits_for(seed + 1));
    out.push_back(detail::check_above("determinism", "different seed changes logits", other_diff, 0.0));
    return out;
}

inline std::vector<std::string> all_suite_names() {
    return {"pool",        "directions",  "assignment", "isometry", "origin",
            "relative",    "degeneracy",  "composition", "parity",  "table",
            "extrapolation", "fourier",   "translation", "softmax", "determinism"};
}

inline std::vector<InvariantCheck> run_suite(const std::string& name, int trials,
                                             std::uint64_t seed) {
    using Runner = std::function<std::vector<InvariantCheck>(int, std::uint64_t)>;
    static const std::vector<std::pair<std::string, Runner>> suites = {
        {"pool", verify_pool},
        {"directions", verify_directions},
        {"assignment", verify_assignment},
        {"isometry", verify_isometry},
        {"origin", verify_origin},
        {"relative", verify_relative},
        {"degeneracy", verify_degeneracy},
        {"composition", verify_composition},
        {"parity", verify_parity},
        {"table", verify_table},
        {"extrapolation", verify_extrapolation},
        {"fourier", verify_fourier},
        {"translation", verify_translation},
        {"softmax", verify_softmax},
        {"determinism", verify_determinism},
    };
    for (const auto& [suite_name, runner] : suites)
        if (suite_name == name) return runner(trials, seed);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

inline std::vector<InvariantCheck> run_all_suites(int trials, std::uint64_t seed) {
    std::vector<InvariantCheck> all;
    for (const auto& name : all_suite_names()) {
        auto checks = run_suite(name, trials, seed);
        all.insert(all.end(), checks.begin(), checks.end());
    }
    return all;
}

}  // namespace rope2d
