// rope2d: analysis CLI for rotary positional encodings on 2D grids.
//
// Subcommands:
//   freq-support  export the representable 2D frequencies of a variant as CSV
//   reconstruct   FFT -> frequency mask -> inverse FFT image reconstruction
//   verify        run the library's invariant suites
//   bench         table-based rotation throughput, axial vs spiral
//   rotate        rotate vectors from a text file at a fixed position

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rope2d/attention.hpp"
#include "rope2d/config.hpp"
#include "rope2d/fourier.hpp"
#include "rope2d/io.hpp"
#include "rope2d/rope.hpp"
#include "rope2d/verify.hpp"

namespace {

rope2d::Variant parse_variant(const std::string& name, bool allow_1d) {
    if (name == "axial") return rope2d::Variant::axial;
    if (name == "spiral") return rope2d::Variant::spiral;
    if (allow_1d && name == "1d") return rope2d::Variant::rope_1d;
    throw std::invalid_argument("unknown variant '" + name + "'");
}

std::pair<int, int> parse_grid(const std::string& text) {
    const auto x = text.find('x');
    try {
        if (x == std::string::npos) {
            const int n = std::stoi(text);
            return {n, n};
        }
        return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
    } catch (const std::exception&) {
        throw std::invalid_argument("grid must look like '32' or '32x32' (got '" + text + "')");
    }
}

struct FreqSupportArgs {
    std::string variant = "spiral";
    int dim = 1024;
    int k = 8;
    double theta_base = 10000.0;
    double freq_scale = 1.0;
    std::string out = "freq_support.csv";
};

void run_freq_support(const FreqSupportArgs& args) {
    const rope2d::Variant variant = parse_variant(args.variant, /*allow_1d=*/false);
    const rope2d::RopeConfig cfg{args.dim, args.k, args.theta_base, args.freq_scale};
    const auto points = rope2d::support_points(variant, cfg);
    const rope2d::DirectionSet dirs =
        variant == rope2d::Variant::axial ? rope2d::make_direction_set(2)
                                          : rope2d::make_direction_set(args.k);
    rope2d::write_support_csv(points, dirs, args.variant, args.out);
    std::cout << "wrote " << points.size() << " points to " << args.out << "\n";
}

struct ReconstructArgs {
    std::string image = "point";
    int grid = 64;
    int radius = 16;
    std::string variant = "spiral";
    int dim = 1024;
    int k = 8;
    double theta_base = 10000.0;
    double freq_scale = 1.0;
    bool full_mask = false;
    std::string out_image = "reconstruction.pgm";
    std::string out_metrics = "metrics.txt";
};

void run_reconstruct(const ReconstructArgs& args) {
    const rope2d::BinaryImage original =
        args.image == "circle" ? rope2d::make_circle_image(args.grid, args.radius)
                               : rope2d::make_point_image(args.grid);
    rope2d::SpectrumMask mask;
    int clamped = 0;
    if (args.full_mask) {
        mask = rope2d::full_mask(args.grid);
    } else {
        const rope2d::Variant variant = parse_variant(args.variant, /*allow_1d=*/false);
        const rope2d::RopeConfig cfg{args.dim, args.k, args.theta_base, args.freq_scale};
        auto built = rope2d::build_mask(rope2d::support_points(variant, cfg), args.grid);
        mask = std::move(built.mask);
        clamped = built.clamped_points;
    }
    const auto result = rope2d::reconstruct(original, mask);
    const double mse = rope2d::mean_squared_error(original, result.image);
    rope2d::write_pgm(result.image, args.out_image);
    rope2d::write_metrics({{"mse", rope2d::format_real(mse)},
                           {"kept_bins", std::to_string(mask.kept_count())},
                           {"clamped", std::to_string(clamped)}},
                          args.out_metrics);
    std::cout << "mse=" << rope2d::format_real(mse) << " kept_bins=" << mask.kept_count()
              << " clamped=" << clamped << "\n"
              << "wrote " << args.out_image << " and " << args.out_metrics << "\n";
}

struct VerifyArgs {
    std::vector<std::string> suites;
    int trials = 1000;
    std::uint64_t seed = 42;
};

int run_verify(const VerifyArgs& args) {
    std::vector<rope2d::InvariantCheck> checks;
    if (args.suites.empty()) {
        checks = rope2d::run_all_suites(args.trials, args.seed);
    } else {
        for (const auto& name : args.suites) {
            auto batch = rope2d::run_suite(name, args.trials, args.seed);
            checks.insert(checks.end(), batch.begin(), batch.end());
        }
    }
    int failures = 0;
    for (const auto& check : checks) {
        const char* relation = check.require_above ? ">" : "<=";
        std::cout << (check.pass ? "PASS" : "FAIL") << "  " << check.suite << "/" << check.name
                  << ": value=" << rope2d::format_real(check.value) << " (need " << relation << " "
                  << rope2d::format_real(check.limit) << ")\n";
        failures += !check.pass;
    }
    std::cout << (checks.size() - failures) << "/" << checks.size() << " checks passed\n";
    return failures == 0 ? 0 : 1;
}

struct BenchArgs {
    int dim = 64;
    int k = 8;
    std::string grid = "32x32";
    int iters = 200;
    double theta_base = 10000.0;
    double freq_scale = 1.0;
    std::uint64_t seed = 42;
    std::string out;
};

void run_bench(const BenchArgs& args) {
    const auto [h, w] = parse_grid(args.grid);
    const rope2d::RopeConfig cfg{args.dim, args.k, args.theta_base, args.freq_scale};
    const rope2d::BenchReport r = rope2d::overhead_bench(cfg, h, w, args.iters, args.seed);
    const std::vector<std::pair<std::string, std::string>> lines = {
        {"iterations", std::to_string(r.iterations)},
        {"rotation_pairs", std::to_string(r.rotation_pairs)},
        {"axial_mean_us", rope2d::format_real(r.axial_mean_us)},
        {"axial_stddev_us", rope2d::format_real(r.axial_stddev_us)},
        {"spiral_mean_us", rope2d::format_real(r.spiral_mean_us)},
        {"spiral_stddev_us", rope2d::format_real(r.spiral_stddev_us)},
        {"ratio", rope2d::format_real(r.ratio)},
        {"checksum", rope2d::format_real(r.checksum)},
    };
    for (const auto& [key, value] : lines) std::cout << key << '=' << value << '\n';
    if (!args.out.empty()) rope2d::write_metrics(lines, args.out);
}

struct RotateArgs {
    std::string variant = "spiral";
    int dim = 64;
    int k = 8;
    double theta_base = 10000.0;
    double freq_scale = 1.0;
    double pos_x = 0.0;
    double pos_y = 0.0;
    std::string in;
    std::string out;
};

void run_rotate(const RotateArgs& args) {
    const rope2d::Variant variant = parse_variant(args.variant, /*allow_1d=*/true);
    const rope2d::RopeConfig cfg{args.dim, args.k, args.theta_base, args.freq_scale};
    const auto vectors = rope2d::read_vectors(args.in, args.dim);
    std::vector<std::vector<double>> rotated;
    rotated.reserve(vectors.size());
    for (const auto& vec : vectors)
        rotated.push_back(rope2d::apply_variant(vec, {args.pos_x, args.pos_y}, variant, cfg));
    rope2d::write_vectors(rotated, args.out);
    std::cout << "rotated " << rotated.size() << " vectors into " << args.out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rotary positional encoding analysis tool"};
    app.require_subcommand(1);

    FreqSupportArgs fs;
    auto* fs_cmd = app.add_subcommand("freq-support",
                                      "export representable 2D frequencies as CSV");
    fs_cmd->add_option("--variant", fs.variant, "axial or spiral")
        ->check(CLI::IsMember({"axial", "spiral"}));
    fs_cmd->add_option("--dim", fs.dim, "embedding dimension");
    fs_cmd->add_option("--k", fs.k, "direction count (spiral)");
    fs_cmd->add_option("--theta-base", fs.theta_base, "frequency pool base");
    fs_cmd->add_option("--freq-scale", fs.freq_scale, "multiplier on every frequency");
    fs_cmd->add_option("--out", fs.out, "output CSV path");
    fs_cmd->callback([&fs] { run_freq_support(fs); });

    ReconstructArgs rc;
    auto* rc_cmd = app.add_subcommand("reconstruct",
                                      "reconstruct a test image through a frequency mask");
    rc_cmd->add_option("--image", rc.image, "point or circle")
        ->check(CLI::IsMember({"point", "circle"}));
    rc_cmd->add_option("--grid", rc.grid, "square image size");
    rc_cmd->add_option("--radius", rc.radius, "circle radius (circle image)");
    rc_cmd->add_option("--variant", rc.variant, "axial or spiral")
        ->check(CLI::IsMember({"axial", "spiral"}));
    rc_cmd->add_option("--dim", rc.dim, "embedding dimension");
    rc_cmd->add_option("--k", rc.k, "direction count (spiral)");
    rc_cmd->add_option("--theta-base", rc.theta_base, "frequency pool base");
    rc_cmd->add_option("--freq-scale", rc.freq_scale, "multiplier on every frequency");
    rc_cmd->add_flag("--full-mask", rc.full_mask, "keep every bin (round-trip debug)");
    rc_cmd->add_option("--out-image", rc.out_image, "output PGM path");
    rc_cmd->add_option("--out-metrics", rc.out_metrics, "output metrics path");
    rc_cmd->callback([&rc] { run_reconstruct(rc); });

    VerifyArgs vf;
    int verify_exit = 0;
    auto* vf_cmd = app.add_subcommand("verify", "run invariant suites");
    vf_cmd->add_option("--suite", vf.suites,
                       "suite name (repeatable; default: all). One of: pool, directions, "
                       "assignment, isometry, origin, relative, degeneracy, composition, parity, "
                       "table, extrapolation, fourier, translation, softmax, determinism");
    vf_cmd->add_option("--trials", vf.trials, "random trials per randomized suite");
    vf_cmd->add_option("--seed", vf.seed, "random seed");
    vf_cmd->callback([&vf, &verify_exit] { verify_exit = run_verify(vf); });

    BenchArgs bn;
    auto* bn_cmd = app.add_subcommand("bench",
                                      "time table-based rotation, axial vs spiral, on one config");
    bn_cmd->add_option("--dim", bn.dim, "embedding dimension");
    bn_cmd->add_option("--k", bn.k, "direction count (spiral)");
    bn_cmd->add_option("--grid", bn.grid, "grid size, e.g. 32x32");
    bn_cmd->add_option("--iters", bn.iters, "timed iterations")->check(CLI::PositiveNumber);
    bn_cmd->add_option("--theta-base", bn.theta_base, "frequency pool base");
    bn_cmd->add_option("--freq-scale", bn.freq_scale, "multiplier on every frequency");
    bn_cmd->add_option("--seed", bn.seed, "random seed for token data");
    bn_cmd->add_option("--out", bn.out, "also write the report to this path");
    bn_cmd->callback([&bn] { run_bench(bn); });

    RotateArgs rt;
    auto* rt_cmd = app.add_subcommand("rotate",
                                      "rotate whitespace-separated vectors at a fixed position");
    rt_cmd->add_option("--variant", rt.variant, "1d, axial, or spiral")
        ->check(CLI::IsMember({"1d", "axial", "spiral"}));
    rt_cmd->add_option("--dim", rt.dim, "embedding dimension");
    rt_cmd->add_option("--k", rt.k, "direction count (spiral)");
    rt_cmd->add_option("--theta-base", rt.theta_base, "frequency pool base");
    rt_cmd->add_option("--freq-scale", rt.freq_scale, "multiplier on every frequency");
    rt_cmd->add_option("--pos-x", rt.pos_x, "position x (the sequence index for 1d)");
    rt_cmd->add_option("--pos-y", rt.pos_y, "position y");
    rt_cmd->add_option("--in", rt.in, "input vector file")->required();
    rt_cmd->add_option("--out", rt.out, "output vector file")->required();
    rt_cmd->callback([&rt] { run_rotate(rt); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return verify_exit;
}
