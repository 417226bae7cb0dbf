#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rope2d/config.hpp"
#include "rope2d/rng.hpp"
#include "rope2d/rope.hpp"

using rope2d::GridPosition;
using rope2d::RopeConfig;
using rope2d::Xorshift64Star;

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string temp_path(const std::string& name) {
    return (std::filesystem::path(::testing::TempDir()) / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

/// Runs the installed CLI binary with `args`, capturing exit code and both
/// output streams through temp files.
CommandResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string out_path = temp_path("cli_out_" + std::to_string(counter) + ".txt");
    const std::string err_path = temp_path("cli_err_" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd =
        std::string(ROPE2D_CLI_PATH) + " " + args + " > " + out_path + " 2> " + err_path;
    const int status = std::system(cmd.c_str());
    CommandResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string field;
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

}  // namespace

TEST(CliFreqSupport, AxialSmallDimListsAxisPointsOnly) {
    const std::string csv = temp_path("axial8.csv");
    const CommandResult r =
        run_cli("freq-support --variant axial --dim 8 --k 2 --out " + csv);
    ASSERT_EQ(r.exit_code, 0) << r.err;
    EXPECT_NE(r.out.find("8 points"), std::string::npos);
    const auto lines = split_lines(slurp(csv));
    ASSERT_EQ(lines.size(), 9u);  // header + dim rows
    EXPECT_EQ(lines[0], "variant,direction_deg,theta_index,theta,fx,fy,sign");
    std::set<std::string> degs;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_csv(lines[i]);
        ASSERT_EQ(fields.size(), 7u);
        EXPECT_EQ(fields[0], "axial");
        degs.insert(fields[1]);
    }
    EXPECT_EQ(degs, (std::set<std::string>{"0", "90"}));
}

TEST(CliFreqSupport, SpiralReferenceConfigCoversEightAngles) {
    const std::string csv = temp_path("spiral1024.csv");
    const CommandResult r =
        run_cli("freq-support --variant spiral --dim 1024 --k 8 --out " + csv);
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const auto lines = split_lines(slurp(csv));
    ASSERT_EQ(lines.size(), 1025u);  // header + 1024 points
    std::set<std::string> degs;
    for (std::size_t i = 1; i < lines.size(); ++i) degs.insert(split_csv(lines[i])[1]);
    EXPECT_EQ(degs.size(), 8u);
    EXPECT_TRUE(degs.count("0"));
    EXPECT_TRUE(degs.count("90"));
    EXPECT_TRUE(degs.count("22.5"));
    EXPECT_TRUE(degs.count("157.5"));
}

TEST(CliFreqSupport, RerunsAreByteIdentical) {
    const std::string a = temp_path("rerun_a.csv");
    const std::string b = temp_path("rerun_b.csv");
    ASSERT_EQ(run_cli("freq-support --variant spiral --dim 64 --k 8 --out " + a).exit_code, 0);
    ASSERT_EQ(run_cli("freq-support --variant spiral --dim 64 --k 8 --out " + b).exit_code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
}

TEST(CliFreqSupport, OddDirectionCountIsRejected) {
    const CommandResult r = run_cli("freq-support --variant spiral --dim 40 --k 5");
    EXPECT_NE(r.exit_code, 0);
    EXPECT_NE(r.err.find("even"), std::string::npos) << r.err;
}

TEST(CliReconstruct, PointImageMetricsAndPgm) {
    const std::string pgm = temp_path("point.pgm");
    const std::string metrics = temp_path("point_metrics.txt");
    const CommandResult r = run_cli(
        "reconstruct --image point --grid 16 --variant spiral --dim 64 --k 8 --out-image " + pgm +
        " --out-metrics " + metrics);
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const std::string m = slurp(metrics);
    EXPECT_NE(m.find("mse="), std::string::npos);
    EXPECT_NE(m.find("kept_bins="), std::string::npos);
    EXPECT_NE(m.find("clamped="), std::string::npos);
    const std::string img = slurp(pgm);
    EXPECT_EQ(img.substr(0, 10), "P5\n16 16\n2");  // header prefix, 255 maxval follows
    EXPECT_EQ(img.size(), std::string("P5\n16 16\n255\n").size() + 16 * 16);
}

TEST(CliReconstruct, FullMaskReproducesTheImage) {
    const std::string metrics = temp_path("full_metrics.txt");
    const CommandResult r = run_cli(
        "reconstruct --image circle --grid 32 --radius 8 --variant axial --dim 64 --full-mask "
        "--out-image " +
        temp_path("full.pgm") + " --out-metrics " + metrics);
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const std::string m = slurp(metrics);
    const auto pos = m.find("mse=");
    ASSERT_NE(pos, std::string::npos);
    const double mse = std::stod(m.substr(pos + 4));
    EXPECT_LE(mse, 1e-12);
}

TEST(CliVerify, RelativeSuitePasses) {
    const CommandResult r = run_cli("verify --suite relative --trials 100");
    EXPECT_EQ(r.exit_code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("checks passed"), std::string::npos);
}

TEST(CliVerify, UnknownSuiteFailsLoudly) {
    const CommandResult r = run_cli("verify --suite bogus");
    EXPECT_NE(r.exit_code, 0);
    EXPECT_NE(r.err.find("bogus"), std::string::npos) << r.err;
}

TEST(CliBench, SingleIterationEmitsAllMetrics) {
    const CommandResult r = run_cli("bench --dim 64 --grid 8x8 --iters 1 --seed 7");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    for (const char* key : {"iterations=", "rotation_pairs=", "axial_mean_us=",
                            "axial_stddev_us=", "spiral_mean_us=", "spiral_stddev_us=",
                            "ratio=", "checksum="})
        EXPECT_NE(r.out.find(key), std::string::npos) << key << '\n' << r.out;
    EXPECT_NE(r.out.find("iterations=1"), std::string::npos);
    EXPECT_NE(r.out.find("rotation_pairs=32"), std::string::npos);
}

TEST(CliRotate, MatchesTheLibraryRotation) {
    // Build an input file, rotate through the CLI, and compare against the
    // in-process rotation of the same vectors.
    const RopeConfig cfg{32, 4, 10000.0, 1.0};
    const rope2d::SpiralPlan plan = rope2d::SpiralPlan::make(cfg);
    Xorshift64Star rng(11);
    std::vector<std::vector<double>> inputs(3, std::vector<double>(32));
    for (auto& v : inputs)
        for (auto& x : v) x = rng.uniform_pm1();

    const std::string in_path = temp_path("rotate_in.txt");
    {
        std::ofstream out(in_path);
        for (const auto& v : inputs) {
            for (std::size_t i = 0; i < v.size(); ++i)
                out << (i ? " " : "") << std::setprecision(17) << v[i];
            out << '\n';
        }
    }
    const std::string out_path = temp_path("rotate_out.txt");
    const CommandResult r = run_cli(
        "rotate --variant spiral --dim 32 --k 4 --pos-x 2.5 --pos-y -1.25 --in " + in_path +
        " --out " + out_path);
    ASSERT_EQ(r.exit_code, 0) << r.err;

    std::ifstream back(out_path);
    for (const auto& v : inputs) {
        const std::vector<double> expected =
            rope2d::apply_spiral(v, rope2d::GridPosition{2.5, -1.25}, plan);
        for (double e : expected) {
            double got = 0.0;
            ASSERT_TRUE(static_cast<bool>(back >> got));
            EXPECT_NEAR(got, e, 1e-7);  // %.9g text round-trip
        }
    }
}

TEST(CliRotate, MissingInputFileNamesThePath) {
    const std::string missing = temp_path("absent.txt");
    const CommandResult r =
        run_cli("rotate --variant axial --dim 32 --in " + missing + " --out " +
                temp_path("unused.txt"));
    EXPECT_NE(r.exit_code, 0);
    EXPECT_NE(r.err.find(missing), std::string::npos) << r.err;
}

TEST(Cli, NoSubcommandFails) {
    const CommandResult r = run_cli("");
    EXPECT_NE(r.exit_code, 0);
}
