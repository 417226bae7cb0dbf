#include "rope2d/fourier.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include "rope2d/config.hpp"
#include "rope2d/rng.hpp"
#include "rope2d/testing/dft_oracle.hpp"

using namespace rope2d;

namespace {

RealImage random_image(int n, Xorshift64Star& rng) {
    RealImage img{n, std::vector<double>(static_cast<std::size_t>(n) * n)};
    for (auto& v : img.pixels) v = rng.uniform_pm1();
    return img;
}

}  // namespace

TEST(Dft2d, AllZeroImageHasAllZeroSpectrum) {
    RealImage img{8, std::vector<double>(64, 0.0)};
    const Spectrum s = dft2d(img);
    for (const auto& c : s.coefficients) EXPECT_EQ(std::abs(c), 0.0);
}

TEST(Dft2d, ImpulseHasFlatMagnitude) {
    const BinaryImage img = make_point_image(8);
    const Spectrum s = dft2d(img);
    for (const auto& c : s.coefficients) EXPECT_NEAR(std::abs(c), 1.0, 1e-12);
}

TEST(Dft2d, RoundTripRecoversRandomImage) {
    Xorshift64Star rng(1);
    const RealImage img = random_image(16, rng);
    const Spectrum round = idft2d(dft2d(img));
    EXPECT_LE(max_abs_imag(round), 1e-9);
    const RealImage back = real_part(round);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        ASSERT_NEAR(back.pixels[i], img.pixels[i], 1e-9);
}

TEST(Dft2d, MatchesNaiveOracleForSmallSizes) {
    Xorshift64Star rng(2);
    // 8 and 16 exercise the radix-2 path, 5 and 12 the direct path.
    for (int n : {5, 8, 12, 16}) {
        const RealImage img = random_image(n, rng);
        const Spectrum fast = dft2d(img);
        const auto slow = rope2d::testing::naive_dft2d(img.pixels, n);
        for (std::size_t i = 0; i < slow.size(); ++i)
            ASSERT_NEAR(std::abs(fast.coefficients[i] - slow[i]), 0.0, 1e-9) << "n=" << n;
        const Spectrum fast_inv = idft2d(fast);
        const auto slow_inv = rope2d::testing::naive_idft2d(slow, n);
        for (std::size_t i = 0; i < slow_inv.size(); ++i)
            ASSERT_NEAR(std::abs(fast_inv.coefficients[i] - slow_inv[i]), 0.0, 1e-9) << "n=" << n;
    }
}

TEST(Dft2d, RejectsNonSquareInput) {
    RealImage img{4, std::vector<double>(12, 0.0)};
    EXPECT_THROW(dft2d(img), std::invalid_argument);
}

TEST(SupportPoints, AxialSmallDimLiesOnAxes) {
    const auto points = support_points(Variant::axial, {8, 2, 10000.0, 1.0});
    ASSERT_EQ(points.size(), 8u);  // 2 frequencies x 2 axes x 2 signs
    for (const auto& p : points) {
        EXPECT_TRUE(p.fx == 0.0 || p.fy == 0.0);
        EXPECT_TRUE(p.direction_index == 0 || p.direction_index == 1);
    }
}

TEST(SupportPoints, SpiralCountsAndAngles) {
    const RopeConfig cfg{1024, 8, 10000.0, 1.0};
    const auto points = support_points(Variant::spiral, cfg);
    ASSERT_EQ(points.size(), 1024u);
    std::set<int> directions;
    for (const auto& p : points) directions.insert(p.direction_index);
    EXPECT_EQ(directions.size(), 8u);
    // Every point's magnitude is a pool frequency.
    const FrequencyPool pool = make_frequency_pool(cfg);
    for (const auto& p : points)
        EXPECT_NEAR(std::hypot(p.fx, p.fy), pool.thetas[p.theta_index], 1e-12);
}

TEST(SupportPoints, PointGeometryMatchesDirectionVectors) {
    const RopeConfig cfg{64, 8, 10000.0, 1.0};
    const DirectionSet dirs = make_direction_set(8);
    const FrequencyPool pool = make_frequency_pool(cfg);
    for (const auto& p : support_points(Variant::spiral, cfg)) {
        const auto& u = dirs.unit_vectors[p.direction_index];
        const double theta = pool.thetas[p.theta_index];
        EXPECT_NEAR(p.fx, p.sign * theta * u[0], 1e-15);
        EXPECT_NEAR(p.fy, p.sign * theta * u[1], 1e-15);
    }
}

TEST(BuildMask, GoldenBinCountsAtReferenceConfig) {
    const RopeConfig cfg{1024, 8, 10000.0, 1.0};
    const auto axial = build_mask(support_points(Variant::axial, cfg), 64);
    const auto spiral = build_mask(support_points(Variant::spiral, cfg), 64);
    EXPECT_EQ(axial.mask.kept_count(), 41);
    EXPECT_EQ(spiral.mask.kept_count(), 121);
    EXPECT_EQ(axial.clamped_points, 0);
    EXPECT_EQ(spiral.clamped_points, 0);
}

TEST(BuildMask, AxialBinsStayOnTheFrequencyAxes) {
    const RopeConfig cfg{1024, 8, 10000.0, 1.0};
    const auto axial = build_mask(support_points(Variant::axial, cfg), 64);
    for (const auto& [r, c] : axial.mask.kept_bins())
        EXPECT_TRUE(r == 0 || c == 0) << "bin (" << r << "," << c << ")";
}

TEST(BuildMask, IsClosedUnderNegation) {
    const RopeConfig cfg{1024, 8, 10000.0, 1.0};
    const auto built = build_mask(support_points(Variant::spiral, cfg), 64);
    const int n = built.mask.size;
    for (const auto& [r, c] : built.mask.kept_bins())
        EXPECT_TRUE(built.mask.contains((n - r) % n, (n - c) % n));
}

TEST(BuildMask, ClampsFrequenciesBeyondNyquist) {
    // freq_scale 4 pushes theta_0 = 4 rad/position past the representable
    // pi rad/position, so the top frequencies hit the Nyquist clamp.
    const RopeConfig cfg{64, 8, 10000.0, 4.0};
    const auto built = build_mask(support_points(Variant::spiral, cfg), 16);
    EXPECT_GT(built.clamped_points, 0);
    for (const auto& [r, c] : built.mask.kept_bins()) {
        EXPECT_LT(r, built.mask.size);
        EXPECT_LT(c, built.mask.size);
    }
}

TEST(Images, PointImageHasExactlyOneCenterPixel) {
    const BinaryImage img = make_point_image(64);
    int sum = 0;
    for (auto p : img.pixels) sum += p;
    EXPECT_EQ(sum, 1);
    EXPECT_EQ(img.pixels[32 * 64 + 32], 1);
}

TEST(Images, CircleRasterizationStaysNearTheRadius) {
    const BinaryImage img = make_circle_image(64, 16);
    int count = 0;
    for (int r = 0; r < 64; ++r)
        for (int c = 0; c < 64; ++c)
            if (img.pixels[static_cast<std::size_t>(r) * 64 + c]) {
                ++count;
                const double d = std::hypot(r - 32.0, c - 32.0);
                EXPECT_NEAR(d, 16.0, 0.75) << "pixel (" << r << "," << c << ")";
            }
    EXPECT_EQ(count, 92);  // frozen rasterization reference
    EXPECT_GT(count, 0);
    EXPECT_LT(count, 64 * 64 / 4);
}

TEST(Images, CircleRejectsDegenerateRadius) {
    EXPECT_THROW(make_circle_image(64, 0), std::invalid_argument);
    EXPECT_THROW(make_circle_image(64, 32), std::invalid_argument);
    EXPECT_THROW(make_circle_image(64, -3), std::invalid_argument);
    EXPECT_NO_THROW(make_circle_image(64, 31));
}

TEST(Reconstruct, FullMaskIsAnIdentityRoundTrip) {
    const BinaryImage img = make_circle_image(64, 16);
    const auto result = reconstruct(img, full_mask(64));
    EXPECT_LE(mean_squared_error(img, result.image), 1e-12);
}

TEST(Reconstruct, GoldenMseOrderingOnPointImage) {
    const RopeConfig cfg{1024, 8, 10000.0, 1.0};
    const auto axial = build_mask(support_points(Variant::axial, cfg), 64).mask;
    const auto spiral = build_mask(support_points(Variant::spiral, cfg), 64).mask;
    const BinaryImage point = make_point_image(64);
    const double mse_axial = mean_squared_error(point, reconstruct(point, axial).image);
    const double mse_spiral = mean_squared_error(point, reconstruct(point, spiral).image);
    // With a unit impulse the masked-out energy is exact: (4096-kept)/4096^2.
    EXPECT_NEAR(mse_axial, 4055.0 / (4096.0 * 4096.0), 1e-12);
    EXPECT_NEAR(mse_spiral, 3975.0 / (4096.0 * 4096.0), 1e-12);
    EXPECT_LT(mse_spiral, mse_axial);
}

TEST(Reconstruct, GoldenMseOrderingOnCircleImage) {
    const RopeConfig cfg{1024, 8, 10000.0, 1.0};
    const auto axial = build_mask(support_points(Variant::axial, cfg), 64).mask;
    const auto spiral = build_mask(support_points(Variant::spiral, cfg), 64).mask;
    const BinaryImage circle = make_circle_image(64, 16);
    const auto rec_axial = reconstruct(circle, axial);
    const auto rec_spiral = reconstruct(circle, spiral);
    EXPECT_LE(rec_axial.max_imag, 1e-9);
    EXPECT_LE(rec_spiral.max_imag, 1e-9);
    const double mse_axial = mean_squared_error(circle, rec_axial.image);
    const double mse_spiral = mean_squared_error(circle, rec_spiral.image);
    EXPECT_NEAR(mse_axial, 0.020766723048026188, 1e-9);
    EXPECT_NEAR(mse_spiral, 0.018616140432651057, 1e-9);
    EXPECT_LT(mse_spiral, mse_axial);
}

TEST(Reconstruct, AxialArtifactsConcentrateOnTheCentralCross) {
    const RopeConfig cfg{1024, 8, 10000.0, 1.0};
    const auto axial = build_mask(support_points(Variant::axial, cfg), 64).mask;
    const auto spiral = build_mask(support_points(Variant::spiral, cfg), 64).mask;
    const BinaryImage point = make_point_image(64);
    const double frac_axial =
        central_cross_energy_fraction(reconstruct(point, axial).image, 32, 32);
    const double frac_spiral =
        central_cross_energy_fraction(reconstruct(point, spiral).image, 32, 32);
    EXPECT_NEAR(frac_axial, 0.33470271570779825, 1e-9);
    EXPECT_NEAR(frac_spiral, 0.21509226051250066, 1e-9);
    EXPECT_GT(frac_axial, frac_spiral);
}

TEST(Reconstruct, AddingBinsNeverRaisesMse) {
    const RopeConfig cfg{1024, 8, 10000.0, 1.0};
    const auto axial = build_mask(support_points(Variant::axial, cfg), 64).mask;
    const auto spiral = build_mask(support_points(Variant::spiral, cfg), 64).mask;
    SpectrumMask grown = axial;
    for (std::size_t i = 0; i < grown.kept.size(); ++i) grown.kept[i] |= spiral.kept[i];
    const BinaryImage circle = make_circle_image(64, 16);
    const double small = mean_squared_error(circle, reconstruct(circle, axial).image);
    const double large = mean_squared_error(circle, reconstruct(circle, grown).image);
    EXPECT_LE(large, small + 1e-15);
}

TEST(Reconstruct, RejectsMismatchedSizes) {
    const BinaryImage img = make_point_image(32);
    EXPECT_THROW(reconstruct(img, full_mask(64)), std::invalid_argument);
    RealImage other{16, std::vector<double>(256, 0.0)};
    EXPECT_THROW(mean_squared_error(img, other), std::invalid_argument);
}

TEST(CrossFraction, HandComputedTinyCase) {
    // 4x4 image, center (2,2): cross pixels share row 2 or column 2.
    RealImage img{4, std::vector<double>(16, 0.0)};
    img.pixels[2 * 4 + 2] = 9.0;   // center, excluded
    img.pixels[2 * 4 + 0] = 2.0;   // on the cross: energy 4
    img.pixels[1 * 4 + 2] = 1.0;   // on the cross: energy 1
    img.pixels[0 * 4 + 0] = 3.0;   // off the cross: energy 9
    EXPECT_DOUBLE_EQ(central_cross_energy_fraction(img, 2, 2), 5.0 / 14.0);
}
