#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

// Reference 2D DFT evaluated straight from the definition, O(n^4). Test-only:
// deliberately shares no code with the production transform so the two can
// cross-check each other.

namespace rope2d::testing {

inline std::vector<std::complex<double>> naive_dft2d(const std::vector<double>& pixels, int n) {
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n) * n);
    for (int ky = 0; ky < n; ++ky)
        for (int kx = 0; kx < n; ++kx) {
            std::complex<double> acc{0.0, 0.0};
            for (int y = 0; y < n; ++y)
                for (int x = 0; x < n; ++x) {
                    const double phase = -2.0 * std::numbers::pi *
                                         (static_cast<double>(kx) * x / n +
                                          static_cast<double>(ky) * y / n);
                    acc += pixels[static_cast<std::size_t>(y) * n + x] *
                           std::complex<double>(std::cos(phase), std::sin(phase));
                }
            out[static_cast<std::size_t>(ky) * n + kx] = acc;
        }
    return out;
}

inline std::vector<std::complex<double>> naive_idft2d(
    const std::vector<std::complex<double>>& coeffs, int n) {
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n) * n);
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
            std::complex<double> acc{0.0, 0.0};
            for (int ky = 0; ky < n; ++ky)
                for (int kx = 0; kx < n; ++kx) {
                    const double phase = 2.0 * std::numbers::pi *
                                         (static_cast<double>(kx) * x / n +
                                          static_cast<double>(ky) * y / n);
                    acc += coeffs[static_cast<std::size_t>(ky) * n + kx] *
                           std::complex<double>(std::cos(phase), std::sin(phase));
                }
            out[static_cast<std::size_t>(y) * n + x] = acc / static_cast<double>(n * n);
        }
    return out;
}

}  // namespace rope2d::testing
