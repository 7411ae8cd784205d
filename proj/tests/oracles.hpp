#pragma once

// Test-only reference computations, kept independent of the library paths
// they check.

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include <Eigen/Core>

namespace oracle {

using cd = std::complex<double>;

/// Fourier coefficients of a sampled function on an n x n k-grid (DFT).
/// Exact for trigonometric polynomials with harmonics below n/2.
inline std::map<std::pair<int, int>, cd> sampled_fourier(const std::function<cd(double, double)>& f, int n) {
    std::map<std::pair<int, int>, cd> out;
    for (int lx = -n / 2 + 1; lx < n / 2; ++lx) {
        for (int ly = -n / 2 + 1; ly < n / 2; ++ly) {
            cd sum = 0;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    const double kx = 2 * std::numbers::pi * i / n;
                    const double ky = 2 * std::numbers::pi * j / n;
                    sum += f(kx, ky) * std::polar(1.0, -(kx * lx + ky * ly));
                }
            }
            sum /= double(n) * n;
            if (std::abs(sum) > 1e-12) out[{lx, ly}] = sum;
        }
    }
    return out;
}

inline Eigen::Vector2d random_k(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    return {u(rng), u(rng)};
}

} // namespace oracle
