#pragma once

// Simultaneous polynomial root finding (Aberth-Ehrlich) in extended precision.

#include <cmath>
#include <complex>
#include <vector>

namespace smoothfib {

using Complex = std::complex<long double>;

inline Complex horner(const std::vector<Complex>& c, Complex z) {
    Complex s = 0;
    for (std::size_t i = c.size(); i-- > 0;) s = s * z + c[i];
    return s;
}

// Roots of sum c[i] z^i; c.back() must be non-zero.
inline std::vector<Complex> polynomial_roots(const std::vector<Complex>& c) {
    const std::size_t n = c.size() - 1;
    if (c.size() < 2) return {};
    if (n == 1) return {-c[0] / c[1]};
    std::vector<Complex> dc(n);
    for (std::size_t i = 1; i <= n; ++i) dc[i - 1] = c[i] * static_cast<long double>(i);
    // Fujiwara-type radius bound for the starting circle
    long double radius = 0;
    for (std::size_t i = 0; i < n; ++i)
        radius = std::max(radius, std::pow(std::abs(c[i] / c[n]), 1.0L / static_cast<long double>(n - i)));
    radius = std::max(radius, 1e-3L);
    std::vector<Complex> z(n);
    const long double pi = std::acos(-1.0L);
    for (std::size_t k = 0; k < n; ++k)
        z[k] = std::polar(radius, 2 * pi * static_cast<long double>(k) / static_cast<long double>(n) + 0.4L);
    for (int iter = 0; iter < 500; ++iter) {
        long double worst = 0;
        for (std::size_t k = 0; k < n; ++k) {
            Complex p = horner(c, z[k]);
            if (p == Complex(0)) continue;
            Complex ratio = p / horner(dc, z[k]);
            Complex sum = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) sum += Complex(1) / (z[k] - z[j]);
            Complex w = ratio / (Complex(1) - ratio * sum);
            z[k] -= w;
            worst = std::max(worst, std::abs(w) / std::max(1.0L, std::abs(z[k])));
        }
        if (worst < 1e-17L) break;
    }
    for (auto& r : z)
        for (int i = 0; i < 3; ++i) {
            Complex d = horner(dc, r);
            if (d == Complex(0)) break;
            r -= horner(c, r) / d;
        }
    return z;
}

}  // namespace smoothfib
