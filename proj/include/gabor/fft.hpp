#pragma once

#include <numbers>
#include <vector>

#include "gabor/types.hpp"

namespace gabor {

// Iterative radix-2 FFT, unnormalized. All grids in the library are chosen
// with power-of-two sizes, so nothing fancier is needed.
inline void fft_radix2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw Error("fft_radix2: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                cplx u = a[i + j];
                cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& z : a) z *= inv;
    }
}

// Centered continuous-FT approximation on the grid x_j = (j - N/2) h:
//   out[k] ~= h * sum_j u_j e^{-2 pi i xi_k x_j},  xi_k = (k - N/2) / (N h).
// The pre/post twiddles move the origin to the grid centers; with h/T = 1/N
// they are just (-1)^j and a constant.
inline std::vector<cplx> centered_fourier(std::vector<cplx> u, double h) {
    const std::size_t n = u.size();
    for (std::size_t j = 0; j < n; ++j)
        if (j & 1) u[j] = -u[j];
    fft_radix2(u, false);
    const double n4 = static_cast<double>(n) / 4.0;
    const double frac = n4 - std::floor(n4);
    const cplx c0 = std::exp(cplx(0.0, -2.0 * std::numbers::pi * frac));
    for (std::size_t k = 0; k < n; ++k) {
        cplx f = (k & 1) ? -c0 : c0;
        u[k] *= f * h;
    }
    return u;
}

}  // namespace gabor
