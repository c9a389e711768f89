#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "gabor/types.hpp"

namespace gabor {

// Gauss-Legendre rule on [-1,1], nodes by Newton iteration on P_n.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(int n) {
        nodes.resize(n);
        weights.resize(n);
        for (int i = 0; i < n; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }

    static const GaussLegendre& order32() {
        static const GaussLegendre g(32);
        return g;
    }
};

// Integrate f over [a,b], splitting into panels short enough that the
// oscillation count per panel stays small; GL32 is then spectrally accurate
// for the analytic integrands used here (window pieces times e^{-2 pi i p x}).
template <typename F>
cplx integrate_panel(F&& f, double a, double b, double osc_freq) {
    if (b <= a) return {0.0, 0.0};
    const auto& gl = GaussLegendre::order32();
    const double max_len = osc_freq > 1e-12 ? 3.0 / osc_freq : (b - a);
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / max_len)));
    KahanSumC acc;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + (b - a) * p / panels;
        const double hi = a + (b - a) * (p + 1) / panels;
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (std::size_t i = 0; i < gl.nodes.size(); ++i)
            acc.add(f(mid + half * gl.nodes[i]) * (gl.weights[i] * half));
    }
    return acc.get();
}

// \int exp(-A x^2 + B x + C) dx with Re A > 0 (principal square root).
inline cplx gaussian_integral(cplx A, cplx B, cplx C) {
    if (A.real() <= 0.0) throw Error("gaussian_integral: Re A must be positive");
    return std::sqrt(std::numbers::pi / A) * std::exp(B * B / (4.0 * A) + C);
}

}  // namespace gabor
