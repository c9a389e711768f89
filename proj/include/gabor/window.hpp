#pragma once

#include <optional>
#include <unordered_map>
#include <variant>
#include <vector>

#include "gabor/lattice.hpp"
#include "gabor/types.hpp"

namespace gabor {

// phi(x) = sqrt(b) * sin(pi/2 * r(x/ramp)) on the rise [0,ramp], plateau
// sqrt(b) on [ramp,a], matching cosine fall on [a,a+ramp], r(u)=sin^2(pi u/2).
// sum_k phi(x-ka)^2 = b identically, so the Gabor system on a Z x b Z is an
// exactly tight frame with bound 1 (the painless condition: support <= 1/b).
struct PainlessBump {
    double a;      // translation step
    double b;      // frequency step of the target lattice
    double L;      // declared support bound, a + ramp <= L <= 1/b
    double ramp;
    double eval(double x) const;
    double support() const { return a + ramp; }
};

// phi(x) = c * exp(i pi w x^2), Im w > 0, c > 0 chosen so ||phi||^2 = norm_sq.
struct GeneralizedGaussian {
    cplx w;
    double norm_sq;
};

// Periodized samples on x_j = x0 + j h, j = 0..N-1, period T = N h, N a power
// of two. `spectrum` caches the DFT of `values` for fractional translation.
struct Sampled {
    double h;
    double x0;
    std::vector<cplx> values;
    std::vector<cplx> spectrum;
    double period() const { return h * static_cast<double>(values.size()); }
};

struct Window {
    std::variant<PainlessBump, GeneralizedGaussian, Sampled> v;
    double norm_sq;
    // (a, b) of the separated lattice this window is certified tight on
    // (set by painless_window by construction, by canonical_tight post-hoc).
    std::optional<std::pair<double, double>> tight_on;
};

struct KernelEntry {
    IPt p;
    double F;  // |<phi, phi_lambda>|^2
};

struct KernelTable {
    Lattice2D lattice;
    double radius;
    double norm_sq;
    double tail_bound;  // bounds sum over |lambda| > radius of F(lambda)(1+|lambda|)
    bool tight;         // generator verified tight-normalized on `lattice`
    std::vector<KernelEntry> values;  // lexicographic in integer coordinates
    std::unordered_map<IPt, cplx, IPtHash> phases;  // optional: <phi, phi_lambda>

    const double* find(const IPt& p) const;
};

Window painless_window(double a, double b, double L, double ramp);
Window gaussian_window(cplx w, double norm = 1.0);
Window sampled_window(double h, double x0, std::vector<cplx> values);

cplx kernel_value(const Window& phi, const Vec2& lambda);
KernelTable kernel_table(const Window& phi, const Lattice2D& L, double tol, bool with_phases = false);
// Reindex a table onto another lattice keeping integer coordinates: the
// kernel transport of the transformation Lemma (F'(A lambda) = F(lambda)).
KernelTable retarget(const KernelTable& T, const Lattice2D& L);

struct TightnessReport {
    double max_relative_deviation;
    int n_tests;
};
TightnessReport verify_tightness(const Window& phi, const Lattice2D& L, int n_tests,
                                 std::uint64_t seed = 20260826);

double condition_phi_sum(const KernelTable& T);

struct TighteningGrid {
    int steps_per_shift = 32;   // samples per lattice step a (power of two)
    int shifts_per_period = 16; // period T = this many steps a (power of two)
    double tol = 1e-4;          // post-hoc tightness gate
};
Window canonical_tight(const Window& phi, const Lattice2D& L, const TighteningGrid& grid = {});

// Trigonometric-interpolant evaluation and exact fractional translation of a
// periodized sample vector (DFT shift theorem).
cplx sampled_eval(const Sampled& s, double x);
std::vector<cplx> sampled_shift(const Sampled& s, double q);

}  // namespace gabor
