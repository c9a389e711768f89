#include "gabor/metaplectic.hpp"

#include <cmath>
#include <numbers>

#include "gabor/fft.hpp"

namespace gabor {

namespace {
constexpr double pi = std::numbers::pi;

Mat2 gen_mat(const std::variant<Dilation, Chirp, FourierFlip>& g) {
    Mat2 m;
    if (const auto* d = std::get_if<Dilation>(&g))
        m << d->s, 0, 0, 1.0 / d->s;
    else if (const auto* c = std::get_if<Chirp>(&g))
        m << 1, 0, c->c, 1;
    else
        m << 0, -1, 1, 0;
    return m;
}
}  // namespace

Mat2 MetaplecticFactorization::product() const {
    Mat2 m = Mat2::Identity();
    for (const auto& g : factors) m = m * gen_mat(g);
    return m;
}

MetaplecticFactorization mu_factorize(const SL2Matrix& A) {
    MetaplecticFactorization f;
    if (std::abs(A.b) > 1e-12) {
        // A = C(d/b) J C(ab) D(-1/b)
        f.factors = {Chirp{A.d / A.b}, FourierFlip{}, Chirp{A.a * A.b}, Dilation{-1.0 / A.b}};
    } else {
        // A = C(c/a) D(a)
        f.factors = {Chirp{A.c / A.a}, Dilation{A.a}};
    }
    return f;
}

namespace {

// Analytic evaluation of Chirp(g2) Dilation(s) phi for the closed-form
// variants; Sampled windows go through the trigonometric interpolant.
cplx chirped_dilated(const Window& phi, double g2, double s, double x) {
    const double xs = x / s;
    const cplx chirp = std::exp(cplx(0.0, pi * g2 * x * x));
    const double amp = 1.0 / std::sqrt(std::abs(s));
    return std::visit(
        [&](const auto& w) -> cplx {
            using T = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<T, PainlessBump>) return amp * w.eval(xs) * chirp;
            if constexpr (std::is_same_v<T, GeneralizedGaussian>) {
                const double c = std::sqrt(w.norm_sq * std::sqrt(2.0 * w.w.imag()));
                return amp * c * std::exp(cplx(0.0, pi) * w.w * (xs * xs)) * chirp;
            }
            if constexpr (std::is_same_v<T, Sampled>) return amp * sampled_eval(w, xs) * chirp;
        },
        phi.v);
}

// Fraction of the input mass whose instantaneous frequency, after the
// dilation-by-s regrid and the chirp g2, lands past 90% of the new Nyquist.
// The input frequency is read off phase differences of consecutive samples,
// which is faithful wherever the input itself is adequately sampled.
double aliased_mass_fraction(const Sampled& in, double s, double g2, double h_new) {
    const std::size_t N = in.values.size();
    KahanSum total, flagged;
    for (std::size_t j = 0; j + 1 < N; ++j) {
        const double m = std::norm(in.values[j]);
        if (m == 0.0) continue;
        total.add(m);
        const cplx step = in.values[j + 1] * std::conj(in.values[j]);
        if (step == cplx(0.0)) continue;
        const double x_in = in.x0 + in.h * static_cast<double>(j);
        const double nu_in = std::arg(step) / (2.0 * pi * in.h);
        const double nu_out = nu_in / s + g2 * s * x_in;
        if (std::abs(nu_out) > 0.45 / h_new) flagged.add(m);
    }
    return total.get() > 0.0 ? flagged.get() / total.get() : 0.0;
}

double window_support_radius(const Window& phi) {
    return std::visit(
        [&](const auto& w) -> double {
            using T = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<T, PainlessBump>) return w.support();
            if constexpr (std::is_same_v<T, GeneralizedGaussian>)
                return std::sqrt(40.0 / w.w.imag()) + 1.0;
            if constexpr (std::is_same_v<T, Sampled>) {
                // effective support: widest sample above a relative floor
                double peak = 0.0;
                for (const cplx& z : w.values) peak = std::max(peak, std::abs(z));
                double rad = 0.0;
                for (std::size_t j = 0; j < w.values.size(); ++j)
                    if (std::abs(w.values[j]) > 1e-9 * peak)
                        rad = std::max(rad, std::abs(w.x0 + w.h * static_cast<double>(j)));
                return rad * 1.2 + 1.0;
            }
        },
        phi.v);
}

}  // namespace

Window mu_apply(const SL2Matrix& A, const Window& phi, const MuGrid& grid) {
    if (const auto* g = std::get_if<GeneralizedGaussian>(&phi.v)) {
        const cplx w2 = (A.d * g->w + A.c) / (A.b * g->w + A.a);
        Window out = gaussian_window(w2, std::sqrt(g->norm_sq));
        return out;
    }
    if (std::abs(A.b) <= 1e-12) {
        // mu(A) = Chirp(c/a) Dilation(a): no Fourier stage
        const double g = A.c / A.a;
        if (const auto* si = std::get_if<Sampled>(&phi.v)) {
            // exact regrid, as in the b != 0 branch below
            const double rr = si->x0 / si->h + static_cast<double>(si->values.size()) / 2.0;
            if (std::abs(rr - std::round(rr)) <= 1e-9) {
                if (aliased_mass_fraction(*si, A.a, g, std::abs(A.a) * si->h) > 1e-8)
                    throw GridAliasing("chirped bandwidth exceeds the sample grid");
                const auto n = static_cast<std::int64_t>(si->values.size());
                const auto roll = static_cast<std::int64_t>(std::llround(rr));
                const double h = std::abs(A.a) * si->h;
                const double amp = 1.0 / std::sqrt(std::abs(A.a));
                std::vector<cplx> v(si->values.size());
                for (std::int64_t j = 0; j < n; ++j) {
                    const double x = (static_cast<double>(j) - static_cast<double>(n) / 2.0) * h;
                    std::int64_t src = A.a > 0 ? j : (n - j) % n;
                    src = ((src - roll) % n + n) % n;
                    v[static_cast<std::size_t>(j)] = amp * si->values[static_cast<std::size_t>(src)] *
                                                     std::exp(cplx(0.0, pi * g * x * x));
                }
                return sampled_window(h, -h * static_cast<double>(n) / 2.0, std::move(v));
            }
        }
        const int N = 1 << std::min(grid.log2n, 14);
        const double T = grid.period;
        const double h = T / N;
        std::vector<cplx> v(N);
        for (int j = 0; j < N; ++j) {
            const double x = (j - N / 2) * h;
            v[j] = chirped_dilated(phi, g, A.a, x);
        }
        return sampled_window(h, -T / 2.0, std::move(v));
    }
    const double s = -1.0 / A.b;
    const double g1 = A.d / A.b, g2 = A.a * A.b;
    std::size_t N;
    double T, h;
    std::vector<cplx> u;
    const auto* sp = std::get_if<Sampled>(&phi.v);
    // For a sampled input the dilation stage is an exact regrid: h' = |s| h,
    // same N, index reversal for s < 0; every stage is then unitary on the
    // grid, so chains of mu_apply compose without resampling loss. Requires
    // the input grid to be centered up to a whole number of steps.
    const double roll_real = sp ? (sp->x0 / sp->h + static_cast<double>(sp->values.size()) / 2.0) : 0.0;
    if (sp && std::abs(roll_real - std::round(roll_real)) <= 1e-9) {
        N = sp->values.size();
        h = std::abs(s) * sp->h;
        T = h * static_cast<double>(N);
        if (aliased_mass_fraction(*sp, s, g2, h) > 1e-8)
            throw GridAliasing("chirped bandwidth exceeds the sample grid");
        const auto roll = static_cast<std::int64_t>(std::llround(roll_real));
        u.resize(N);
        const double amp = 1.0 / std::sqrt(std::abs(s));
        const auto n = static_cast<std::int64_t>(N);
        for (std::int64_t j = 0; j < n; ++j) {
            const double x = (static_cast<double>(j) - static_cast<double>(N) / 2.0) * h;
            // centered source index, reversed when s flips orientation
            std::int64_t src = s > 0 ? j : (n - j) % n;
            src = ((src - roll) % n + n) % n;
            u[static_cast<std::size_t>(j)] =
                amp * sp->values[static_cast<std::size_t>(src)] * std::exp(cplx(0.0, pi * g2 * x * x));
        }
    } else {
        const double supp = window_support_radius(phi) * std::abs(s);
        T = grid.period;
        // resampling a trig interpolant costs O(N_in) per point, so cap N there
        int log2n = sp ? std::min(grid.log2n, 13) : grid.log2n;
        while (T < 4.0 * supp && (sp ? T < 4096.0 : log2n < 22)) {
            T *= 2.0;
            if (!sp) ++log2n;  // keep the grid step fixed while widening
        }
        if (T < 3.0 * supp) throw GridAliasing("dilated support exceeds the feasible grid period");
        N = 1ULL << log2n;
        h = T / static_cast<double>(N);
        u.resize(N);
        for (std::size_t j = 0; j < N; ++j) {
            const double x = (static_cast<double>(j) - static_cast<double>(N) / 2.0) * h;
            u[j] = chirped_dilated(phi, g2, s, x);
        }
    }
    std::vector<cplx> psi = centered_fourier(std::move(u), h);
    // final chirp on the frequency grid xi_k = (k - N/2)/T
    for (std::size_t k = 0; k < N; ++k) {
        const double xi = (static_cast<double>(k) - static_cast<double>(N) / 2.0) / T;
        psi[k] *= std::exp(cplx(0.0, pi * g1 * xi * xi));
    }
    Window out = sampled_window(1.0 / T, -static_cast<double>(N) / (2.0 * T), std::move(psi));
    if (std::abs(out.norm_sq - phi.norm_sq) > 1e-6 * std::max(1.0, phi.norm_sq))
        throw GridAliasing("norm not preserved by the grid pipeline");
    return out;
}

CovarianceReport verify_covariance(const Window& phi, const SL2Matrix& A, const Lattice2D& L,
                                   const std::vector<IPt>& test_points, const MuGrid& grid) {
    const Window psi = mu_apply(A, phi, grid);
    double worst = 0.0;
    for (const IPt& p : test_points) {
        const Vec2 lam = L.embed(p);
        const Vec2 gam = A * lam;
        const double lhs = std::abs(kernel_value(phi, lam));
        const double rhs = std::abs(kernel_value(psi, gam));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return {worst, static_cast<int>(test_points.size())};
}

}  // namespace gabor
