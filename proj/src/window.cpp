#include "gabor/window.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "gabor/fft.hpp"
#include "gabor/quadrature.hpp"

namespace gabor {

namespace {
constexpr double pi = std::numbers::pi;

double ramp_profile(double u) {  // r(u) = sin^2(pi u / 2)
    const double s = std::sin(0.5 * pi * u);
    return s * s;
}
}  // namespace

double PainlessBump::eval(double x) const {
    const double sb = std::sqrt(b);
    if (x <= 0.0 || x >= a + ramp) return 0.0;
    if (x < ramp) return sb * std::sin(0.5 * pi * ramp_profile(x / ramp));
    if (x <= a) return sb;
    return sb * std::cos(0.5 * pi * ramp_profile((x - a) / ramp));
}

Window painless_window(double a, double b, double L, double ramp) {
    if (!(a > 0 && b > 0 && a < L && L <= 1.0 / b + 1e-12))
        throw ParameterViolation("painless window requires 0 < a < L <= 1/b");
    if (!(ramp > 0 && ramp <= L - a + 1e-12 && ramp <= a))
        throw ParameterViolation("painless ramp must satisfy 0 < ramp <= min(a, L - a)");
    PainlessBump w{a, b, L, ramp};
    Window out{w, a * b, std::make_pair(a, b)};
    return out;
}

Window gaussian_window(cplx w, double norm) {
    if (!(w.imag() > 0)) throw ParameterViolation("generalized Gaussian requires Im w > 0");
    if (!(norm > 0)) throw ParameterViolation("norm must be positive");
    return {GeneralizedGaussian{w, norm * norm}, norm * norm, std::nullopt};
}

Window sampled_window(double h, double x0, std::vector<cplx> values) {
    if (values.empty() || (values.size() & (values.size() - 1)) != 0)
        throw ParameterViolation("sampled window needs a power-of-two sample count");
    Sampled s;
    s.h = h;
    s.x0 = x0;
    s.spectrum = values;
    fft_radix2(s.spectrum, false);
    s.values = std::move(values);
    KahanSum n2;
    for (const cplx& z : s.values) n2.add(std::norm(z));
    const double norm_sq = n2.get() * h;
    return {std::move(s), norm_sq, std::nullopt};
}

cplx sampled_eval(const Sampled& s, double x) {
    const std::size_t N = s.values.size();
    const double T = s.period();
    KahanSumC acc;
    for (std::size_t k = 0; k < N; ++k) {
        const double kt = k < N / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(N);
        acc.add(s.spectrum[k] * std::exp(cplx(0.0, 2.0 * pi * kt * (x - s.x0) / T)));
    }
    return acc.get() / static_cast<double>(N);
}

std::vector<cplx> sampled_shift(const Sampled& s, double q) {
    const std::size_t N = s.values.size();
    const double T = s.period();
    std::vector<cplx> w(N);
    for (std::size_t k = 0; k < N; ++k) {
        const double kt = k < N / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(N);
        w[k] = s.spectrum[k] * std::exp(cplx(0.0, -2.0 * pi * kt * q / T));
    }
    fft_radix2(w, true);
    return w;
}

namespace {

cplx kernel_painless(const PainlessBump& w, double q, double p) {
    const double S = w.support();
    const double lo = std::max(0.0, q), hi = std::min(S, S + q);
    if (hi <= lo) return {0.0, 0.0};
    // breakpoints of phi(x) and phi(x-q); panels between them are analytic
    std::vector<double> bp{lo, hi};
    for (double t : {0.0, w.ramp, w.a, S, q, q + w.ramp, q + w.a, q + S})
        if (t > lo && t < hi) bp.push_back(t);
    std::sort(bp.begin(), bp.end());
    KahanSumC acc;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i)
        acc.add(integrate_panel(
            [&](double x) { return w.eval(x) * w.eval(x - q) * std::exp(cplx(0.0, -2.0 * pi * p * x)); },
            bp[i], bp[i + 1], std::abs(p)));
    return acc.get();
}

cplx kernel_gaussian(const GeneralizedGaussian& g, double q, double p) {
    const double v = g.w.imag();
    const cplx wbar = std::conj(g.w);
    const cplx beta = wbar * q - p;
    return g.norm_sq * std::exp(-pi * beta * beta / (2.0 * v) - cplx(0.0, pi) * wbar * (q * q));
}

cplx kernel_sampled(const Sampled& s, double q, double p) {
    const std::vector<cplx> sh = sampled_shift(s, q);
    const std::size_t N = s.values.size();
    KahanSumC acc;
    for (std::size_t j = 0; j < N; ++j) {
        const double x = s.x0 + s.h * static_cast<double>(j);
        acc.add(s.values[j] * std::conj(sh[j] * std::exp(cplx(0.0, 2.0 * pi * p * x))));
    }
    return acc.get() * s.h;
}

}  // namespace

cplx kernel_value(const Window& phi, const Vec2& lambda) {
    const double q = lambda.x(), p = lambda.y();
    return std::visit(
        [&](const auto& w) -> cplx {
            using T = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<T, PainlessBump>) return kernel_painless(w, q, p);
            if constexpr (std::is_same_v<T, GeneralizedGaussian>) return kernel_gaussian(w, q, p);
            if constexpr (std::is_same_v<T, Sampled>) return kernel_sampled(w, q, p);
        },
        phi.v);
}

namespace {

// Upper envelope of F on embedded points, used only for tail certification.
struct Envelope {
    const Window& phi;
    // painless: per-column fit |K| <= C_q / (1+|p|^3) (the window is C^1 with
    // second-derivative jumps, so the oscillatory integral decays cubically);
    // the fitted constant carries a factor-2 safety margin.
    std::map<std::int64_t, double> col_C;  // key: round(q / eps)
    double support = 0.0;

    explicit Envelope(const Window& w, const std::vector<std::pair<Vec2, double>>& computed) : phi(w) {
        if (const auto* pb = std::get_if<PainlessBump>(&w.v)) {
            support = pb->support();
            for (const auto& [pt, F] : computed) {
                const std::int64_t key = llround(pt.x() * 1e9);
                const double ap = std::abs(pt.y());
                const double c = 2.0 * std::sqrt(F) * (1.0 + ap * ap * ap);
                auto it = col_C.find(key);
                if (it == col_C.end() || it->second < c) col_C[key] = c;
            }
        }
    }

    double operator()(const Vec2& pt) const {
        if (const auto* g = std::get_if<GeneralizedGaussian>(&phi.v)) {
            return std::norm(kernel_gaussian(*g, pt.x(), pt.y()));
        }
        if (std::holds_alternative<PainlessBump>(phi.v)) {
            if (std::abs(pt.x()) >= support) return 0.0;
            auto it = col_C.find(llround(pt.x() * 1e9));
            if (it == col_C.end()) return 0.0;  // column never seen => zero column
            const double ap = std::abs(pt.y());
            const double e = it->second / (1.0 + ap * ap * ap);
            return e * e;
        }
        // sampled: evaluate the kernel itself (cheap on the small grids used)
        return std::norm(kernel_value(phi, pt));
    }
};

}  // namespace

const double* KernelTable::find(const IPt& p) const {
    auto it = std::lower_bound(values.begin(), values.end(), p,
                               [](const KernelEntry& e, const IPt& q) { return e.p < q; });
    if (it != values.end() && it->p == p) return &it->F;
    return nullptr;
}

KernelTable kernel_table(const Window& phi, const Lattice2D& L, double tol, bool with_phases) {
    if (!(tol > 0)) throw BadRange("kernel_table: tol must be positive");
    double r = 8.0;
    if (const auto* pb = std::get_if<PainlessBump>(&phi.v)) r = std::max(r, 2.0 * pb->support());
    for (int attempt = 0; attempt < 8; ++attempt, r *= 2.0) {
        KernelTable T;
        T.lattice = L;
        T.radius = r;
        T.norm_sq = phi.norm_sq;
        std::vector<std::pair<Vec2, double>> computed;
        for (const IPt& p : enumerate_in_disk(L, r)) {
            const Vec2 x = L.embed(p);
            const cplx k = kernel_value(phi, x);
            computed.emplace_back(x, std::norm(k));
            // exactly-zero entries (disjoint supports) carry no information and
            // would dominate the table on large disks
            if (std::norm(k) == 0.0) continue;
            T.values.push_back({p, std::norm(k)});
            if (with_phases) T.phases.emplace(p, k);
        }
        // Tail certificate: sum the fitted envelope over two annuli and close
        // the geometric series (decay at least as fast as the measured ratio).
        const Envelope env(phi, computed);
        KahanSum a1, a2;
        for (const IPt& p : enumerate_in_disk(L, 4.0 * r)) {
            const Vec2 x = L.embed(p);
            const double n = x.norm();
            if (n <= r) continue;
            const double c = env(x) * (1.0 + n);
            if (n <= 2.0 * r)
                a1.add(c);
            else
                a2.add(c);
        }
        const double A1 = a1.get(), A2 = a2.get();
        if (A1 + A2 == 0.0) {
            T.tail_bound = 0.0;
        } else {
            const double rho = A1 > 0 ? A2 / A1 : 1.0;
            if (rho >= 0.75) continue;  // not geometric yet, enlarge radius
            T.tail_bound = A1 / (1.0 - rho);
        }
        if (T.tail_bound > tol) continue;
        T.tight = phi.tight_on && std::abs(phi.norm_sq - L.area) <= 1e-6 &&
                  std::abs(L.basis(0, 0) - phi.tight_on->first) <= 1e-9 &&
                  std::abs(L.basis(1, 1) - phi.tight_on->second) <= 1e-9 &&
                  std::abs(L.basis(0, 1)) <= 1e-12 && std::abs(L.basis(1, 0)) <= 1e-12;
        return T;
    }
    throw ConditionPhiDivergence("kernel tail cannot be certified at the requested tolerance");
}

KernelTable retarget(const KernelTable& T, const Lattice2D& L) {
    KernelTable R = T;
    R.lattice = L;
    const double s = (L.basis * T.lattice.basis.inverse()).operatorNorm();
    R.tail_bound = T.tail_bound * std::max(1.0, s);
    return R;
}

double condition_phi_sum(const KernelTable& T) {
    KahanSum acc;
    for (const KernelEntry& e : T.values) acc.add(e.F * T.lattice.embed(e.p).norm());
    return acc.get() + T.tail_bound;
}

namespace {

struct GaussMix {
    struct Term {
        cplx c;
        double alpha;
        double mu;
    };
    std::vector<Term> terms;

    cplx eval(double x) const {
        cplx s = 0.0;
        for (const auto& t : terms) s += t.c * std::exp(-t.alpha * (x - t.mu) * (x - t.mu));
        return s;
    }
    // effective support: outside it every term is below 1e-16 in magnitude
    std::pair<double, double> bounds() const {
        double lo = 1e300, hi = -1e300;
        for (const auto& t : terms) {
            const double w = std::sqrt(37.0 / t.alpha);
            lo = std::min(lo, t.mu - w);
            hi = std::max(hi, t.mu + w);
        }
        return {lo, hi};
    }
    double norm_sq() const {
        cplx s = 0.0;
        for (const auto& t1 : terms)
            for (const auto& t2 : terms) {
                const double A = t1.alpha + t2.alpha;
                const double B = 2.0 * (t1.alpha * t1.mu + t2.alpha * t2.mu);
                const double C = -t1.alpha * t1.mu * t1.mu - t2.alpha * t2.mu * t2.mu;
                s += t1.c * std::conj(t2.c) * gaussian_integral(A, B, C);
            }
        return s.real();
    }
};

// <f, phi_lambda> for the three variants.
cplx analysis_coeff(const GaussMix& f, const Window& phi, double q, double p) {
    if (const auto* g = std::get_if<GeneralizedGaussian>(&phi.v)) {
        const double v = g->w.imag();
        const double c = std::sqrt(g->norm_sq * std::sqrt(2.0 * v));
        cplx s = 0.0;
        for (const auto& t : f.terms) {
            const cplx A = t.alpha + cplx(0.0, pi) * std::conj(g->w);
            const cplx B = 2.0 * t.alpha * t.mu + cplx(0.0, 2.0 * pi) * std::conj(g->w) * q - cplx(0.0, 2.0 * pi) * p;
            const cplx C = -t.alpha * t.mu * t.mu - cplx(0.0, pi) * std::conj(g->w) * q * q;
            s += t.c * gaussian_integral(A, B, C);
        }
        return s * c;
    }
    if (const auto* pb = std::get_if<PainlessBump>(&phi.v)) {
        const double S = pb->support();
        const auto [flo, fhi] = f.bounds();
        if (q + S < flo || q > fhi) return {0.0, 0.0};
        std::vector<double> bp{q, q + pb->ramp, q + pb->a, q + S};
        KahanSumC acc;
        for (std::size_t i = 0; i + 1 < bp.size(); ++i)
            acc.add(integrate_panel(
                [&](double x) { return f.eval(x) * pb->eval(x - q) * std::exp(cplx(0.0, -2.0 * pi * p * x)); },
                bp[i], bp[i + 1], std::abs(p) + 1.0));
        return acc.get();
    }
    const auto& s = std::get<Sampled>(phi.v);
    const std::vector<cplx> sh = sampled_shift(s, q);
    KahanSumC acc;
    for (std::size_t j = 0; j < s.values.size(); ++j) {
        const double x = s.x0 + s.h * static_cast<double>(j);
        acc.add(f.eval(x) * std::conj(sh[j] * std::exp(cplx(0.0, 2.0 * pi * p * x))));
    }
    return acc.get() * s.h;
}

// Painless fast path: for each column q = k a, sample g(x) = f(x) phi(x - q)
// (compactly supported) and read all the frequency coefficients <f, phi_{q, l b}>
// off one DFT; the grid is chosen so that l b lands exactly on DFT bins.
double painless_analysis_energy(const GaussMix& f, const PainlessBump& w) {
    const double S = w.support();
    const auto [flo, fhi] = f.bounds();
    const int K = static_cast<int>(std::ceil(w.b * (S + 0.5))) + 1;
    const double Tg = K / w.b;
    const std::size_t M = 1 << 14;
    const double hg = Tg / static_cast<double>(M);
    const std::size_t lmax = (M / 2) / static_cast<std::size_t>(K) - 1;
    KahanSum total;
    const std::int64_t kmin = static_cast<std::int64_t>(std::floor((flo - S) / w.a));
    const std::int64_t kmax = static_cast<std::int64_t>(std::ceil(fhi / w.a));
    std::vector<cplx> g(M);
    for (std::int64_t k = kmin; k <= kmax; ++k) {
        const double q = k * w.a;
        for (std::size_t j = 0; j < M; ++j) {
            const double x = q + j * hg;
            g[j] = (x - q < S) ? f.eval(x) * w.eval(x - q) : cplx(0.0);
        }
        fft_radix2(g, false);
        KahanSum col;
        for (std::size_t l = 0; l <= lmax; ++l) {
            col.add(std::norm(g[l * K] * hg));
            if (l > 0) col.add(std::norm(g[M - l * K] * hg));
        }
        total.add(col.get());
    }
    return total.get();
}

}  // namespace

// A periodized sample vector is the discrete Gabor model: coefficients do not
// decay along q, so tightness is checked as the exact frame identity on its
// own grid (shifts cyclic, frequencies l b covering the full discrete range).
double sampled_analysis_deviation(const GaussMix& f, const Sampled& s, double a, double b) {
    const std::size_t N = s.values.size();
    const double ma_real = a / s.h, nb_real = 1.0 / (b * s.h);
    const auto ma = static_cast<std::size_t>(std::llround(ma_real));
    const auto nb = static_cast<std::size_t>(std::llround(nb_real));
    if (ma == 0 || std::abs(ma_real - static_cast<double>(ma)) > 1e-9 ||
        std::abs(nb_real - static_cast<double>(nb)) > 1e-9 || N % ma != 0)
        throw DiscretizationTooCoarse("sample grid incommensurable with the lattice");
    std::vector<cplx> fv(N);
    KahanSum n2h;
    for (std::size_t j = 0; j < N; ++j) {
        fv[j] = f.eval(s.x0 + s.h * static_cast<double>(j));
        n2h.add(std::norm(fv[j]));
    }
    KahanSum energy;
    for (std::size_t k = 0; k < N / ma; ++k) {
        for (std::size_t l = 0; l < nb; ++l) {
            KahanSumC coeff;
            for (std::size_t j = 0; j < N; ++j) {
                const double x = s.x0 + s.h * static_cast<double>(j);
                const cplx mod = std::exp(cplx(0.0, -2.0 * pi * static_cast<double>(l) * b * x));
                coeff.add(fv[j] * std::conj(s.values[(j + N - k * ma) % N]) * mod);
            }
            energy.add(std::norm(coeff.get()) * s.h);
        }
    }
    return std::abs(energy.get() / n2h.get() - 1.0);
}

TightnessReport verify_tightness(const Window& phi, const Lattice2D& L, int n_tests, std::uint64_t seed) {
    if (n_tests < 1) throw BadRange("verify_tightness: n_tests >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uc(-1.0, 1.0), umu(0.0, 2.0), ua(0.5, 3.0);
    const auto* pb = std::get_if<PainlessBump>(&phi.v);
    const auto* sp = std::get_if<Sampled>(&phi.v);
    const bool separated = std::abs(L.basis(0, 1)) < 1e-12 && std::abs(L.basis(1, 0)) < 1e-12;
    if (sp && !separated)
        throw ParameterViolation("sampled windows verify only on separated lattices");
    double worst = 0.0;
    for (int t = 0; t < n_tests; ++t) {
        GaussMix f;
        for (int m = 0; m < 3; ++m) f.terms.push_back({cplx(uc(rng), uc(rng)), ua(rng), umu(rng)});
        const double n2 = f.norm_sq();
        if (pb && separated && std::abs(L.basis(0, 0) - pb->a) < 1e-12 &&
            std::abs(L.basis(1, 1) - pb->b) < 1e-12) {
            worst = std::max(worst, std::abs(painless_analysis_energy(f, *pb) / n2 - 1.0));
            continue;
        }
        if (sp) {
            worst = std::max(worst, sampled_analysis_deviation(f, *sp, L.basis(0, 0), L.basis(1, 1)));
            continue;
        }
        KahanSum total;
        double r_prev = 0.0;
        for (double r = 8.0; r <= 512.0; r *= 2.0) {
            KahanSum shell;
            for (const IPt& pt : enumerate_in_disk(L, r)) {
                const Vec2 x = L.embed(pt);
                if (x.norm() <= r_prev) continue;
                shell.add(std::norm(analysis_coeff(f, phi, x.x(), x.y())));
            }
            total.add(shell.get());
            r_prev = r;
            if (r > 8.0 && shell.get() < 1e-8 * n2) break;
        }
        worst = std::max(worst, std::abs(total.get() / n2 - 1.0));
    }
    return {worst, n_tests};
}

Window canonical_tight(const Window& phi, const Lattice2D& L, const TighteningGrid& grid) {
    if (std::abs(L.basis(0, 1)) > 1e-12 || std::abs(L.basis(1, 0)) > 1e-12)
        throw ParameterViolation("canonical_tight expects a separated lattice a Z x b Z");
    const double a = L.basis(0, 0), b = L.basis(1, 1);
    if (!(a > 0 && b > 0)) throw ParameterViolation("lattice steps must be positive");
    if (L.area >= 1.0 - 1e-12) throw NotAFrame("no Gabor frames exist for lattice area >= 1");
    const int Ma = grid.steps_per_shift, Na = grid.shifts_per_period;
    const double h = a / Ma;
    const double T = Na * a;
    const int N = Na * Ma;
    const double nb_real = 1.0 / (b * h);
    const int Nb = static_cast<int>(std::llround(nb_real));
    if (std::abs(nb_real - Nb) > 1e-9 * Nb)
        throw DiscretizationTooCoarse("grid step incommensurable with the frequency step");

    // periodized samples of phi on x_j = j h, j = 0..N-1
    Eigen::VectorXcd w0(N);
    for (int j = 0; j < N; ++j) {
        const double x = j * h;
        cplx s = 0.0;
        for (int m = -2; m <= 2; ++m) {
            const double xs = x + m * T;
            std::visit(
                [&](const auto& w) {
                    using V = std::decay_t<decltype(w)>;
                    if constexpr (std::is_same_v<V, PainlessBump>) s += w.eval(xs);
                    if constexpr (std::is_same_v<V, GeneralizedGaussian>) {
                        const double c = std::sqrt(w.norm_sq * std::sqrt(2.0 * w.w.imag()));
                        s += c * std::exp(cplx(0.0, pi) * w.w * (xs * xs));
                    }
                    if constexpr (std::is_same_v<V, Sampled>) s += sampled_eval(w, xs);
                },
                phi.v);
        }
        w0(j) = s;
    }

    // discrete frame operator S = h * sum_lambda phi_lambda phi_lambda^H
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(N, N);
    Eigen::VectorXcd v(N);
    for (int k = 0; k < Na; ++k) {
        for (int l = 0; l < Nb; ++l) {
            for (int j = 0; j < N; ++j) {
                const int src = ((j - k * Ma) % N + N) % N;
                v(j) = w0(src) * std::exp(cplx(0.0, 2.0 * pi * l * b * (j * h)));
            }
            S.selfadjointView<Eigen::Lower>().rankUpdate(v, h);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S);
    const auto& ev = es.eigenvalues();
    if (ev(0) < 1e-8 * ev(N - 1)) throw NotAFrame("discrete frame operator is numerically singular");
    Eigen::VectorXd inv_sqrt = ev.array().rsqrt();
    Eigen::VectorXcd wt = es.eigenvectors() * (inv_sqrt.asDiagonal() * (es.eigenvectors().adjoint() * w0));

    Window out = sampled_window(h, 0.0, std::vector<cplx>(wt.data(), wt.data() + N));
    const TightnessReport rep = verify_tightness(out, L, 4);
    if (rep.max_relative_deviation > grid.tol)
        throw DiscretizationTooCoarse("tightness residual exceeds tolerance after S^{-1/2}");
    out.tight_on = std::make_pair(a, b);
    return out;
}

}  // namespace gabor
