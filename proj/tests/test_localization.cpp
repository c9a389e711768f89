#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gabor/localization.hpp"

using namespace gabor;

namespace {
constexpr double kPi = 3.14159265358979323846;
const double s2 = 1.0 / std::sqrt(2.0);

Lattice2D diag(double a, double b) {
    Mat2 m;
    m << a, 0, 0, b;
    return lattice_from_basis(m);
}

Window suite_window() {
    const double L = 1.0 / s2;
    return painless_window(s2, s2, L, std::min(s2, L - s2));
}

LatticeCycle rect(IPt lo, IPt hi) {
    return {{lo, {hi.x, lo.y}, hi, {lo.x, hi.y}}};
}

struct Fixture {
    Window w = suite_window();
    Lattice2D L = diag(s2, s2);
    KernelTable T = kernel_table(w, L, 1e-10);
};
const Fixture& fx() {
    static Fixture f;
    return f;
}
}  // namespace

TEST_CASE("pf on trivial regions") {
    const auto& f = fx();
    // empty region: shrink a unit cell until it holds no lattice point
    const auto cell = domain_from_cycles(rect({1, 1}, {2, 2}), {}, f.L);
    const auto empty = dilate(cell, 0.4);
    CHECK(lattice_points_in(empty).empty());
    CHECK(pf_double_sum(f.T, empty).value == 0.0);
    CHECK(pf_eigen(f.w, f.T, empty).value == 0.0);

    // single point: PF = ||phi||^2 (1 - ||phi||^2)
    const auto origin = dilate(domain_from_cycles(rect({-1, -1}, {1, 1}), {}, f.L), 0.4);
    REQUIRE(lattice_points_in(origin).size() == 1);
    const double want = f.w.norm_sq * (1.0 - f.w.norm_sq);
    CHECK(std::abs(pf_double_sum(f.T, origin).value - want) <= 1e-8);
    CHECK(std::abs(pf_eigen(f.w, f.T, origin).value - want) <= 1e-8);
}

TEST_CASE("pf methods agree on random domains") {
    const auto& f = fx();
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> lo(-9, 0), sz(1, 9);
    for (int i = 0; i < 10; ++i) {
        const IPt a{lo(rng), lo(rng)};
        const IPt b{a.x + sz(rng), a.y + sz(rng)};
        const auto D = dilate(domain_from_cycles(rect(a, b), {}, f.L), 1.0);
        REQUIRE(lattice_points_in(D).size() <= 400);
        const PFResult ds = pf_double_sum(f.T, D);
        std::vector<double> eigs;
        const PFResult ei = pf_eigen(f.w, f.T, D, &eigs);
        CHECK(std::abs(ds.value - ei.value) <= 1e-6 * std::max(1.0, std::abs(ei.value)));
        for (double l : eigs) {
            CHECK(l >= -1e-9);
            CHECK(l <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("pf errors") {
    const auto& f = fx();
    const auto D = dilate(domain_from_cycles(rect({0, 0}, {2, 2}), {}, f.L), 1.0);
    KernelTable loose = f.T;
    loose.tight = false;
    CHECK_THROWS_AS(pf_double_sum(loose, D), NotTight);
    CHECK_THROWS_AS(pf_eigen(f.w, loose, D), NotTight);
    loose.tight = true;
    loose.tail_bound = 1e-3;
    CHECK_THROWS_AS(pf_double_sum(loose, D, 1e-6), TailTooLarge);
    const auto big = dilate(domain_from_cycles(rect({0, 0}, {60, 60}), {}, f.L), 1.0);
    CHECK_THROWS_AS(pf_eigen(f.w, f.T, big), MatrixTooLarge);
}

TEST_CASE("gram matrix against direct quadrature") {
    const auto& f = fx();
    const std::vector<IPt> pts{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {-1, 2}};
    const Eigen::MatrixXcd G = gram_matrix(f.w, pts, f.L);
    // hermitian by construction of the phase identity
    CHECK((G - G.adjoint()).norm() <= 1e-12);
    // oracle: <phi_mu, phi_nu> = int phi(x-q_mu) phi(x-q_nu) e^{2 pi i (p_mu - p_nu) x} dx
    const auto& pb = std::get<PainlessBump>(f.w.v);
    auto brute = [&](const IPt& mu, const IPt& nu) {
        const Vec2 m = f.L.embed(mu), n = f.L.embed(nu);
        const int N = 1 << 18;
        const double lo = std::min(m.x(), n.x()) - 0.1, hi = std::max(m.x(), n.x()) + pb.support() + 0.1;
        const double h = (hi - lo) / N;
        cplx acc = 0;
        for (int j = 0; j <= N; ++j) {
            const double x = lo + j * h;
            const double wgt = (j == 0 || j == N) ? 0.5 : 1.0;
            acc += wgt * pb.eval(x - m.x()) * pb.eval(x - n.x()) *
                   std::exp(cplx(0, 2 * kPi * (m.y() - n.y()) * x));
        }
        return acc * h;
    };
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j)
            CHECK(std::abs(G(i, j) - brute(pts[j], pts[i])) <= 1e-8);
}

TEST_CASE("pf invariant under lattice relabeling") {
    const auto& f = fx();
    // translation + point inversion preserves F(lambda) exactly (evenness),
    // so PF cannot change under the relabeling
    const AutZ2Transform tau{{3, -2}, {-1, -1}, false};
    const LatticeCycle c{{{0, 0}, {3, 0}, {3, 2}, {1, 2}, {1, 1}, {0, 1}}};
    LatticeCycle tc;
    for (const IPt& v : c.vertices) tc.vertices.push_back(tau.apply(v));
    const auto D = dilate(domain_from_cycles(c, {}, f.L), 1.0);
    const auto TD = dilate(domain_from_cycles(tc, {}, f.L), 1.0);
    const PFResult a = pf_double_sum(f.T, D);
    const PFResult b = pf_double_sum(f.T, TD);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));
}

TEST_CASE("multiplier_spectrum") {
    const auto& f = fx();
    // characteristic-function symbol reproduces pf_eigen's spectrum
    const auto D = dilate(domain_from_cycles(rect({0, 0}, {2, 3}), {}, f.L), 1.0);
    SymbolMap chi;
    for (const IPt& p : lattice_points_in(D)) chi.values.emplace_back(p, 1.0);
    std::vector<double> eigs;
    pf_eigen(f.w, f.T, D, &eigs);
    std::vector<double> spec = multiplier_spectrum(f.w, chi, f.L);
    REQUIRE(spec.size() == eigs.size());
    std::sort(spec.begin(), spec.end());
    std::sort(eigs.begin(), eigs.end());
    for (std::size_t i = 0; i < spec.size(); ++i) CHECK(spec[i] == doctest::Approx(eigs[i]).epsilon(1e-10));

    // trace identity: sum of eigenvalues = ||phi||^2 sum b(lambda)
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SymbolMap b;
    double bsum = 0;
    for (int x = 0; x < 7; ++x)
        for (int y = 0; y < 7; ++y) {
            const double v = u(rng);
            b.values.push_back({{x, y}, v});
            bsum += v;
        }
    const auto sp = multiplier_spectrum(f.w, b, f.L);
    double tr = 0;
    for (double l : sp) tr += l;
    CHECK(std::abs(tr - f.w.norm_sq * bsum) <= 1e-8);

    CHECK(multiplier_spectrum(f.w, SymbolMap{}, f.L).empty());
    SymbolMap bad;
    bad.values.push_back({{0, 0}, 1.5});
    CHECK_THROWS_AS(multiplier_spectrum(f.w, bad, f.L), BadRange);
    const Window g = gaussian_window({0, 1});
    CHECK_THROWS_AS(multiplier_spectrum(g, chi, f.L), NotTight);
}
