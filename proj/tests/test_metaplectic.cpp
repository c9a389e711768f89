#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gabor/metaplectic.hpp"

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

SL2Matrix random_sl2(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double th = 3.0 * u(rng), sh = u(rng), sc = std::exp(0.5 * u(rng));
    return SL2Matrix{sc, 0, 0, 1 / sc} * SL2Matrix{1, sh, 0, 1} *
           SL2Matrix{std::cos(th), -std::sin(th), std::sin(th), std::cos(th)};
}

std::vector<IPt> disk_points(double r) {
    std::vector<IPt> pts;
    for (int x = -8; x <= 8; ++x)
        for (int y = -8; y <= 8; ++y)
            if (x * x + y * y <= r * r) pts.push_back({x, y});
    return pts;
}
}  // namespace

TEST_CASE("mu_factorize reproduces the matrix") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        const SL2Matrix A = random_sl2(rng);
        CHECK((mu_factorize(A).product() - A.mat()).norm() <= 1e-10);
    }
    // b = 0 branch
    const SL2Matrix P{2.0, 0.0, 0.7, 0.5};
    CHECK((mu_factorize(P).product() - P.mat()).norm() <= 1e-12);
    CHECK((mu_factorize(SL2Matrix{}).product() - Mat2::Identity()).norm() == 0.0);
}

TEST_CASE("gaussian Mobius action") {
    const Window g = gaussian_window({0, 1});
    // identity and Fourier flip fix the standard Gaussian
    const Window gi = mu_apply(SL2Matrix{}, g);
    CHECK(std::get<GeneralizedGaussian>(gi.v).w == cplx(0, 1));
    const Window gf = mu_apply(SL2Matrix{0, -1, 1, 0}, g);
    CHECK(std::abs(std::get<GeneralizedGaussian>(gf.v).w - cplx(0, 1)) <= 1e-12);
    CHECK(gf.norm_sq == doctest::Approx(1.0));
    // dilation diag(2, 1/2): w' = w / 4
    const Window gd = mu_apply(SL2Matrix{2, 0, 0, 0.5}, g);
    CHECK(std::abs(std::get<GeneralizedGaussian>(gd.v).w - cplx(0, 0.25)) <= 1e-12);
    // chirp [[1,0],[c,1]]: w' = w + c
    const Window gc = mu_apply(SL2Matrix{1, 0, 0.7, 1}, g);
    CHECK(std::abs(std::get<GeneralizedGaussian>(gc.v).w - cplx(0.7, 1)) <= 1e-12);
    // group action: mu(A1 A2) = mu(A1) mu(A2) on Gaussians
    std::mt19937_64 rng(12);
    for (int i = 0; i < 100; ++i) {
        const SL2Matrix A1 = random_sl2(rng), A2 = random_sl2(rng);
        const Window a = mu_apply(A1 * A2, g);
        const Window b = mu_apply(A1, mu_apply(A2, g));
        CHECK(std::abs(std::get<GeneralizedGaussian>(a.v).w - std::get<GeneralizedGaussian>(b.v).w) <=
              1e-10);
        CHECK(std::abs(a.norm_sq - b.norm_sq) <= 1e-10);
    }
}

TEST_CASE("gaussian covariance") {
    const Window g = gaussian_window({0, 1});
    const auto rep =
        verify_covariance(g, SL2Matrix{2, 0, 0, 0.5}, diag(s2, s2), disk_points(3.0));
    CHECK(rep.max_modulus_deviation <= 1e-8);
    std::mt19937_64 rng(13);
    for (int i = 0; i < 20; ++i) {
        const auto r = verify_covariance(g, random_sl2(rng), diag(s2, s2), disk_points(2.5));
        CHECK(r.max_modulus_deviation <= 1e-8);
    }
}

TEST_CASE("pipeline covariance for the painless window") {
    const Window w = suite_window();
    const SL2Matrix shear{1, 0.8, 0, 1};
    const auto rep = verify_covariance(w, shear, diag(s2, s2), disk_points(3.0));
    CHECK(rep.max_modulus_deviation <= 1e-6);
    const SL2Matrix rot{std::cos(0.6), -std::sin(0.6), std::sin(0.6), std::cos(0.6)};
    const auto rep2 = verify_covariance(w, rot, diag(s2, s2), disk_points(3.0));
    CHECK(rep2.max_modulus_deviation <= 1e-6);
}

TEST_CASE("pipeline unitarity and round trip") {
    const Window w = suite_window();
    const SL2Matrix shear{1, 0.8, 0, 1};
    const Window u = mu_apply(shear, w);
    CHECK(u.norm_sq == doctest::Approx(w.norm_sq).epsilon(1e-8));
    const Window back = mu_apply(shear.inverse(), u);
    CHECK(back.norm_sq == doctest::Approx(w.norm_sq).epsilon(1e-8));
    // kernel values survive the round trip
    // the cubic Fourier tail of the C^1 window wraps once on the second grid,
    // so the chain is a touch looser than a single application
    for (auto [q, p] : {std::pair{s2, 0.0}, {0.3, 0.7}, {0.0, s2}}) {
        const cplx want = kernel_value(w, {q, p});
        const cplx got = kernel_value(back, {q, p});
        CHECK(std::abs(std::abs(want) - std::abs(got)) <= 2e-6);
    }
}

TEST_CASE("pipeline homomorphism on moduli") {
    const Window g = gaussian_window({0.2, 1.3});
    std::mt19937_64 rng(14);
    const auto pts = disk_points(2.5);
    const Lattice2D L = diag(s2, s2);
    for (int i = 0; i < 5; ++i) {
        const SL2Matrix A1 = random_sl2(rng), A2 = random_sl2(rng);
        const Window a = mu_apply(A1 * A2, g);
        const Window b = mu_apply(A1, mu_apply(A2, g));
        const Mat2 M = (A1 * A2).mat();
        for (const IPt& p : pts) {
            const Vec2 x = M * L.embed(p);
            CHECK(std::abs(std::abs(kernel_value(a, x)) - std::abs(kernel_value(b, x))) <= 1e-6);
        }
    }
}

TEST_CASE("grid aliasing guard") {
    const Window w = suite_window();
    // b -> 0 sends the dilated support past any feasible grid period
    CHECK_THROWS_AS(mu_apply(SL2Matrix{1, 1e-4, 0, 1}, w), GridAliasing);
}

TEST_CASE("sampled fourier flip and round trip") {
    // even real Gaussian samples: mu(J) equals the real Fourier transform
    const int N = 1 << 12;
    const double h = 1.0 / 64.0, x0 = -N / 2 * h;
    const double c = std::pow(2.0, 0.25);
    std::vector<cplx> vals(N);
    for (int j = 0; j < N; ++j) {
        const double x = x0 + j * h;
        vals[j] = c * std::exp(-kPi * x * x);
    }
    const Window s = sampled_window(h, x0, vals);
    const SL2Matrix J{0, -1, 1, 0};
    const Window f = mu_apply(J, s);
    const auto& fd = std::get<Sampled>(f.v);
    for (double xi : {0.0, 0.25, 1.0, -1.5}) {
        CHECK(std::abs(sampled_eval(fd, xi) - c * std::exp(-kPi * xi * xi)) <= 1e-9);
    }

    // identity: samples unchanged
    const Window id = mu_apply(SL2Matrix{}, s);
    const auto& idd = std::get<Sampled>(id.v);
    CHECK(idd.h == doctest::Approx(h));
    for (int j = 0; j < N; j += 37) CHECK(std::abs(sampled_eval(idd, x0 + j * h) - vals[j]) <= 1e-10);

    // shear then its inverse: round trip on the samples within 1e-7
    const SL2Matrix shear{1, 0.6, 0, 1};
    const Window rt = mu_apply(shear.inverse(), mu_apply(shear, s));
    CHECK(rt.norm_sq == doctest::Approx(s.norm_sq).epsilon(1e-10));
    const auto& rtd = std::get<Sampled>(rt.v);
    for (double x : {0.0, 0.3, -1.0, 2.0}) {
        CHECK(std::abs(sampled_eval(rtd, x) - c * std::exp(-kPi * x * x)) <= 1e-7);
    }
}
