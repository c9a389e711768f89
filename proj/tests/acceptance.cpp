// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gabor/asymptotics.hpp"
#include "gabor/boundary.hpp"
#include "gabor/io.hpp"
#include "gabor/localization.hpp"
#include "gabor/metaplectic.hpp"

using namespace gabor;
namespace fs = std::filesystem;

namespace {

const double s2 = 1.0 / std::sqrt(2.0);
int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int id, bool ok, const std::string& detail) {
    std::printf("criterion %2d: %s — %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

Lattice2D diag(double a, double b) {
    Mat2 m;
    m << a, 0, 0, b;
    return lattice_from_basis(m);
}

Window suite_window() {
    const double L = 1.0 / s2;
    return painless_window(s2, s2, L, std::min(s2, L - s2));
}

LatticeCycle rect(IPt a, IPt b) {
    return {{{a.x, a.y}, {b.x, a.y}, {b.x, b.y}, {a.x, b.y}}};
}

SL2Matrix random_sl2(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double th = 3.0 * u(rng), sh = u(rng), sc = std::exp(0.5 * u(rng));
    return SL2Matrix{sc, 0, 0, 1 / sc} * SL2Matrix{1, sh, 0, 1} *
           SL2Matrix{std::cos(th), -std::sin(th), std::sin(th), std::cos(th)};
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace

int main() {
    const Window w = suite_window();
    const Lattice2D L = diag(s2, s2);
    const KernelTable T = kernel_table(w, L, 1e-10);
    const LatticeDomain D = domain_from_cycles(rect({0, 0}, {1, 1}), {}, L);

    // 1. tightness of the suite window, 20 random test functions, < 10 s
    {
        const auto t0 = std::chrono::steady_clock::now();
        const TightnessReport r = verify_tightness(w, L, 20);
        const double dt = seconds_since(t0);
        report(1, r.max_relative_deviation <= 1e-6 && dt < 10.0,
               fmt("tightness deviation %.3g over 20 functions in %.2fs", r.max_relative_deviation, dt));
    }

    // 2. norm law ||phi||^2 = A_Lambda for every tight window in the suite
    {
        const Window g = canonical_tight(gaussian_window({0, 1}), diag(0.5, 0.5));
        const double d1 = std::abs(w.norm_sq - L.area);
        const double d2 = std::abs(g.norm_sq - 0.25);
        report(2, d1 <= 1e-6 && d2 <= 1e-6,
               fmt("painless |norm^2 - area| = %.3g, tightened Gaussian %.3g", d1, d2));
    }

    // 3. frame identity on phi itself: sum of F over the lattice equals ||phi||^2
    {
        double sum = 0.0;
        for (const auto& e : T.values) sum += e.F;
        const double dev = std::abs(sum - w.norm_sq);
        report(3, dev <= 1e-6, fmt("|sum F - norm^2| = %.3g", dev));
    }

    // 4. pf_double_sum vs pf_eigen on 10 random domains of <= 400 points
    {
        std::mt19937_64 rng(21);
        std::uniform_int_distribution<int> lo(-9, 0), sz(1, 9);
        double worst = 0.0, eig_lo = 0.0, eig_hi = 1.0;
        for (int i = 0; i < 10; ++i) {
            const IPt a{lo(rng), lo(rng)};
            const IPt b{a.x + sz(rng), a.y + sz(rng)};
            const auto Rg = dilate(domain_from_cycles(rect(a, b), {}, L), 1.0);
            if (lattice_points_in(Rg).size() > 400) { --i; continue; }
            const PFResult ds = pf_double_sum(T, Rg);
            std::vector<double> eigs;
            const PFResult ei = pf_eigen(w, T, Rg, &eigs);
            worst = std::max(worst, std::abs(ds.value - ei.value) / std::max(1.0, std::abs(ei.value)));
            for (double l : eigs) {
                eig_lo = std::min(eig_lo, l);
                eig_hi = std::max(eig_hi, l);
            }
        }
        report(4, worst <= 1e-6 && eig_lo >= -1e-9 && eig_hi <= 1.0 + 1e-9,
               fmt("worst method gap %.3g, eigenvalues in [%.3g, 1+%.3g]", worst, eig_lo, eig_hi - 1.0));
    }

    // 5. single lattice point: PF = ||phi||^2 (1 - ||phi||^2)
    {
        const auto Rg = dilate(domain_from_cycles(rect({-1, -1}, {1, 1}), {}, L), 0.4);
        const double expect = w.norm_sq * (1.0 - w.norm_sq);
        const double d_ds = std::abs(pf_double_sum(T, Rg).value - expect);
        const double d_ei = std::abs(pf_eigen(w, T, Rg).value - expect);
        report(5, lattice_points_in(Rg).size() == 1 && d_ds <= 1e-8 && d_ei <= 1e-8,
               fmt("double_sum off by %.3g, eigen by %.3g", d_ds, d_ei));
    }

    // 6. slope profile equals the exact rational brute force, all coprime n <= 20, < 5 s
    {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        int pairs = 0;
        for (int n = 1; n <= 20 && ok; ++n)
            for (int m = 0; m <= n && ok; ++m) {
                if (std::gcd(m, n) != 1) continue;
                ++pairs;
                const SlopeProfile p = slope_profile(m, n);
                for (int t = 0; t < n && ok; ++t)
                    for (int s = 0; s < n && ok; ++s) {
                        int count = 0;
                        for (int y = -21 * 21; y <= 21 * 21; ++y)
                            if (n * y > m * s && n * y <= m * (t + s)) ++count;
                        ok = p.values(t, s) == count + 1;
                    }
            }
        const double dt = seconds_since(t0);
        report(6, ok && dt < 5.0, fmt("%.0f coprime pairs exact in %.2fs", double(pairs), dt));
    }

    // 7. geometric atom closed form, 1000 random instances
    {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> u(0.2, 2.0);
        std::uniform_int_distribution<int> zi(-6, 6);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double a = u(rng), b = u(rng);
            const int n = zi(rng), m = zi(rng), k = zi(rng), l = zi(rng);
            if (n == 0 && m == 0) { --i; continue; }
            const double atom = geometric_atom(Vec2(0, 0), Vec2(n * a, m * b), Vec2(k * a, l * b));
            const double exact = a * b * std::abs(n * l - m * k);
            worst = std::max(worst, std::abs(atom - exact) / std::max(1.0, exact));
        }
        report(7, worst <= 1e-10, fmt("worst relative error %.3g over 1000 instances", worst));
    }

    // 8. SL(2,R) invariance of BF and of the PF rows, 20 random A, < 60 s
    {
        const auto t0 = std::chrono::steady_clock::now();
        std::mt19937_64 rng(7);
        const BFResult base = bf(T, D);
        double worst_bf = 0.0, worst_pf = 0.0;
        for (int i = 0; i < 20; ++i) {
            const SL2Matrix A = random_sl2(rng);
            const Lattice2D Li = apply_sl2(A, L);
            const KernelTable Ti = retarget(T, Li);
            LatticeDomain Di = D;
            Di.lattice = Li;
            worst_bf = std::max(worst_bf, std::abs(bf(Ti, Di).value - base.value) / base.value);
            for (int R : {4, 8}) {
                const double p0 = pf_double_sum(T, dilate(D, R)).value;
                const double p1 = pf_double_sum(Ti, dilate(Di, R)).value;
                worst_pf = std::max(worst_pf, std::abs(p1 - p0) / std::max(1.0, std::abs(p0)));
            }
        }
        const double dt = seconds_since(t0);
        report(8, worst_bf <= 1e-8 && worst_pf <= 1e-8 && dt < 60.0,
               fmt("BF deviation %.3g, PF deviation %.3g in %.1fs", worst_bf, worst_pf, dt));
    }

    // 9. convergence of PF(R)/R to BF/A_Lambda, trend plus 2% extrapolation, < 5 min
    {
        const auto t0 = std::chrono::steady_clock::now();
        const ConvergenceReport rep = convergence_study(T, D, {4, 6, 8, 12, 16, 24, 32});
        double e8 = 0.0, e32 = 0.0;
        for (const auto& r : rep.rows) {
            if (r.R == 8) e8 = std::abs(r.pf_over_r - rep.reference);
            if (r.R == 32) e32 = std::abs(r.pf_over_r - rep.reference);
        }
        const double dt = seconds_since(t0);
        report(9, e32 < e8 && rep.extrapolated && rep.fit_residual <= 0.02 && dt < 300.0,
               fmt("error %.3g (R=32) vs %.3g (R=8), extrapolation residual %.3g", e32, e8,
                   rep.fit_residual) + fmt(" in %.1fs", dt));
    }

    // 10. strip chain: finite-R sums approach the geometric form; form = BF segment
    {
        const Lattice2D z2 = diag(1, 1);
        const KernelTable Tz = retarget(T, z2);
        bool ok = true;
        double worst_seg = 0.0;
        for (auto [m, n] : {std::pair{0, 1}, {1, 2}, {1, 1}, {2, 3}}) {
            const double limit = strip_geometric_form(Tz, m, n);
            const double r8 = std::abs(strip_finite_R_sum(Tz, m, n, 8) - limit);
            const double r64 = std::abs(strip_finite_R_sum(Tz, m, n, 64) - limit);
            ok = ok && r64 < r8;
            const LatticeCycle c{{{0, 0}, {n, m}, {n, m + 1}, {0, 1}}};
            const LatticeDomain P = domain_from_cycles(c, {}, z2);
            const BFResult r = bf(Tz, P);
            const auto segs = boundary_segments(P);
            bool found = false;
            for (std::size_t i = 0; i < segs.size(); ++i)
                if (segs[i].start == IPt{0, 0} && segs[i].end == IPt{n, m}) {
                    worst_seg = std::max(worst_seg, std::abs(r.per_segment[i].contribution - limit));
                    found = true;
                }
            ok = ok && found;
        }
        report(10, ok && worst_seg <= 1e-12,
               fmt("residual shrinks on all 4 slopes, form vs BF segment gap %.3g", worst_seg));
    }

    // 11. eigenvalue count N(1/2, R)/R^2 near area(Omega) at R = 24
    {
        const EigenvalueCount ec = eigenvalue_count(w, T, D, 24, 0.5);
        const double target = area(D);
        const double rel = std::abs(ec.ratio - target) / target;
        report(11, rel <= 0.10,
               fmt("N(1/2,24) = %.0f, ratio %.4f vs area %.4f", double(ec.count), ec.ratio, target) +
                   fmt(" (%.2f%% off)", 100.0 * rel));
    }

    // 12. metaplectic covariance of kernel moduli, 100 random A, 25 lattice points
    {
        std::vector<IPt> pts;
        for (int i = -2; i <= 2; ++i)
            for (int j = -2; j <= 2; ++j) pts.push_back({i, j});
        const Window g = gaussian_window({0, 1});
        std::mt19937_64 rng(17);
        double worst_g = 0.0, worst_p = 0.0;
        for (int i = 0; i < 100; ++i)
            worst_g = std::max(worst_g, verify_covariance(g, random_sl2(rng), L, pts).max_modulus_deviation);
        for (int i = 0; i < 100; ++i) {
            SL2Matrix A = random_sl2(rng);
            while (std::abs(A.b) < 0.2) A = random_sl2(rng);  // keep the chirp grids honest
            worst_p = std::max(worst_p, verify_covariance(w, A, L, pts).max_modulus_deviation);
        }
        report(12, worst_g <= 1e-6 && worst_p <= 1e-6,
               fmt("modulus deviation: gaussian %.3g, painless %.3g", worst_g, worst_p));
    }

    // 13. converge output bit-identical across 1, 4 and 8 worker threads
    {
        const fs::path base = fs::temp_directory_path() / "gabor_acc";
        fs::create_directories(base);
        nlohmann::ordered_json dom;
        dom["lattice"] = {{s2, 0.0}, {0.0, s2}};
        dom["outer"] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
        write_file((base / "square.json").string(), dom.dump(2) + "\n");
        nlohmann::ordered_json cfg;
        cfg["window"] = window_to_json(w);
        cfg["lattice"] = {{s2, 0.0}, {0.0, s2}};
        cfg["domain"] = (base / "square.json").string();
        cfg["Rs"] = {4, 6, 8};
        write_file((base / "config.json").string(), cfg.dump(2) + "\n");
        std::vector<std::string> outputs;
        bool ran = true;
        for (int threads : {1, 4, 8}) {
            const fs::path out = base / ("t" + std::to_string(threads));
            std::ostringstream cmd;
            cmd << "GABOR_THREADS=" << threads << " \"" << GABOR_CLI_PATH << "\" converge --config \""
                << (base / "config.json").string() << "\" --out \"" << out.string()
                << "\" > /dev/null 2>&1";
            ran = ran && std::system(cmd.str().c_str()) != -1;
            const std::string csv = slurp(out / "converge.csv");
            ran = ran && !csv.empty();
            outputs.push_back(csv);
        }
        const bool same = ran && outputs[0] == outputs[1] && outputs[0] == outputs[2];
        report(13, same, ran ? fmt("converge.csv identical across 1/4/8 threads (%.0f bytes)",
                                   double(outputs[0].size()))
                             : std::string("converge run produced no output"));
    }

    return failures == 0 ? 0 : 1;
}
