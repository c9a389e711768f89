#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "gabor/asymptotics.hpp"
#include "gabor/boundary.hpp"
#include "gabor/io.hpp"
#include "gabor/localization.hpp"
#include "gabor/metaplectic.hpp"

using namespace gabor;
using nlohmann::ordered_json;

namespace {

struct Ctx {
    RunConfig cfg;
    Window window{PainlessBump{1, 0.5, 2, 1}, 0.5, std::nullopt};
    Lattice2D lattice;
    bool window_loaded = false;

    static Ctx load(const std::string& config_path) {
        Ctx c;
        c.cfg = parse_config(config_path);
        if (c.cfg.doc->contains("window")) {
            c.window = window_from_json(c.cfg.doc->at("window"));
            c.window_loaded = true;
        }
        if (c.cfg.has_lattice) c.lattice = lattice_from_basis(c.cfg.lattice_basis);
        return c;
    }
    LatticeDomain domain() const {
        if (cfg.domain_path.empty()) throw Error("config: missing \"domain\" file path");
        return load_domain(cfg.domain_path);
    }
    KernelTable table(bool with_phases = false) const {
        if (!window_loaded || !cfg.has_lattice) throw Error("config: window and lattice required");
        return kernel_table(window, lattice, 1e-10, with_phases);
    }
    std::filesystem::path out(const std::string& name) const {
        std::filesystem::create_directories(cfg.out_dir);
        return std::filesystem::path(cfg.out_dir) / name;
    }
};

int cmd_frame_verify(const Ctx& c) {
    const TightnessReport rep = verify_tightness(c.window, c.lattice, 20);
    const KernelTable T = c.table();
    const double norm_law = std::abs(c.window.norm_sq - c.lattice.area);
    ordered_json j;
    j["tightness_max_relative_deviation"] = rep.max_relative_deviation;
    j["n_tests"] = rep.n_tests;
    j["norm_sq"] = c.window.norm_sq;
    j["lattice_area"] = c.lattice.area;
    j["norm_law_deviation"] = norm_law;
    j["condition_phi_sum"] = condition_phi_sum(T);
    j["kernel_tail_bound"] = T.tail_bound;
    const bool ok = rep.max_relative_deviation <= c.cfg.tol && norm_law <= c.cfg.tol;
    j["pass"] = ok;
    write_file(c.out("frame_verify.json").string(), j.dump(2) + "\n");
    std::cout << j.dump(2) << "\n";
    return ok ? 0 : 1;
}

int cmd_pf(const Ctx& c) {
    const LatticeDomain D = c.domain();
    const KernelTable T = c.table();
    std::ostringstream csv;
    csv << "R,method,pf,pf_over_R,trunc_err\n";
    bool mismatch = false;
    for (int R : c.cfg.Rs) {
        const ScaledRegion region = dilate(D, static_cast<double>(R));
        double ds_val = 0.0, ei_val = 0.0;
        bool have_ds = false, have_ei = false;
        if (c.cfg.method == "double_sum" || c.cfg.method == "both") {
            const PFResult r = pf_double_sum(T, region);
            ds_val = r.value;
            have_ds = true;
            csv << R << ",double_sum," << format_double(r.value) << ','
                << format_double(r.value / R) << ',' << format_double(r.truncation_error) << '\n';
        }
        if (c.cfg.method == "eigen" ||
            (c.cfg.method == "both" && lattice_points_in(region).size() <= kEigenPointCap)) {
            const PFResult r = pf_eigen(c.window, T, region);
            ei_val = r.value;
            have_ei = true;
            csv << R << ",eigen," << format_double(r.value) << ',' << format_double(r.value / R)
                << ',' << format_double(r.truncation_error) << '\n';
        }
        if (have_ds && have_ei && std::abs(ds_val - ei_val) > c.cfg.tol * std::max(1.0, std::abs(ds_val)))
            mismatch = true;
    }
    write_file(c.out("pf.csv").string(), csv.str());
    std::cout << csv.str();
    return mismatch ? 1 : 0;
}

int cmd_bf(const Ctx& c) {
    const LatticeDomain D = c.domain();
    const KernelTable T = c.table();
    const BFResult r = bf(T, D);
    ordered_json j;
    j["bf"] = r.value;
    j["bf_over_area"] = r.value / c.lattice.area;
    j["truncation_error"] = r.truncation_error;
    std::ostringstream csv;
    csv << "segment,length,directional_sum,contribution\n";
    for (const auto& s : r.per_segment)
        csv << s.id << ',' << format_double(s.length) << ',' << format_double(s.directional_sum)
            << ',' << format_double(s.contribution) << '\n';
    write_file(c.out("bf.json").string(), j.dump(2) + "\n");
    write_file(c.out("bf.csv").string(), csv.str());
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_converge(const Ctx& c) {
    const LatticeDomain D = c.domain();
    const KernelTable T = c.table();
    const PFMethod m = c.cfg.method == "eigen" ? PFMethod::eigen : PFMethod::double_sum;
    const ConvergenceReport rep = convergence_study(T, D, c.cfg.Rs, m, &c.window);
    write_file(c.out("converge.csv").string(), convergence_csv(rep));
    write_file(c.out("converge.svg").string(), convergence_svg(rep));
    std::cout << convergence_csv(rep);
    if (!rep.extrapolated) {
        std::cerr << "warning: single R value, no extrapolation performed\n";
        return 0;
    }
    return rep.fit_residual <= 0.02 ? 0 : 1;
}

int cmd_invariance(const Ctx& c) {
    const LatticeDomain D = c.domain();
    const KernelTable T = c.table(true);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst_bf = 0.0, worst_pf = 0.0, worst_cov = 0.0;
    const BFResult base = bf(T, D);
    std::vector<IPt> pts;
    for (int i = -2; i <= 2; ++i)
        for (int j = -2; j <= 2; ++j) pts.push_back({i, j});
    for (int trial = 0; trial < 5; ++trial) {
        const double th = u(rng) * 3.0, sh = u(rng), sc = std::exp(0.3 * u(rng));
        const SL2Matrix A = SL2Matrix{sc, 0, 0, 1 / sc} * SL2Matrix{1, sh, 0, 1} *
                            SL2Matrix{std::cos(th), -std::sin(th), std::sin(th), std::cos(th)};
        const Lattice2D Li = apply_sl2(A, c.lattice);
        LatticeDomain Di = D;
        Di.lattice = Li;
        const BFResult bi = bf(retarget(T, Li), Di);
        worst_bf = std::max(worst_bf, std::abs(bi.value - base.value) / base.value);
        for (int R : {4, 8}) {
            const PFResult p0 = pf_double_sum(T, dilate(D, R));
            const PFResult p1 = pf_double_sum(retarget(T, Li), dilate(Di, R));
            worst_pf = std::max(worst_pf, std::abs(p1.value - p0.value) /
                                              std::max(1.0, std::abs(p0.value)));
        }
        if (std::holds_alternative<GeneralizedGaussian>(c.window.v) ||
            std::abs(A.b) > 0.2) {
            const CovarianceReport cov = verify_covariance(c.window, A, c.lattice, pts);
            worst_cov = std::max(worst_cov, cov.max_modulus_deviation);
        }
    }
    ordered_json j;
    j["bf_max_relative_deviation"] = worst_bf;
    j["pf_max_relative_deviation"] = worst_pf;
    j["covariance_max_modulus_deviation"] = worst_cov;
    const bool ok = worst_bf <= 1e-8 && worst_pf <= 1e-8 && worst_cov <= 1e-6;
    j["pass"] = ok;
    write_file(c.out("invariance.json").string(), j.dump(2) + "\n");
    std::cout << j.dump(2) << "\n";
    return ok ? 0 : 1;
}

int cmd_slopes(int m, int n) {
    const SlopeProfile p = slope_profile(m, n);
    std::cout << "R_t(s) for (m,n)=(" << m << ',' << n << ")\n";
    for (int t = 0; t < n; ++t) {
        std::cout << "t=" << t << ':';
        long lo_count = 0;
        int lo = INT32_MAX, hi = 0;
        for (int s = 0; s < n; ++s) {
            std::cout << ' ' << p.values(t, s);
            lo = std::min(lo, p.values(t, s));
            hi = std::max(hi, p.values(t, s));
        }
        for (int s = 0; s < n; ++s)
            if (p.values(t, s) == lo) ++lo_count;
        std::cout << "   values {" << lo;
        if (hi != lo) std::cout << ',' << hi;
        std::cout << "}, value " << lo << " appears " << lo_count << "x\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gabor localization operators: projection functionals and boundary forms"};
    app.require_subcommand(1);
    std::string config_path, out_dir, method;
    double tol = -1.0, radius = -1.0;
    std::string rs_list;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--method", method, "double_sum|eigen|both");
        sub->add_option("--tol", tol, "tolerance");
        sub->add_option("--radius", radius, "kernel table radius/tolerance override");
        sub->add_option("--Rs", rs_list, "comma-separated dilation factors");
    };
    CLI::App* sv = app.add_subcommand("frame-verify", "tightness, norm law, condition-Phi report");
    CLI::App* sp = app.add_subcommand("pf", "projection functional table");
    CLI::App* sb = app.add_subcommand("bf", "boundary form");
    CLI::App* sc = app.add_subcommand("converge", "PF(R)/R convergence study");
    CLI::App* si = app.add_subcommand("invariance", "SL(2,R) invariance checks");
    for (CLI::App* s : {sv, sp, sb, sc, si}) add_common(s);
    CLI::App* ss = app.add_subcommand("slopes", "lattice slope profile R_t(s)");
    int sm = 0, sn = 1;
    ss->add_option("m", sm, "numerator")->required();
    ss->add_option("n", sn, "denominator")->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (ss->parsed()) return cmd_slopes(sm, sn);
        Ctx c = Ctx::load(config_path);
        if (!out_dir.empty()) c.cfg.out_dir = out_dir;
        if (!method.empty()) c.cfg.method = method;
        if (tol > 0) c.cfg.tol = tol;
        if (radius > 0) c.cfg.radius = radius;
        if (!rs_list.empty()) {
            c.cfg.Rs.clear();
            std::stringstream ss2(rs_list);
            std::string tok;
            while (std::getline(ss2, tok, ',')) c.cfg.Rs.push_back(std::stoi(tok));
        }
        if (sv->parsed()) return cmd_frame_verify(c);
        if (sp->parsed()) return cmd_pf(c);
        if (sb->parsed()) return cmd_bf(c);
        if (sc->parsed()) return cmd_converge(c);
        if (si->parsed()) return cmd_invariance(c);
    } catch (const NotCoprime& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
