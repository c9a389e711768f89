#include "gabor/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace gabor {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for writing: " + path);
    f << content;
}

Window window_from_json(const json& j) {
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "painless")
        return painless_window(j.at("a").get<double>(), j.at("b").get<double>(),
                               j.at("L").get<double>(), j.at("ramp").get<double>());
    if (variant == "gaussian") {
        const auto& w = j.at("w");
        return gaussian_window(cplx(w.at(0).get<double>(), w.at(1).get<double>()),
                               j.value("norm", 1.0));
    }
    if (variant == "sampled") {
        std::vector<cplx> vals;
        for (const auto& v : j.at("values")) vals.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
        return sampled_window(j.at("h").get<double>(), j.at("x0").get<double>(), std::move(vals));
    }
    throw Error("unknown window variant: " + variant);
}

json window_to_json(const Window& w) {
    json j;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, PainlessBump>) {
                j["variant"] = "painless";
                j["a"] = v.a;
                j["b"] = v.b;
                j["L"] = v.L;
                j["ramp"] = v.ramp;
            }
            if constexpr (std::is_same_v<T, GeneralizedGaussian>) {
                j["variant"] = "gaussian";
                j["w"] = {v.w.real(), v.w.imag()};
                j["norm"] = std::sqrt(v.norm_sq);
            }
            if constexpr (std::is_same_v<T, Sampled>) {
                j["variant"] = "sampled";
                j["h"] = v.h;
                j["x0"] = v.x0;
                json vals = json::array();
                for (const cplx& z : v.values) vals.push_back({z.real(), z.imag()});
                j["values"] = std::move(vals);
            }
        },
        w.v);
    return j;
}

LatticeDomain domain_from_json(const json& j) {
    Mat2 basis;
    const auto& lb = j.at("lattice");
    basis << lb.at(0).at(0).get<double>(), lb.at(0).at(1).get<double>(),
        lb.at(1).at(0).get<double>(), lb.at(1).at(1).get<double>();
    const Lattice2D L = lattice_from_basis(basis);
    auto cycle = [](const json& arr) {
        LatticeCycle c;
        for (const auto& v : arr) c.vertices.push_back({v.at(0).get<std::int64_t>(), v.at(1).get<std::int64_t>()});
        return c;
    };
    std::vector<LatticeCycle> holes;
    if (j.contains("holes"))
        for (const auto& h : j.at("holes")) holes.push_back(cycle(h));
    return domain_from_cycles(cycle(j.at("outer")), holes, L);
}

LatticeDomain load_domain(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open domain file: " + path);
    json j;
    f >> j;
    return domain_from_json(j);
}

RunConfig parse_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open config file: " + path);
    RunConfig c;
    c.doc = std::make_shared<json>();
    f >> *c.doc;
    const json& j = *c.doc;
    if (j.contains("domain")) c.domain_path = j.at("domain").get<std::string>();
    if (j.contains("Rs")) c.Rs = j.at("Rs").get<std::vector<int>>();
    if (j.contains("method")) c.method = j.at("method").get<std::string>();
    if (j.contains("tol")) c.tol = j.at("tol").get<double>();
    if (j.contains("radius")) c.radius = j.at("radius").get<double>();
    if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
    if (!(c.tol > 0)) throw Error("config: tol must be positive");
    if (j.contains("lattice")) {
        const auto& lb = j.at("lattice");
        c.lattice_basis << lb.at(0).at(0).get<double>(), lb.at(0).at(1).get<double>(),
            lb.at(1).at(0).get<double>(), lb.at(1).at(1).get<double>();
        c.has_lattice = true;
    }
    return c;
}

std::string serialize_config(const RunConfig& c) {
    ordered_json j;
    if (c.doc && c.doc->contains("window")) j["window"] = c.doc->at("window");
    if (c.has_lattice)
        j["lattice"] = {{c.lattice_basis(0, 0), c.lattice_basis(0, 1)},
                        {c.lattice_basis(1, 0), c.lattice_basis(1, 1)}};
    if (!c.domain_path.empty()) j["domain"] = c.domain_path;
    j["Rs"] = c.Rs;
    j["method"] = c.method;
    j["tol"] = c.tol;
    if (c.radius > 0) j["radius"] = c.radius;
    j["out"] = c.out_dir;
    return j.dump(2);
}

std::string convergence_csv(const ConvergenceReport& rep) {
    std::ostringstream os;
    os << "R,pf,pf_over_R,trunc_err,reference,extrapolated\n";
    for (const auto& r : rep.rows)
        os << r.R << ',' << format_double(r.pf_value) << ',' << format_double(r.pf_over_r) << ','
           << format_double(r.truncation_error) << ',' << format_double(rep.reference) << ','
           << (rep.extrapolated ? format_double(rep.extrapolated_limit) : "") << '\n';
    return os.str();
}

std::string convergence_svg(const ConvergenceReport& rep) {
    // PF/R against 1/R, with the BF/A_Lambda reference as a horizontal line
    const double W = 640, H = 420, ml = 70, mr = 20, mt = 20, mb = 50;
    double xmax = 0, ymin = rep.reference, ymax = rep.reference;
    for (const auto& r : rep.rows) {
        xmax = std::max(xmax, 1.0 / r.R);
        ymin = std::min(ymin, r.pf_over_r);
        ymax = std::max(ymax, r.pf_over_r);
    }
    if (xmax == 0) xmax = 1;
    const double pad = std::max(1e-12, 0.1 * (ymax - ymin));
    ymin -= pad;
    ymax += pad;
    auto X = [&](double x) { return ml + (W - ml - mr) * x / xmax; };
    auto Y = [&](double y) { return H - mb - (H - mt - mb) * (y - ymin) / (ymax - ymin); };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << X(0) << "\" y1=\"" << Y(ymin) << "\" x2=\"" << X(xmax) << "\" y2=\""
       << Y(ymin) << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << X(0) << "\" y1=\"" << Y(ymin) << "\" x2=\"" << X(0) << "\" y2=\""
       << Y(ymax) << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << X(0) << "\" y1=\"" << Y(rep.reference) << "\" x2=\"" << X(xmax)
       << "\" y2=\"" << Y(rep.reference) << "\" stroke=\"red\" stroke-dasharray=\"6 3\"/>\n";
    os << "<polyline fill=\"none\" stroke=\"blue\" points=\"";
    for (auto it = rep.rows.rbegin(); it != rep.rows.rend(); ++it)
        os << X(1.0 / it->R) << ',' << Y(it->pf_over_r) << ' ';
    os << "\"/>\n";
    for (const auto& r : rep.rows)
        os << "<circle cx=\"" << X(1.0 / r.R) << "\" cy=\"" << Y(r.pf_over_r)
           << "\" r=\"3\" fill=\"blue\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">1/R</text>\n";
    os << "<text x=\"16\" y=\"" << H / 2 << "\" transform=\"rotate(-90 16 " << H / 2
       << ")\" text-anchor=\"middle\">PF/R</text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace gabor
