#include "gabor/localization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "gabor/threads.hpp"

namespace gabor {

namespace {
constexpr double pi = std::numbers::pi;

// Embedded boundary polylines of a (possibly non-integer-scaled) region.
std::vector<std::pair<Vec2, Vec2>> embedded_boundary(const ScaledRegion& Rg) {
    std::vector<std::pair<Vec2, Vec2>> segs;
    auto emit = [&](const LatticeCycle& c) {
        for (std::size_t i = 0; i < c.vertices.size(); ++i) {
            Vec2 a = Rg.domain.lattice.embed(c.vertices[i]) * Rg.scale;
            Vec2 b = Rg.domain.lattice.embed(c.vertices[(i + 1) % c.vertices.size()]) * Rg.scale;
            segs.emplace_back(a, b);
        }
    };
    emit(Rg.domain.outer);
    for (const auto& h : Rg.domain.holes) emit(h);
    return segs;
}

double dist_to_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 d = b - a;
    const double t = std::clamp((p - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
    return (p - (a + t * d)).norm();
}

}  // namespace

PFResult pf_double_sum(const KernelTable& T, const ScaledRegion& region, double tol) {
    if (!T.tight) throw NotTight("pf_double_sum requires a tight-normalized kernel table");
    const std::vector<IPt> inside = lattice_points_in(region);
    PFResult res;
    res.method = PFMethod::double_sum;
    if (inside.empty()) return res;

    // only points within kernel radius of the boundary can contribute
    const auto segs = embedded_boundary(region);
    std::vector<IPt> visited;
    for (const IPt& p : inside) {
        const Vec2 x = region.domain.lattice.embed(p);
        double d = 1e300;
        for (const auto& [a, b] : segs) d = std::min(d, dist_to_segment(x, a, b));
        if (d <= T.radius + 1e-9) visited.push_back(p);
    }
    res.truncation_error = static_cast<double>(visited.size()) * T.tail_bound;
    if (res.truncation_error > tol)
        throw TailTooLarge("kernel tail too large for the requested PF tolerance");

    const std::size_t chunk = 256;
    const std::size_t n_chunks = (visited.size() + chunk - 1) / chunk;
    std::vector<double> partial(n_chunks, 0.0);
    std::vector<std::int64_t> counts(n_chunks, 0);
    parallel_chunks(n_chunks, [&](std::size_t ci) {
        KahanSum acc;
        std::int64_t cnt = 0;
        const std::size_t lo = ci * chunk, hi = std::min(visited.size(), lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) {
            for (const KernelEntry& e : T.values) {
                if (e.p.x == 0 && e.p.y == 0) continue;
                if (!contains(region, visited[i] + e.p)) {
                    acc.add(e.F);
                    ++cnt;
                }
            }
        }
        partial[ci] = acc.get();
        counts[ci] = cnt;
    });
    KahanSum total;
    for (std::size_t ci = 0; ci < n_chunks; ++ci) {
        total.add(partial[ci]);
        res.pair_count += counts[ci];
    }
    res.value = total.get();
    return res;
}

Eigen::MatrixXcd gram_matrix(const Window& phi, const std::vector<IPt>& pts, const Lattice2D& L) {
    const std::size_t n = pts.size();
    std::unordered_map<IPt, cplx, IPtHash> cache;
    auto K = [&](const IPt& d) {
        auto it = cache.find(d);
        if (it != cache.end()) return it->second;
        const cplx v = kernel_value(phi, L.embed(d));
        cache.emplace(d, v);
        return v;
    };
    Eigen::MatrixXcd G(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 xi = L.embed(pts[i]);
        for (std::size_t j = 0; j < n; ++j) {
            if (j < i) {
                G(i, j) = std::conj(G(j, i));
                continue;
            }
            // <phi_mu, phi_lambda> = e^{2 pi i (p_mu - p_lambda) q_lambda} conj(K(mu - lambda)),
            // mu = pts[j], lambda = pts[i]
            const Vec2 xj = L.embed(pts[j]);
            const cplx phase = std::exp(cplx(0.0, 2.0 * pi * (xj.y() - xi.y()) * xi.x()));
            G(i, j) = phase * std::conj(K(pts[j] - pts[i]));
        }
    }
    return G;
}

PFResult pf_eigen(const Window& phi, const KernelTable& T, const ScaledRegion& region,
                  std::vector<double>* eigenvalues) {
    if (!T.tight) throw NotTight("pf_eigen requires a tight-normalized window");
    const std::vector<IPt> pts = lattice_points_in(region);
    PFResult res;
    res.method = PFMethod::eigen;
    if (pts.empty()) {
        if (eigenvalues) eigenvalues->clear();
        return res;
    }
    if (pts.size() > kEigenPointCap) throw MatrixTooLarge("eigen route capped at 2500 points");
    const Eigen::MatrixXcd G = gram_matrix(phi, pts, region.domain.lattice);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
    KahanSum acc;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double l = es.eigenvalues()(i);
        acc.add(l * (1.0 - l));
    }
    if (eigenvalues) eigenvalues->assign(es.eigenvalues().data(), es.eigenvalues().data() + pts.size());
    res.value = acc.get();
    res.pair_count = static_cast<std::int64_t>(pts.size());
    return res;
}

std::vector<double> multiplier_spectrum(const Window& phi, const SymbolMap& b, const Lattice2D& L,
                                        bool tight_checked) {
    if (!tight_checked || !phi.tight_on || std::abs(phi.norm_sq - L.area) > 1e-6)
        throw NotTight("multiplier_spectrum requires a tight-normalized window");
    std::vector<IPt> pts;
    std::vector<double> sq;
    for (const auto& [p, bv] : b.values) {
        if (bv < 0.0 || bv > 1.0) throw BadRange("symbol values must lie in [0,1]");
        if (bv > 0.0) {
            pts.push_back(p);
            sq.push_back(std::sqrt(bv));
        }
    }
    if (pts.empty()) return {};
    if (pts.size() > kEigenPointCap) throw MatrixTooLarge("eigen route capped at 2500 points");
    Eigen::MatrixXcd G = gram_matrix(phi, pts, L);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j) G(i, j) *= sq[i] * sq[j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
    return std::vector<double>(es.eigenvalues().data(), es.eigenvalues().data() + pts.size());
}

}  // namespace gabor
