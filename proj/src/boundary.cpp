#include "gabor/boundary.hpp"

#include <cmath>
#include <numeric>

namespace gabor {

double half_lattice_sum(const KernelTable& T, const Vec2& n_vec) {
    if (std::abs(n_vec.norm() - 1.0) > 1e-12) throw BadRange("n_vec must be a unit vector");
    KahanSum acc;
    for (const KernelEntry& e : T.values) {
        const double d = T.lattice.embed(e.p).dot(n_vec);
        if (d >= 0.0) acc.add(d * e.F);
    }
    return acc.get();
}

BFResult bf(const KernelTable& T, const LatticeDomain& D) {
    if (T.tail_bound > 1e-6)
        throw ConditionPhiUncertified("kernel table tail too weak for a boundary form");
    BFResult r;
    KahanSum total;
    int id = 0;
    for (const BoundarySegment& s : boundary_segments(D)) {
        const double ds = half_lattice_sum(T, s.outer_normal);
        const double c = s.length * ds;
        r.per_segment.push_back({id++, s.length, ds, c});
        r.truncation_error += s.length * T.tail_bound;  // |lambda . n| <= |lambda|
        total.add(c);
    }
    r.value = total.get();
    return r;
}

double sf(const KernelTable& T, const LatticeDomain& D_z2, double a, double b) {
    if (!(a > 0 && b > 0)) throw BadRange("sf: a, b must be positive");
    // SF works in Z^2 geometry with F(S_{a,b} nu) supplied by the table:
    // reindex the table (and the domain) onto the identity basis.
    const Lattice2D z2 = lattice_from_basis(Mat2::Identity());
    LatticeDomain D = D_z2;
    D.lattice = z2;
    return bf(retarget(T, z2), D).value;
}

SlopeProfile slope_profile(int m, int n) {
    if (!(n > 0 && m >= 0 && n >= m)) throw BadRange("slope_profile requires n >= m >= 0, n > 0");
    if (std::gcd(m, n) != 1) throw NotCoprime("slope_profile requires gcd(m, n) = 1");
    SlopeProfile p{m, n, Eigen::MatrixXi(n, n)};
    for (int t = 0; t < n; ++t)
        for (int s = 0; s < n; ++s) {
            // R_t(s) = floor(m(t+s)/n) + 1 - floor(m s / n)
            p.values(t, s) = (m * (t + s)) / n + 1 - (m * s) / n;
        }
    return p;
}

double strip_geometric_form(const KernelTable& T, int m, int n) {
    if (!(n > 0 && m >= 0 && n >= m)) throw BadRange("strip form requires n >= m >= 0, n > 0");
    if (std::gcd(m, n) != 1) throw NotCoprime("strip form requires gcd(m, n) = 1");
    // sqrt(n^2+m^2) * sum over lattice points strictly above y = (m/n) x of
    // dist((x,y), line) * F(x,y); dist = (n y - m x)/sqrt(n^2+m^2).
    KahanSum acc;
    for (const KernelEntry& e : T.values) {
        const std::int64_t c = n * e.p.y - m * e.p.x;
        if (c > 0) acc.add(static_cast<double>(c) * e.F);
    }
    return acc.get();
}

double strip_finite_R_sum(const KernelTable& T, int m, int n, int R) {
    if (R < 1) throw BadRange("strip_finite_R_sum requires R >= 1");
    if (!(n > 0 && m >= 0 && n >= m)) throw BadRange("strip form requires n >= m >= 0, n > 0");
    if (std::gcd(m, n) != 1) throw NotCoprime("strip form requires gcd(m, n) = 1");
    // (1/R) sum over 0 <= x1, x2 < R n, y1 > (m/n) x1, y2 <= (m/n) x2 of
    // F(x1 - x2, y1 - y2): per (dx, dy) count admissible (x2, y2) exactly.
    const std::int64_t W = static_cast<std::int64_t>(R) * n;
    KahanSum acc;
    for (const KernelEntry& e : T.values) {
        const std::int64_t dx = e.p.x, dy = e.p.y;
        if (e.F == 0.0) continue;
        std::int64_t total = 0;
        const std::int64_t x2lo = std::max<std::int64_t>(0, -dx);
        const std::int64_t x2hi = std::min<std::int64_t>(W - 1, W - 1 - dx);
        for (std::int64_t x2 = x2lo; x2 <= x2hi; ++x2) {
            const std::int64_t x1 = x2 + dx;
            const std::int64_t B1 = (m * x1) / n + 1;  // min y1 strictly above the line
            const std::int64_t B2 = (m * x2) / n;      // max y2 on or below the line
            const std::int64_t count = B2 - (B1 - dy) + 1;
            if (count > 0) total += count;
        }
        acc.add(e.F * static_cast<double>(total));
    }
    return acc.get() / static_cast<double>(R);
}

double geometric_atom(const Vec2& seg_start, const Vec2& seg_end, const Vec2& lambda) {
    const Vec2 d = seg_end - seg_start;
    if (d.norm() < 1e-15) throw DegenerateSegment("geometric_atom: zero-length segment");
    // length(seg) * dist(lambda, line through origin parallel to seg) = |d x lambda|
    return std::abs(d.x() * lambda.y() - d.y() * lambda.x());
}

}  // namespace gabor
