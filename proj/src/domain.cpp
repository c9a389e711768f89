#include "gabor/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gabor {
namespace {

using i64 = std::int64_t;

i64 cross(const IPt& o, const IPt& a, const IPt& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(const IPt& a, const IPt& b, const IPt& p) {
    if (cross(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// Closed-segment intersection test (touching counts).
bool segments_touch(const IPt& a, const IPt& b, const IPt& c, const IPt& d) {
    const i64 d1 = cross(c, d, a), d2 = cross(c, d, b);
    const i64 d3 = cross(a, b, c), d4 = cross(a, b, d);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    return (d1 == 0 && on_segment(c, d, a)) || (d2 == 0 && on_segment(c, d, b)) ||
           (d3 == 0 && on_segment(a, b, c)) || (d4 == 0 && on_segment(a, b, d));
}

i64 signed_area_2x(const LatticeCycle& c) {
    i64 s = 0;
    const auto& v = c.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const IPt& p = v[i];
        const IPt& q = v[(i + 1) % v.size()];
        s += p.x * q.y - q.x * p.y;
    }
    return s;
}

// Exact crossing-number membership for an integer point against an integer
// polygon; boundary points are reported separately.
enum class Where { outside, boundary, inside };

Where locate(const LatticeCycle& c, const IPt& p) {
    const auto& v = c.vertices;
    bool in = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const IPt& a = v[i];
        const IPt& b = v[(i + 1) % v.size()];
        if (on_segment(a, b, p)) return Where::boundary;
        // ray to +x: edge crosses the horizontal line through p
        if ((a.y > p.y) != (b.y > p.y)) {
            // x-coordinate of crossing vs p.x, exact: sign of
            // (b.x-a.x)(p.y-a.y)/(b.y-a.y) + a.x - p.x
            const i64 num = (b.x - a.x) * (p.y - a.y) + (a.x - p.x) * (b.y - a.y);
            if ((b.y - a.y > 0) ? (num > 0) : (num < 0)) in = !in;
        }
    }
    return in ? Where::inside : Where::outside;
}

Where locate(const LatticeCycle& c, double px, double py) {
    const auto& v = c.vertices;
    bool in = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const IPt& ai = v[i];
        const IPt& bi = v[(i + 1) % v.size()];
        const double ax = double(ai.x), ay = double(ai.y), bx = double(bi.x), by = double(bi.y);
        const double cr = (bx - ax) * (py - ay) - (by - ay) * (px - ax);
        if (std::abs(cr) < 1e-12 && px >= std::min(ax, bx) - 1e-12 && px <= std::max(ax, bx) + 1e-12 &&
            py >= std::min(ay, by) - 1e-12 && py <= std::max(ay, by) + 1e-12)
            return Where::boundary;
        if ((ay > py) != (by > py)) {
            const double xc = ax + (bx - ax) * (py - ay) / (by - ay);
            if (xc > px) in = !in;
        }
    }
    return in ? Where::inside : Where::outside;
}

void validate_cycle(const LatticeCycle& c) {
    const auto& v = c.vertices;
    if (v.size() < 3) throw OpenCycle("cycle needs at least 3 vertices");
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] == v[(i + 1) % v.size()]) throw OpenCycle("consecutive duplicate vertices");
    if (signed_area_2x(c) == 0) throw SelfIntersection("cycle has zero signed area");
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            const IPt &a = v[i], &b = v[(i + 1) % n], &c2 = v[j], &d = v[(j + 1) % n];
            if (adjacent) {
                // shared endpoint only; any further contact is a self-touch
                const IPt& shared = (j == i + 1) ? b : a;
                if (on_segment(a, b, (j == i + 1) ? d : c2) && !((j == i + 1 ? d : c2) == shared))
                    throw SelfIntersection("adjacent segments overlap");
                const IPt other = (j == i + 1) ? a : b;
                if (on_segment(c2, d, other) && !(other == shared))
                    throw SelfIntersection("adjacent segments overlap");
                continue;
            }
            if (segments_touch(a, b, c2, d)) throw SelfIntersection("non-adjacent segments intersect");
        }
}

LatticeCycle oriented(const LatticeCycle& c, bool ccw) {
    LatticeCycle r = c;
    if ((signed_area_2x(c) > 0) != ccw) std::reverse(r.vertices.begin(), r.vertices.end());
    return r;
}

LatticeCycle split_at_lattice_points(const LatticeCycle& c) {
    LatticeCycle r;
    const auto& v = c.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const IPt a = v[i];
        const IPt b = v[(i + 1) % v.size()];
        const IPt d = b - a;
        const i64 g = std::gcd(std::llabs(d.x), std::llabs(d.y));
        for (i64 k = 0; k < g; ++k) r.vertices.push_back(a + IPt{d.x / g, d.y / g} * k);
    }
    return r;
}

}  // namespace

LatticeDomain domain_from_cycles(const LatticeCycle& outer, const std::vector<LatticeCycle>& holes,
                                 const Lattice2D& L) {
    validate_cycle(outer);
    for (const auto& h : holes) validate_cycle(h);
    LatticeDomain D;
    D.lattice = L;
    D.outer = split_at_lattice_points(oriented(outer, true));
    for (const auto& h : holes) D.holes.push_back(split_at_lattice_points(oriented(h, false)));

    // cycles must be pairwise separated (positive distance = no touching)
    std::vector<const LatticeCycle*> all{&D.outer};
    for (const auto& h : D.holes) all.push_back(&h);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const auto& u = all[i]->vertices;
            const auto& w = all[j]->vertices;
            for (std::size_t s = 0; s < u.size(); ++s)
                for (std::size_t t = 0; t < w.size(); ++t)
                    if (segments_touch(u[s], u[(s + 1) % u.size()], w[t], w[(t + 1) % w.size()]))
                        throw TouchingCycles("cycles touch or intersect");
        }
    // nesting: every hole strictly inside the outer cycle, holes not nested
    for (std::size_t i = 0; i < D.holes.size(); ++i) {
        for (const IPt& p : D.holes[i].vertices)
            if (locate(D.outer, p) != Where::inside) throw WrongNesting("hole not strictly inside outer cycle");
        for (std::size_t j = 0; j < D.holes.size(); ++j)
            if (i != j && locate(D.holes[j], D.holes[i].vertices[0]) == Where::inside)
                throw WrongNesting("nested holes");
    }
    return D;
}

double area_lattice_units(const LatticeDomain& D) {
    i64 s2 = std::llabs(signed_area_2x(D.outer));
    for (const auto& h : D.holes) s2 -= std::llabs(signed_area_2x(h));
    return 0.5 * static_cast<double>(s2);
}

double area(const LatticeDomain& D) { return area_lattice_units(D) * D.lattice.area; }

ScaledRegion dilate(const LatticeDomain& D, double R) {
    if (R <= 0) throw BadRange("dilate: R must be positive");
    const double ri = std::round(R);
    if (std::abs(R - ri) < 1e-12 && ri >= 1.0) {
        const i64 k = static_cast<i64>(ri);
        LatticeDomain S = D;
        for (auto& p : S.outer.vertices) p = p * k;
        for (auto& h : S.holes)
            for (auto& p : h.vertices) p = p * k;
        S.outer = split_at_lattice_points(S.outer);
        for (auto& h : S.holes) h = split_at_lattice_points(h);
        return {S, 1.0, true};
    }
    return {D, R, false};
}

double area(const ScaledRegion& Rg) { return area(Rg.domain) * Rg.scale * Rg.scale; }

bool contains(const LatticeDomain& D, const IPt& p) {
    const Where wo = locate(D.outer, p);
    if (wo == Where::outside) return false;
    if (wo == Where::boundary) return true;
    for (const auto& h : D.holes)
        if (locate(h, p) == Where::inside) return false;  // hole boundary belongs to the domain
    return true;
}

bool contains(const LatticeDomain& D, double x, double y) {
    const Where wo = locate(D.outer, x, y);
    if (wo == Where::outside) return false;
    if (wo == Where::boundary) return true;
    for (const auto& h : D.holes)
        if (locate(h, x, y) == Where::inside) return false;
    return true;
}

bool contains(const ScaledRegion& Rg, const IPt& p) {
    if (Rg.lattice_valid) return contains(Rg.domain, p);
    return contains(Rg.domain, static_cast<double>(p.x) / Rg.scale, static_cast<double>(p.y) / Rg.scale);
}

std::vector<BoundarySegment> boundary_segments(const LatticeDomain& D) {
    std::vector<BoundarySegment> out;
    auto emit = [&](const LatticeCycle& c, bool is_hole) {
        const auto& v = c.vertices;
        for (std::size_t i = 0; i < v.size(); ++i) {
            BoundarySegment s;
            s.start = v[i];
            s.end = v[(i + 1) % v.size()];
            s.hole = is_hole;
            const Vec2 d = D.lattice.embed(s.end) - D.lattice.embed(s.start);
            s.length = d.norm();
            // outer CCW / holes CW: (dy,-dx)/|d| points out of the domain both ways
            s.outer_normal = Vec2(d.y(), -d.x()) / s.length;
            out.push_back(s);
        }
    };
    emit(D.outer, false);
    for (const auto& h : D.holes) emit(h, true);
    return out;
}

std::vector<IPt> lattice_points_in(const ScaledRegion& Rg) {
    i64 xmin = INT64_MAX, xmax = INT64_MIN, ymin = INT64_MAX, ymax = INT64_MIN;
    auto visit = [&](const IPt& p) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    };
    for (const IPt& p : Rg.domain.outer.vertices) visit(p);
    if (!Rg.lattice_valid) {
        const double s = Rg.scale;
        xmin = static_cast<i64>(std::floor(xmin * s)) - 1;
        xmax = static_cast<i64>(std::ceil(xmax * s)) + 1;
        ymin = static_cast<i64>(std::floor(ymin * s)) - 1;
        ymax = static_cast<i64>(std::ceil(ymax * s)) + 1;
    }
    std::vector<IPt> out;
    for (i64 x = xmin; x <= xmax; ++x)
        for (i64 y = ymin; y <= ymax; ++y)
            if (contains(Rg, {x, y})) out.push_back({x, y});
    return out;
}

std::vector<IPt> lattice_points_in(const LatticeDomain& D) {
    return lattice_points_in(ScaledRegion{D, 1.0, true});
}

}  // namespace gabor
