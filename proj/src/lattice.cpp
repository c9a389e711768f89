#include "gabor/lattice.hpp"

#include <cmath>
#include <numeric>

namespace gabor {

AutZ2Transform AutZ2Transform::compose(const AutZ2Transform& o) const {
    // (mu1,h1)(mu2,h2) = (h1(mu2)+mu1, h1 h2)
    AutZ2Transform r;
    r.translation = point_group(o.translation) + translation;
    r.swap = swap != o.swap;
    // when h1 swaps, it sees the component signs of h2 exchanged
    if (swap)
        r.signs = {signs[0] * o.signs[1], signs[1] * o.signs[0]};
    else
        r.signs = {signs[0] * o.signs[0], signs[1] * o.signs[1]};
    return r;
}

AutZ2Transform AutZ2Transform::inverse() const {
    AutZ2Transform h_inv;
    h_inv.swap = swap;
    if (swap)
        h_inv.signs = {signs[1], signs[0]};
    else
        h_inv.signs = signs;
    h_inv.translation = {0, 0};
    AutZ2Transform r = h_inv;
    r.translation = -h_inv.point_group(translation);
    return r;
}

Lattice2D lattice_from_basis(const Mat2& m) {
    const double det = m.determinant();
    if (std::abs(det) <= 1e-12) throw SingularBasis("lattice basis is singular");
    return {m, std::abs(det)};
}

std::vector<IPt> enumerate_in_disk(const Lattice2D& L, double r) {
    if (r < 0) throw BadRange("enumerate_in_disk: r must be >= 0");
    // |n1 b1 + n2 b2| <= r  =>  |n_i| <= r * ||row i of basis^{-1}||
    const Mat2 inv = L.basis.inverse();
    const auto bound = [&](int row) {
        return static_cast<std::int64_t>(std::floor(r * inv.row(row).norm() + 1e-9));
    };
    const std::int64_t n1max = bound(0), n2max = bound(1);
    const double r2 = r * r * (1.0 + 1e-12) + 1e-12;
    std::vector<IPt> out;
    for (std::int64_t i = -n1max; i <= n1max; ++i)
        for (std::int64_t j = -n2max; j <= n2max; ++j) {
            if (L.embed({i, j}).squaredNorm() <= r2) out.push_back({i, j});
        }
    return out;  // lexicographic by construction
}

Lattice2D apply_sl2(const SL2Matrix& A, const Lattice2D& L) {
    return lattice_from_basis(A.mat() * L.basis);
}

std::pair<SL2Matrix, SL2Matrix> iwasawa_decompose(const SL2Matrix& A) {
    // Rotation angle from the second row: P = A K^{-1} upper triangular with
    // P22 = sqrt(c^2+d^2) > 0, hence P11 = 1/P22 > 0.
    const double th = std::atan2(A.c, A.d);
    SL2Matrix K{std::cos(th), -std::sin(th), std::sin(th), std::cos(th)};
    SL2Matrix P = SL2Matrix::from_mat(A.mat() * K.inverse().mat());
    P.c = 0.0;  // zero by construction, clean the rounding residue
    return {P, K};
}

SeparatingTransform separating_transform(const Lattice2D& L) {
    // Lagrange-reduce the basis with unimodular column operations, then map
    // the reduced generators onto (a,0) and (0,b).
    Vec2 v1 = L.basis.col(0), v2 = L.basis.col(1);
    if (v2.squaredNorm() < v1.squaredNorm()) std::swap(v1, v2);
    for (int it = 0; it < 64; ++it) {
        const double mu = std::round(v2.dot(v1) / v1.squaredNorm());
        v2 -= mu * v1;
        if (v2.squaredNorm() >= v1.squaredNorm()) break;
        std::swap(v1, v2);
    }
    Mat2 red;
    red.col(0) = v1;
    red.col(1) = v2;
    if (red.determinant() < 0) red.col(1) = -red.col(1);
    const double a = red.col(0).norm();
    const double b = L.area / a;
    Mat2 S = Mat2::Zero();
    S(0, 0) = a;
    S(1, 1) = b;
    return {SL2Matrix::from_mat(S * red.inverse()), a, b};
}

SegmentNormalization aut_normalize_segment(const IPt& start, const IPt& end, Side interior_side) {
    const IPt d0 = end - start;
    if (d0.x == 0 && d0.y == 0) throw DegenerateSegment("zero-length segment");
    if (std::gcd(std::llabs(d0.x), std::llabs(d0.y)) != 1)
        throw SegmentHasInteriorLatticePoint("segment passes through interior lattice points");
    // Enumerate the 8 point-group elements, optionally reversing traversal
    // (the interior side flips under orientation-reversing maps and under
    // traversal reversal). Accept the first image running (0,0) -> (n,m)
    // with n >= m >= 0, n > 0 and the interior below the line.
    for (int rev = 0; rev <= 1; ++rev)
        for (int swap = 0; swap <= 1; ++swap)
            for (int s0 : {1, -1})
                for (int s1 : {1, -1}) {
                    AutZ2Transform h;
                    h.swap = swap != 0;
                    h.signs = {s0, s1};
                    const IPt p0 = rev ? end : start;
                    const IPt p1 = rev ? start : end;
                    const IPt d = h.point_group(p1 - p0);
                    if (!(d.x > 0 && d.y >= 0 && d.x >= d.y)) continue;
                    const bool flips = (h.det() < 0) != (rev != 0);
                    const Side img = flips == (interior_side == Side::right) ? Side::left : Side::right;
                    if (img != Side::right) continue;  // "below" = right of travel for x-positive direction
                    AutZ2Transform tau = h;
                    tau.translation = -h.point_group(p0);
                    return {tau, static_cast<int>(d.y), static_cast<int>(d.x)};
                }
    throw Error("aut_normalize_segment: no normalizing transform found");
}

}  // namespace gabor
