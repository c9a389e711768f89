#pragma once

#include <array>
#include <utility>
#include <vector>

#include "gabor/types.hpp"

namespace gabor {

struct Lattice2D {
    Mat2 basis;   // columns are the generators (position x frequency units)
    double area;  // |det basis| = A_Lambda

    Vec2 embed(const IPt& p) const {
        return basis * Vec2(static_cast<double>(p.x), static_cast<double>(p.y));
    }
};

struct SL2Matrix {
    double a = 1, b = 0, c = 0, d = 1;

    Mat2 mat() const {
        Mat2 m;
        m << a, b, c, d;
        return m;
    }
    static SL2Matrix from_mat(const Mat2& m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }
    SL2Matrix operator*(const SL2Matrix& o) const { return from_mat(mat() * o.mat()); }
    Vec2 operator*(const Vec2& v) const { return mat() * v; }
    SL2Matrix inverse() const { return {d, -b, -c, a}; }
};

// tau = (mu, h): v -> h(v) + mu, h in the point group of Z^2
// (sign changes and the coordinate swap).
struct AutZ2Transform {
    IPt translation{0, 0};
    std::array<int, 2> signs{1, 1};
    bool swap = false;

    IPt point_group(const IPt& v) const {
        IPt w = swap ? IPt{v.y, v.x} : v;
        return {signs[0] * w.x, signs[1] * w.y};
    }
    IPt apply(const IPt& v) const { return point_group(v) + translation; }
    int det() const { return (swap ? -1 : 1) * signs[0] * signs[1]; }
    AutZ2Transform compose(const AutZ2Transform& o) const;  // (*this) after o
    AutZ2Transform inverse() const;
};

enum class Side { left, right };

struct SegmentNormalization {
    AutZ2Transform tau;
    int m = 0;
    int n = 1;
};

Lattice2D lattice_from_basis(const Mat2& m);
std::vector<IPt> enumerate_in_disk(const Lattice2D& L, double r);
Lattice2D apply_sl2(const SL2Matrix& A, const Lattice2D& L);
std::pair<SL2Matrix, SL2Matrix> iwasawa_decompose(const SL2Matrix& A);

struct SeparatingTransform {
    SL2Matrix A;
    double a = 1;
    double b = 1;
};
SeparatingTransform separating_transform(const Lattice2D& L);

SegmentNormalization aut_normalize_segment(const IPt& start, const IPt& end, Side interior_side);

}  // namespace gabor
