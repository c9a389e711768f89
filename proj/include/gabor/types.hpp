#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gabor {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using cplx = std::complex<double>;

// Lattice points carry exact integer coordinates relative to a basis;
// embedding into R^2 happens explicitly and late.
struct IPt {
    std::int64_t x = 0;
    std::int64_t y = 0;
    friend bool operator==(const IPt&, const IPt&) = default;
    friend auto operator<=>(const IPt&, const IPt&) = default;
    IPt operator+(const IPt& o) const { return {x + o.x, y + o.y}; }
    IPt operator-(const IPt& o) const { return {x - o.x, y - o.y}; }
    IPt operator-() const { return {-x, -y}; }
    IPt operator*(std::int64_t k) const { return {k * x, k * y}; }
};

struct IPtHash {
    std::size_t operator()(const IPt& p) const {
        auto h = static_cast<std::uint64_t>(p.x) * 0x9e3779b97f4a7c15ULL;
        h ^= static_cast<std::uint64_t>(p.y) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define GABOR_DEFINE_ERROR(Name)          \
    struct Name : Error {                 \
        using Error::Error;               \
    }

GABOR_DEFINE_ERROR(SingularBasis);
GABOR_DEFINE_ERROR(SegmentHasInteriorLatticePoint);
GABOR_DEFINE_ERROR(DegenerateSegment);
GABOR_DEFINE_ERROR(SelfIntersection);
GABOR_DEFINE_ERROR(TouchingCycles);
GABOR_DEFINE_ERROR(OpenCycle);
GABOR_DEFINE_ERROR(WrongNesting);
GABOR_DEFINE_ERROR(ParameterViolation);
GABOR_DEFINE_ERROR(QuadratureNonConvergence);
GABOR_DEFINE_ERROR(ConditionPhiDivergence);
GABOR_DEFINE_ERROR(ConditionPhiUncertified);
GABOR_DEFINE_ERROR(NotAFrame);
GABOR_DEFINE_ERROR(DiscretizationTooCoarse);
GABOR_DEFINE_ERROR(GridAliasing);
GABOR_DEFINE_ERROR(NotTight);
GABOR_DEFINE_ERROR(TailTooLarge);
GABOR_DEFINE_ERROR(MatrixTooLarge);
GABOR_DEFINE_ERROR(NotCoprime);
GABOR_DEFINE_ERROR(BadRange);

#undef GABOR_DEFINE_ERROR

// Compensated (Kahan) accumulator: fixed-order summation is the backbone of
// the determinism contract, so every bulk sum in the library goes through one
// of these instead of a bare double.
struct KahanSum {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double get() const { return s; }
};

struct KahanSumC {
    KahanSum re, im;
    void add(cplx z) {
        re.add(z.real());
        im.add(z.imag());
    }
    cplx get() const { return {re.get(), im.get()}; }
};

}  // namespace gabor
