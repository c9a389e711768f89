#pragma once

#include <vector>

#include "gabor/lattice.hpp"
#include "gabor/types.hpp"

namespace gabor {

struct LatticeCycle {
    std::vector<IPt> vertices;  // closed implicitly: last connects to first
};

struct BoundarySegment {
    IPt start, end;        // lattice coordinates, no interior lattice points
    double length;         // Euclidean length after embedding
    Vec2 outer_normal;     // unit, points out of the domain
    bool hole = false;     // belongs to a hole cycle
};

struct LatticeDomain {
    LatticeCycle outer;                // counterclockwise
    std::vector<LatticeCycle> holes;   // clockwise
    Lattice2D lattice;
};

// dilate(D, R): integer R keeps the result a Lambda-domain; otherwise the
// region is only usable for membership/enumeration (PF side), never for BF.
struct ScaledRegion {
    LatticeDomain domain;
    double scale = 1.0;        // residual non-integer factor applied to `domain`
    bool lattice_valid = true; // scale == 1: vertices are genuine lattice points
};

LatticeDomain domain_from_cycles(const LatticeCycle& outer, const std::vector<LatticeCycle>& holes,
                                 const Lattice2D& L);
double area(const LatticeDomain& D);                 // embedded area (shoelace x A_Lambda)
double area_lattice_units(const LatticeDomain& D);   // exact shoelace in lattice coordinates
ScaledRegion dilate(const LatticeDomain& D, double R);
double area(const ScaledRegion& Rg);

bool contains(const LatticeDomain& D, const IPt& p);        // exact, closed region
bool contains(const LatticeDomain& D, double x, double y);  // lattice coordinates
bool contains(const ScaledRegion& Rg, const IPt& p);

std::vector<BoundarySegment> boundary_segments(const LatticeDomain& D);
std::vector<IPt> lattice_points_in(const ScaledRegion& Rg);
std::vector<IPt> lattice_points_in(const LatticeDomain& D);

}  // namespace gabor
