#pragma once

#include <vector>

#include <Eigen/Dense>

#include "gabor/domain.hpp"
#include "gabor/types.hpp"
#include "gabor/window.hpp"

namespace gabor {

struct BFResult {
    double value = 0.0;
    struct Segment {
        int id;
        double length;
        double directional_sum;  // half-lattice distance-weighted kernel energy
        double contribution;
    };
    std::vector<Segment> per_segment;
    double truncation_error = 0.0;
};

struct SlopeProfile {
    int m, n;
    Eigen::MatrixXi values;  // values(t, s) = R_t(s), t,s in 0..n-1
};

double half_lattice_sum(const KernelTable& T, const Vec2& n_vec);
BFResult bf(const KernelTable& T, const LatticeDomain& D);
double sf(const KernelTable& T, const LatticeDomain& D_z2, double a, double b);
SlopeProfile slope_profile(int m, int n);
double strip_geometric_form(const KernelTable& T, int m, int n);
double strip_finite_R_sum(const KernelTable& T, int m, int n, int R);
double geometric_atom(const Vec2& seg_start, const Vec2& seg_end, const Vec2& lambda);

}  // namespace gabor
