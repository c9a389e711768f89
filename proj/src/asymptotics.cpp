#include "gabor/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "gabor/threads.hpp"

namespace gabor {

ConvergenceReport convergence_study(const KernelTable& T, const LatticeDomain& D,
                                    const std::vector<int>& Rs, PFMethod method,
                                    const Window* phi_for_eigen) {
    if (Rs.empty()) throw BadRange("convergence_study needs at least one R");
    std::vector<int> rs = Rs;
    std::sort(rs.begin(), rs.end());
    ConvergenceReport rep;
    rep.rows.resize(rs.size());
    // independent R values in parallel; the report is assembled in R order
    parallel_chunks(rs.size(), [&](std::size_t i) {
        const ScaledRegion region = dilate(D, static_cast<double>(rs[i]));
        PFResult pf;
        if (method == PFMethod::eigen) {
            if (!phi_for_eigen) throw BadRange("eigen method needs the window");
            pf = pf_eigen(*phi_for_eigen, T, region);
        } else {
            pf = pf_double_sum(T, region);
        }
        rep.rows[i] = {rs[i], pf.value, pf.value / rs[i], pf.truncation_error};
    });
    const BFResult b = bf(T, D);
    rep.reference = b.value / T.lattice.area;
    // extrapolate PF/R = c0 + c1/R by least squares over the largest half
    const std::size_t half = rs.size() - rs.size() / 2;
    if (rs.size() >= 2) {
        double s00 = 0, s01 = 0, s11 = 0, b0 = 0, b1 = 0;
        for (std::size_t i = rs.size() - half; i < rs.size(); ++i) {
            const double x = 1.0 / rep.rows[i].R, y = rep.rows[i].pf_over_r;
            s00 += 1.0;
            s01 += x;
            s11 += x * x;
            b0 += y;
            b1 += x * y;
        }
        const double det = s00 * s11 - s01 * s01;
        rep.extrapolated_limit = (s11 * b0 - s01 * b1) / det;
        rep.extrapolated = true;
        rep.fit_residual = std::abs(rep.extrapolated_limit - rep.reference) /
                           std::max(std::abs(rep.reference), 1e-300);
    }
    return rep;
}

EigenvalueCount eigenvalue_count(const Window& phi, const KernelTable& T, const LatticeDomain& D,
                                 int R, double delta) {
    const ScaledRegion region = dilate(D, static_cast<double>(R));
    std::vector<double> eigs;
    pf_eigen(phi, T, region, &eigs);
    std::int64_t cnt = 0;
    for (double l : eigs)
        if (l > delta) ++cnt;
    return {cnt, static_cast<double>(cnt) / (static_cast<double>(R) * R)};
}

}  // namespace gabor
