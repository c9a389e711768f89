#pragma once

#include <vector>

#include "gabor/boundary.hpp"
#include "gabor/domain.hpp"
#include "gabor/localization.hpp"
#include "gabor/types.hpp"
#include "gabor/window.hpp"

namespace gabor {

struct ConvergenceReport {
    struct Row {
        int R;
        double pf_value;
        double pf_over_r;
        double truncation_error;
    };
    std::vector<Row> rows;          // sorted by R
    double reference = 0.0;         // BF / A_Lambda
    double extrapolated_limit = 0.0;
    double fit_residual = 0.0;      // |extrapolated - reference| / max(reference, eps)
    bool extrapolated = false;
};

ConvergenceReport convergence_study(const KernelTable& T, const LatticeDomain& D,
                                    const std::vector<int>& Rs,
                                    PFMethod method = PFMethod::double_sum,
                                    const Window* phi_for_eigen = nullptr);

struct EigenvalueCount {
    std::int64_t count;
    double ratio;  // count / R^2
};
EigenvalueCount eigenvalue_count(const Window& phi, const KernelTable& T, const LatticeDomain& D,
                                 int R, double delta);

}  // namespace gabor
