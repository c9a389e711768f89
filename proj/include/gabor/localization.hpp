#pragma once

#include <vector>

#include <Eigen/Dense>

#include "gabor/domain.hpp"
#include "gabor/types.hpp"
#include "gabor/window.hpp"

namespace gabor {

struct SymbolMap {
    std::vector<std::pair<IPt, double>> values;  // b(lambda) in [0,1], finite support
};

enum class PFMethod { double_sum, eigen };

struct PFResult {
    double value = 0.0;
    PFMethod method = PFMethod::double_sum;
    double truncation_error = 0.0;
    std::int64_t pair_count = 0;
};

inline constexpr std::size_t kEigenPointCap = 2500;

PFResult pf_double_sum(const KernelTable& T, const ScaledRegion& region,
                       double tol = 1e-6);
Eigen::MatrixXcd gram_matrix(const Window& phi, const std::vector<IPt>& pts, const Lattice2D& L);
PFResult pf_eigen(const Window& phi, const KernelTable& T, const ScaledRegion& region,
                  std::vector<double>* eigenvalues = nullptr);
std::vector<double> multiplier_spectrum(const Window& phi, const SymbolMap& b, const Lattice2D& L,
                                        bool tight_checked = true);

}  // namespace gabor
