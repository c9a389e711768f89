#pragma once

#include <variant>
#include <vector>

#include "gabor/lattice.hpp"
#include "gabor/types.hpp"
#include "gabor/window.hpp"

namespace gabor {

// Generator actions: Dilation(s) ~ diag(s, 1/s), Chirp(c) ~ [[1,0],[c,1]],
// FourierFlip ~ [[0,-1],[1,0]].
struct Dilation {
    double s;
};
struct Chirp {
    double c;
};
struct FourierFlip {};

struct MetaplecticFactorization {
    std::vector<std::variant<Dilation, Chirp, FourierFlip>> factors;  // operator order, leftmost applied last
    Mat2 product() const;
};

MetaplecticFactorization mu_factorize(const SL2Matrix& A);

struct MuGrid {
    int log2n = 16;
    double period = 64.0;  // grid period for the pre-Fourier stage
};

// mu(A) phi. Gaussians map to Gaussians through the Mobius action
// w' = (d w + c)/(b w + a); the other variants go through the generator
// pipeline on a periodized grid and come back as Sampled windows.
Window mu_apply(const SL2Matrix& A, const Window& phi, const MuGrid& grid = {});

struct CovarianceReport {
    double max_modulus_deviation;
    int n_points;
};

// | |<phi, phi_lambda>| - |<mu(A)phi, (mu(A)phi)_{A lambda}>| | over test points.
CovarianceReport verify_covariance(const Window& phi, const SL2Matrix& A, const Lattice2D& L,
                                   const std::vector<IPt>& test_points, const MuGrid& grid = {});

}  // namespace gabor
