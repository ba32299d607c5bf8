#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "sblab/fock.hpp"
#include "sblab/model.hpp"

// Desk-scale checks of the conjugate-operator machinery. The dilation
// generator D = (i/2)(k . grad + grad . k), reduced to the s-wave radial
// line, acts on L^2((0,inf), 4 pi r^2 dr) as i (r d/dr + 3/2). Conjugating
// with the r-weight maps it to the half-line with flat measure, where it
// reads i (r d/dr + 1/2) = (i/2)(r d/dr + d/dr r). The discrete form is
// D = i A with A = (R d + d R)/2 built from the central-difference matrix d
// in flat coordinates: on a uniform grid the interior of A is skew-symmetric
// exactly (boundary rows use one-sided stencils), and A is antisymmetrized
// to make i A Hermitian on any grid. Skew-symmetry of the raw product is the
// correctness gate of the reduction.
namespace sblab::mourre {

/// Real matrix A with D = i A on the one-boson radial grid.
struct DilationMatrix {
    Eigen::MatrixXd antisym; // enforced skew-symmetric form
    Eigen::MatrixXd raw;     // before antisymmetrization
};

DilationMatrix build_dilation(const fock::RadialGrid& grid);

/// Discrete check of the one-particle identity [omega, iD] = xi applied to a
/// smooth radial test function; returns the grid L^2 error of
/// ([A, omega] - xi) phi with phi normalized. Second-order in the interior.
double commutator_check(const std::function<double(double)>& test_fn,
                        const fock::RadialGrid& grid, const ModelParams& p);

struct MourreReport {
    double alpha_num;        // smallest eigenvalue of the compressed commutator
    double coupling_norm;    // operator norm of sigma_1 Phi(Df) at unit g
    double reference_bound;  // delta/10 - g * coupling_norm
    double g;
    double window_lo, window_hi; // support of the energy cutoff
    int window_dim;          // rank of the cutoff on the truncated space
    int n_modes, n_max;
    double k_max;
};

/// Compression of the commutator [H_Pbar, i dGamma(D)] = dGamma(xi)
/// + g sigma_1 Phi(Df) by the smooth cutoff chi(H_Pbar): reports the smallest
/// eigenvalue of W^dag C W where W spans the range of chi(H_Pbar)
/// (eigenvectors with chi(lambda) > 1e-8).
MourreReport mourre_constant(const ModelParams& p, const fock::RadialGrid& grid,
                             int n_max);

struct ProbePoint {
    double eps;
    double weighted;   // || rho (H_Pbar - z - i eps)^{-1} rho ||
    double unweighted; // || (H_Pbar - z - i eps)^{-1} ||
};

struct ProbeResult {
    std::vector<ProbePoint> points;
    double spacing; // mean level spacing near z
    double z;
};

/// Weighted-resolvent probe of the limiting absorption principle on the
/// one-boson truncation, with weight rho = (dGamma(D)^2 + 1)^{-1/2}. On a
/// finite grid the continuum is discrete, so eps below twice the local level
/// spacing is rejected; the meaningful signature is that the weighted norm
/// grows strictly slower under eps -> eps/2 than the unweighted control
/// (which tracks 1/eps).
ProbeResult weighted_resolvent_probe(const ModelParams& p, const fock::RadialGrid& grid,
                                     double z, const std::vector<double>& eps_list);

} // namespace sblab::mourre
