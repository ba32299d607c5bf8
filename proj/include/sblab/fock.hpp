#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sblab/dynamics.hpp"
#include "sblab/model.hpp"
#include "sblab/scattering.hpp"

// Brute-force ground truth on a truncated Fock space.
//
// S-wave reduction: the form factor is spherically symmetric and enters only
// through rank-one couplings, so every observable computed here lives in the
// s-wave sector. The three-dimensional measure d^3k is replaced by the radial
// measure 4 pi k^2 dk, and a quadrature grid {k_j, w_j} turns the field into
// M discrete modes with energies omega_j = omega(k_j) and couplings
// f_j = sqrt(4 pi w_j) k_j f(k_j). The same weights define the reduced
// dilation couplings d_j = sqrt(4 pi w_j) k_j dilation_profile(k_j).
namespace sblab::fock {

using complex = std::complex<double>;

enum class GridScheme { gauss_legendre, uniform };

struct RadialGrid {
    std::vector<double> nodes;   // strictly increasing, all > 0
    std::vector<double> weights; // all > 0
    double k_max;
    GridScheme scheme;
    int size() const { return static_cast<int>(nodes.size()); }
};

RadialGrid build_grid(int m, double k_max, GridScheme scheme = GridScheme::gauss_legendre);

struct DiscretizedField {
    std::vector<double> mode_energy;       // omega_j
    std::vector<double> coupling;          // f_j
    std::vector<double> dilation_coupling; // d_j
};

DiscretizedField discretize_field(const ModelParams& p, const RadialGrid& grid);

/// Occupation-number basis over M modes with at most n_max bosons, tensored
/// with the two-level system. Layout is spin-major: index = spin * n_field +
/// field_index, spin 0 = lower level, spin 1 = upper level. Field states are
/// sorted mode multisets enumerated by boson number, vacuum first.
struct FockBasis {
    int n_modes;
    int n_max;
    std::vector<std::vector<std::uint16_t>> states;
    std::map<std::vector<std::uint16_t>, int> index;

    int field_dim() const { return static_cast<int>(states.size()); }
    int dim() const { return 2 * field_dim(); }
    int spin_of(int i) const { return i / field_dim(); }
    int state_of(int i) const { return i % field_dim(); }
    int excited_vacuum_index() const { return field_dim(); } // phi_1 x Omega
    int ground_vacuum_index() const { return 0; }            // phi_0 x Omega
};

FockBasis build_basis(int n_modes, int n_max);

struct AssembledHamiltonian {
    Eigen::SparseMatrix<double> matrix;
    FockBasis basis;
    DiscretizedField field;
    ModelParams params;
    RadialGrid grid;
    int n_max;
};

/// H = K + sum_j omega_j n_j + g sigma_1 (x) sum_j f_j (a_j + a_j^dag),
/// assembled sparse; off-diagonal entries connect (s, n) to (1-s, n +- e_j)
/// with element g f_j sqrt(n_j + 1).
AssembledHamiltonian assemble(const ModelParams& p, const RadialGrid& grid, int n_max,
                              std::int64_t dimension_cap = 200000);

struct EigenDecomposition {
    Eigen::VectorXd values;  // ascending
    Eigen::MatrixXd vectors; // orthonormal columns
};

/// Dense full decomposition; dimensions above `dense_limit` are rejected
/// (use ground_state for the lowest pair instead).
EigenDecomposition decompose(const AssembledHamiltonian& h, int dense_limit = 4000);

/// Lowest eigenpair. Dense path below `dense_limit`, Lanczos with full
/// reorthogonalization above (or when forced).
std::pair<double, Eigen::VectorXd> ground_state(const AssembledHamiltonian& h,
                                                int dense_limit = 4000,
                                                bool force_iterative = false);

/// Ground state via the resolvent contour integral
///   P0 v = -(1/n) sum_k z_k (H - z_k)^{-1} v,  z_k = (m/4) e^{2 pi i k/n},
/// applied to v = phi_0 x Omega (trapezoidal rule on the circle, one sparse
/// solve per node). Returns the unnormalized projected vector.
Eigen::VectorXd ground_projector_contour(const AssembledHamiltonian& h, int n_nodes);

dynamics::SurvivalCurve survival_oracle(const AssembledHamiltonian& h,
                                        const EigenDecomposition& eig,
                                        const std::vector<double>& times);

/// <sigma_1 psi0, e^{-+ i t H} sigma_1 psi0> by spectral resolution;
/// sign = -1 gives e^{-itH}.
complex correlator(const AssembledHamiltonian& h, const EigenDecomposition& eig,
                   const Eigen::VectorXd& psi0, double t, int sign);

Eigen::VectorXd apply_sigma1(const FockBasis& basis, const Eigen::VectorXd& v);

/// Mean gap between consecutive eigenvalues inside [e1 - delta/2, e1 + delta/2].
double mean_level_spacing(const EigenDecomposition& eig, const ModelParams& p);

/// Spectral transition amplitude: with p_n = <n|sigma_1 psi0>^2,
///   T1 = i g^2 sum_n p_n int dr G(r) / (omega(r) + lambda0 - E_n + i eta)
///   T2 = i g^2 sum_n p_n int dr G(r) / (omega(r) - lambda0 + E_n + i eta)
/// and T = 2 pi (T1 - T2) / ||psi0||^2. The +i eta damping renders the
/// time integral over the discrete spectrum convergent; eta must stay at or
/// above 3 x the mean level spacing near e1.
complex tmatrix_oracle(const AssembledHamiltonian& h, const EigenDecomposition& eig,
                       const Eigen::VectorXd& psi0, const scattering::WavePacket& hp,
                       const scattering::WavePacket& lp, double eta, double lambda0_num,
                       const quadrature::QuadratureConfig& cfg = {});

inline double default_eta(const EigenDecomposition& eig, const ModelParams& p) {
    return 5.0 * mean_level_spacing(eig, p);
}

/// Canonical experiment profiles.
struct ExperimentProfile {
    int n_modes;
    int n_max;
    double k_max;
    std::string name;
};

/// Ground-state checks: combinatorial sectors matter, moderate grid.
inline ExperimentProfile static_profile() { return {40, 2, 6.0, "static"}; }
/// Decay and T-matrix: continuum resolution matters, one-boson sector.
inline ExperimentProfile dynamic_profile() { return {200, 1, 6.0, "dynamic"}; }

} // namespace sblab::fock
