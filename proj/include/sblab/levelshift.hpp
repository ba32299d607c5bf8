#pragma once

#include <complex>

#include "sblab/model.hpp"
#include "sblab/quadrature.hpp"

namespace sblab::levelshift {

using complex = std::complex<double>;

/// Boundary values of the second-order level-shift integral and the
/// ground-state shift. gamma_plus0 = conj(gamma_minus0) and
/// Im gamma_minus0 = +pi*theta0 > 0.
struct LevelShift {
    complex gamma_minus0;
    complex gamma_plus0;
    double theta0;
    double gamma0_gs;
};

/// Second-order resonance and ground-state data derived from a LevelShift:
/// lambda1_tilde = e1 - g^2 gamma_minus0 (Im < 0 for g > 0),
/// lambda0_approx = e0 - g^2 gamma0_gs, decay_rate = 2 g^2 Im gamma_minus0.
struct Resonance {
    complex lambda1_tilde;
    double lambda0_approx;
    double decay_rate;
    ModelParams params;
};

/// Spectral density of the one-boson channel at energy e1 + tau:
/// theta(tau) = 4 pi (e1+tau) sqrt((e1+tau)^2 - m^2) f(sqrt(...))^2.
/// Vanishes like a square root at the threshold tau = m - e1.
double theta(double tau, const ModelParams& p);

/// Level-shift integral with +-i eps regularization, evaluated radially as
/// int_{m-e1}^inf theta(tau)/(tau +- i eps) dtau.
complex gamma_eps(double eps, int sign, const ModelParams& p,
                  const quadrature::QuadratureConfig& cfg = {});

/// eps -> 0 boundary value: the real part is the principal value of
/// theta(x)/x, the imaginary part is -+ pi theta(0) taken in closed form
/// (no quadrature enters the imaginary part).
complex gamma_boundary(int sign, const ModelParams& p,
                       const quadrature::QuadratureConfig& cfg = {});

/// Ground-state shift 4 pi int r^2 f(r)^2 / (e1 - e0 + omega(r)) dr. The
/// energy denominator enters at first power (standard second-order
/// perturbation theory); the integrand is regular.
double gamma0_groundshift(const ModelParams& p,
                          const quadrature::QuadratureConfig& cfg = {});

LevelShift compute_level_shift(const ModelParams& p,
                               const quadrature::QuadratureConfig& cfg = {});

Resonance resonance(const ModelParams& p,
                    const quadrature::QuadratureConfig& cfg = {});
Resonance resonance(const ModelParams& p, const LevelShift& ls);

} // namespace sblab::levelshift
