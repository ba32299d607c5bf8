#pragma once

#include <complex>
#include <functional>

#include "sblab/levelshift.hpp"
#include "sblab/model.hpp"

namespace sblab::scattering {

using complex = std::complex<double>;

enum class Smoothness { smooth_compact };

/// One-boson test function, reduced to the radial line. Only the angular
/// average H(r) = int dSigma h(r, Sigma) is stored: every observable in this
/// library factorizes over the two sphere angles, so the full angular
/// dependence is unobservable. Support must stay away from r = 0.
struct WavePacket {
    double support_lo;
    double support_hi;
    std::function<complex(double)> angular_average; // H(r), zero outside support
    Smoothness smoothness = Smoothness::smooth_compact;
};

/// Reference packet: the C-infinity bump exp(-1/(1-x^2)) rescaled to [a, b],
/// spherically symmetric, with H(r) = 4 pi * amplitude * bump.
WavePacket bump_packet(double a, double b, double amplitude = 1.0);

/// Shared mollifier: exp(-1/(1-x^2)) on |x| < 1, zero outside.
double bump_profile(double x);

/// Radial pair kernel G_{h,l}(r) = r^4 f(r)^2 conj(H_h(r)) H_l(r);
/// zero for r < 0 and outside the common support.
struct PairKernel {
    std::function<complex(double)> value;
    double lo; // intersection of the packet supports (lo >= hi means empty)
    double hi;
};

PairKernel pair_kernel(const WavePacket& h, const WavePacket& l, const ModelParams& p);

/// W(k) = |k|^2 l(k) f(|k|) conj(H_h(|k|)) for spherically symmetric l,
/// with l(k) = H_l(|k|) / (4 pi).
complex w_function(const WavePacket& h, const WavePacket& l, double r,
                   const ModelParams& p);

/// zeta(t) = int_0^inf G(r) e^{i t (omega(r) + lambda0)} dr. Decays like
/// 1/(1+t^2) for smooth compactly supported packets.
complex zeta(double t, const PairKernel& G, double lambda0, const ModelParams& p,
             const quadrature::QuadratureConfig& cfg = {});

/// Leading-order transition amplitude
///   T_P(h,l) = 4 pi i g^2 ||Psi||^-2 int dr G(r) (e1 - g^2 Re Gamma_-0 - lambda0)
///              / [(omega(r)+lambda0-(e1-g^2 Gamma_-0))
///                 (omega(r)-lambda0+(e1-g^2 conj Gamma_-0))].
/// The integrand is regular because Im Gamma_-0 > 0.
complex transition_lorentzian(const WavePacket& h, const WavePacket& l,
                              const levelshift::LevelShift& ls, double lambda0,
                              double gs_norm_sq, const ModelParams& p,
                              const quadrature::QuadratureConfig& cfg = {});

/// Smooth on-shell amplitude multiplying delta(omega(k) - omega(k')) in the
/// radial measure convention 4 pi r^2 dr:
///   4 pi i g^2 ||Psi||^-2 f(r)^2 (r/omega(r)) (Re lt1 - lambda0)
///   / [(omega(r)+lambda0-lt1)(omega(r)-lambda0+conj lt1)].
/// The Lorentzian denominators carry omega(r); this is the kernel form of
/// transition_lorentzian under the on-shell delta, and it places the peak of
/// the modulus at omega(r) = Re lt1 - lambda0.
complex onshell_kernel(double r, const levelshift::LevelShift& ls, double lambda0,
                       double gs_norm_sq, const ModelParams& p);

} // namespace sblab::scattering
