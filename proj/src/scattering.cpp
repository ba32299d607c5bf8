#include "sblab/scattering.hpp"

namespace sblab::scattering {

double bump_profile(double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - x * x));
}

WavePacket bump_packet(double a, double b, double amplitude) {
    if (!(0.0 < a && a < b) || std::isinf(b))
        throw SupportAtOrigin("bump_packet: support must satisfy 0 < a < b < inf");
    auto avg = [a, b, amplitude](double r) -> complex {
        const double x = (2.0 * r - a - b) / (b - a);
        return 4.0 * M_PI * amplitude * bump_profile(x);
    };
    return WavePacket{a, b, avg};
}

PairKernel pair_kernel(const WavePacket& h, const WavePacket& l, const ModelParams& p) {
    if (!(h.support_lo > 0.0) || !(l.support_lo > 0.0))
        throw SupportAtOrigin("pair_kernel: packet support touches r = 0");
    const double lo = std::max(h.support_lo, l.support_lo);
    const double hi = std::min(h.support_hi, l.support_hi);
    auto Hh = h.angular_average;
    auto Hl = l.angular_average;
    auto val = [lo, hi, Hh, Hl, p](double r) -> complex {
        if (r <= lo || r >= hi) return {0.0, 0.0};
        const double f = form_factor(r, p);
        const double r2 = r * r;
        return r2 * r2 * f * f * std::conj(Hh(r)) * Hl(r);
    };
    return PairKernel{val, lo, hi};
}

complex w_function(const WavePacket& h, const WavePacket& l, double r,
                   const ModelParams& p) {
    if (r < 0.0) throw Error("w_function: negative radial momentum");
    const complex lk = l.angular_average(r) / (4.0 * M_PI);
    return r * r * lk * form_factor(r, p) * std::conj(h.angular_average(r));
}

complex zeta(double t, const PairKernel& G, double lambda0, const ModelParams& p,
             const quadrature::QuadratureConfig& cfg) {
    if (G.lo >= G.hi) return {0.0, 0.0};
    auto integrand = [&](double r) -> complex {
        const double phase = t * (omega(r, p) + lambda0);
        return G.value(r) * std::polar(1.0, phase);
    };
    return quadrature::integrate_adaptive(integrand, G.lo, G.hi, cfg).value;
}

complex transition_lorentzian(const WavePacket& h, const WavePacket& l,
                              const levelshift::LevelShift& ls, double lambda0,
                              double gs_norm_sq, const ModelParams& p,
                              const quadrature::QuadratureConfig& cfg) {
    if (!(gs_norm_sq > 0.0))
        throw Error("transition_lorentzian: ground-state norm must be positive");
    const PairKernel G = pair_kernel(h, l, p);
    if (G.lo >= G.hi) return {0.0, 0.0};
    const double g2 = p.g * p.g;
    const complex pole_minus = p.e1 - g2 * ls.gamma_minus0;       // resonance
    const complex pole_plus = p.e1 - g2 * std::conj(ls.gamma_minus0);
    const double num = p.e1 - g2 * ls.gamma_minus0.real() - lambda0;
    auto integrand = [&](double r) -> complex {
        const double om = omega(r, p);
        return G.value(r) * num / ((om + lambda0 - pole_minus) * (om - lambda0 + pole_plus));
    };
    const complex integral = quadrature::integrate_adaptive(integrand, G.lo, G.hi, cfg).value;
    return complex{0.0, 4.0 * M_PI * g2 / gs_norm_sq} * integral;
}

complex onshell_kernel(double r, const levelshift::LevelShift& ls, double lambda0,
                       double gs_norm_sq, const ModelParams& p) {
    if (!(r > 0.0)) throw Error("onshell_kernel: momentum must be positive");
    if (!(gs_norm_sq > 0.0))
        throw Error("onshell_kernel: ground-state norm must be positive");
    const double g2 = p.g * p.g;
    const complex lt1 = p.e1 - g2 * ls.gamma_minus0;
    const double om = omega(r, p);
    const double f = form_factor(r, p);
    const double num = lt1.real() - lambda0;
    const complex denom = (om + lambda0 - lt1) * (om - lambda0 + std::conj(lt1));
    return complex{0.0, 4.0 * M_PI * g2 / gs_norm_sq} * f * f * (r / om) * num / denom;
}

} // namespace sblab::scattering
