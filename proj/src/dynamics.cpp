#include "sblab/dynamics.hpp"

#include <gsl/gsl_sf_expint.h>

#include <cstdio>
#include <sstream>

namespace sblab::dynamics {

complex survival_residue(double t, const levelshift::Resonance& res) {
    if (t < 0.0) throw Error("survival_residue: t must be non-negative");
    return std::exp(complex{0.0, -t} * res.lambda1_tilde);
}

namespace {

struct LineShape {
    double center; // e1 - g^2 Re Gamma_-0
    double gamma;  // g^2 Im Gamma_-0 > 0
};

LineShape line_shape(const levelshift::Resonance& res) {
    return {res.lambda1_tilde.real(), -res.lambda1_tilde.imag()};
}

double tail_residual_bound(double gamma, double half_width) {
    return 2.0 * gamma * gamma * gamma / (3.0 * M_PI * std::pow(half_width, 3));
}

} // namespace

complex survival_quadrature(double t, const levelshift::Resonance& res,
                            std::optional<Window> window,
                            const quadrature::QuadratureConfig& cfg) {
    if (t < 0.0) throw Error("survival_quadrature: t must be non-negative");
    const auto [z0, gamma] = line_shape(res);
    if (!(gamma > 0.0))
        throw Error("survival_quadrature: needs g > 0 (zero line width)");

    const ModelParams& p = res.params;
    double half_width;
    if (window) {
        half_width = window->half_width;
    } else {
        // 200 g^2 |Gamma_-0| half-widths about e1, recentered on z0, widened
        // until the tail residual bound clears 10 x abs_tol.
        const double covering =
            200.0 * std::abs(p.e1 - res.lambda1_tilde) + std::abs(z0 - p.e1);
        const double from_tail =
            std::cbrt(2.0 * gamma * gamma * gamma / (3.0 * M_PI * 10.0 * cfg.abs_tol));
        half_width = std::max(covering, from_tail);
    }
    if (tail_residual_bound(gamma, half_width) > 10.0 * cfg.abs_tol)
        throw WindowTooNarrow("survival_quadrature: tail residual bound exceeds 10 x abs_tol");

    auto lorentz = [z0 = z0, gamma = gamma](double z) {
        const double d = z - z0;
        return gamma / (d * d + gamma * gamma);
    };
    auto re_part = quadrature::integrate_adaptive(
        [&](double z) { return std::cos(t * z) * lorentz(z); }, z0 - half_width,
        z0 + half_width, cfg, {z0});
    auto im_part = quadrature::integrate_adaptive(
        [&](double z) { return std::sin(t * z) * lorentz(z); }, z0 - half_width,
        z0 + half_width, cfg, {z0});
    complex windowed{re_part.value / M_PI, -im_part.value / M_PI};

    // Truncated tails of the exact 1/x^2 asymptote, symmetric about z0:
    //   (2 gamma / pi) e^{-i t z0} [cos(tL)/L - t (pi/2 - Si(tL))].
    const double tl = t * half_width;
    const double si = gsl_sf_Si(tl);
    const double tail_re = std::cos(tl) / half_width - t * (M_PI_2 - si);
    const complex tail =
        (2.0 * gamma / M_PI) * std::exp(complex{0.0, -t * z0}) * tail_re;

    return windowed + tail;
}

SurvivalCurve survival_curve_residue(const std::vector<double>& times,
                                     const levelshift::Resonance& res) {
    SurvivalCurve c;
    c.times = times;
    c.method = "residue";
    c.amplitudes.reserve(times.size());
    for (double t : times) c.amplitudes.push_back(survival_residue(t, res));
    return c;
}

SurvivalCurve survival_curve_quadrature(const std::vector<double>& times,
                                        const levelshift::Resonance& res,
                                        std::optional<Window> window,
                                        const quadrature::QuadratureConfig& cfg) {
    SurvivalCurve c;
    c.times = times;
    c.method = "quadrature";
    c.amplitudes.reserve(times.size());
    for (double t : times) c.amplitudes.push_back(survival_quadrature(t, res, window, cfg));
    return c;
}

std::string to_csv(const SurvivalCurve& curve) {
    std::ostringstream os;
    os << "t,re_a,im_a,abs2_a,method\n";
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%s\n", curve.times[i],
                      curve.amplitudes[i].real(), curve.amplitudes[i].imag(),
                      std::norm(curve.amplitudes[i]), curve.method.c_str());
        os << buf;
    }
    return os.str();
}

double chi_cutoff(double r, double s, const ModelParams& p) {
    if (!(s > 0.0)) throw Error("chi_cutoff: scale s must be positive");
    const double delta = delta_gap(p);
    const double u = std::abs(r - p.e1) / (s * delta);
    if (u <= 0.5) return 1.0;
    if (u >= 0.75) return 0.0;
    const double x = (0.75 - u) / 0.25;
    auto phi = [](double y) { return y > 0.0 ? std::exp(-1.0 / y) : 0.0; };
    return phi(x) / (phi(x) + phi(1.0 - x));
}

} // namespace sblab::dynamics
