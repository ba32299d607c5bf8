#include "sblab/levelshift.hpp"

namespace sblab::levelshift {

double theta(double tau, const ModelParams& p) {
    const double threshold = p.m - p.e1;
    if (tau <= threshold)
        throw BelowThreshold("theta: tau must exceed m - e1");
    const double s = p.e1 + tau;
    const double r2 = std::max(s * s - p.m * p.m, 0.0);
    const double r = std::sqrt(r2);
    const double f = form_factor(r, p);
    return 4.0 * M_PI * s * r * f * f;
}

namespace {

// Continuous extension of theta: quadrature nodes can round onto the
// threshold endpoint, where the limit is zero.
auto theta_extended(const ModelParams& p) {
    const double threshold = p.m - p.e1;
    return [&p, threshold](double tau) { return tau <= threshold ? 0.0 : theta(tau, p); };
}

} // namespace

complex gamma_eps(double eps, int sign, const ModelParams& p,
                  const quadrature::QuadratureConfig& cfg) {
    const double lo = p.m - p.e1;
    auto res = quadrature::epsilon_regularized(
        theta_extended(p), 0.0, eps, sign, lo, std::numeric_limits<double>::infinity(), cfg);
    return res.value;
}

complex gamma_boundary(int sign, const ModelParams& p,
                       const quadrature::QuadratureConfig& cfg) {
    const double lo = p.m - p.e1;
    auto th = theta_extended(p);
    const double cutoff = quadrature::truncation_point(th, lo, cfg);
    auto pv = quadrature::principal_value(th, 0.0, lo, cutoff, cfg);
    return {pv.value, -sign * M_PI * theta(0.0, p)};
}

double gamma0_groundshift(const ModelParams& p, const quadrature::QuadratureConfig& cfg) {
    auto integrand = [&p](double r) {
        const double f = form_factor(r, p);
        return 4.0 * M_PI * r * r * f * f / (p.e1 - p.e0 + omega(r, p));
    };
    return quadrature::integrate_to_infinity(integrand, 0.0, cfg).value;
}

LevelShift compute_level_shift(const ModelParams& p,
                               const quadrature::QuadratureConfig& cfg) {
    LevelShift ls;
    ls.gamma_minus0 = gamma_boundary(-1, p, cfg);
    ls.gamma_plus0 = std::conj(ls.gamma_minus0);
    ls.theta0 = theta(0.0, p);
    ls.gamma0_gs = gamma0_groundshift(p, cfg);
    return ls;
}

Resonance resonance(const ModelParams& p, const LevelShift& ls) {
    const double g2 = p.g * p.g;
    Resonance r;
    r.lambda1_tilde = p.e1 - g2 * ls.gamma_minus0;
    r.lambda0_approx = p.e0 - g2 * ls.gamma0_gs;
    r.decay_rate = 2.0 * g2 * ls.gamma_minus0.imag();
    r.params = p;
    return r;
}

Resonance resonance(const ModelParams& p, const quadrature::QuadratureConfig& cfg) {
    return resonance(p, compute_level_shift(p, cfg));
}

} // namespace sblab::levelshift
