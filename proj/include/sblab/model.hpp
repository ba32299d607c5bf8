#pragma once

#include <cmath>
#include <string>

#include "sblab/errors.hpp"

namespace sblab {

/// Physical constants of the two-level system coupled to a massive scalar
/// field. The lower level is pinned at e0 = 0; the field dispersion is
/// omega(k) = sqrt(k^2 + m^2) and the coupling profile is the Gaussian-cutoff
/// form factor f(k) = exp(-k^2/Lambda^2) / sqrt(omega(k)).
///
/// Validity requires 0 < m < e1 (the one-boson scattering channel is open)
/// and e1 - e0 not a multiple of m, so that no cluster of bosons at rest can
/// bridge the two levels exactly.
struct ModelParams {
    double e0 = 0.0; // fixed, kept as a field for formula readability
    double e1;
    double m;
    double lambda_uv;
    double g;

    static ModelParams make(double e1, double m, double lambda_uv, double g);
    static ModelParams reference(double g = 0.05);

    double delta_gap() const;
};

inline double omega(double r, const ModelParams& p) {
    if (r < 0.0) throw Error("omega: negative radial momentum");
    return std::sqrt(r * r + p.m * p.m);
}

inline double form_factor(double r, const ModelParams& p) {
    if (r < 0.0) throw Error("form_factor: negative radial momentum");
    return std::exp(-r * r / (p.lambda_uv * p.lambda_uv)) / std::sqrt(omega(r, p));
}

/// xi(k) = k^2/omega(k) = omega(k) - m^2/omega(k); satisfies
/// 0 <= xi <= omega and xi >= omega - m.
inline double xi(double r, const ModelParams& p) {
    return r * r / omega(r, p);
}

/// Radial derivative part of the dilated form factor: with D the generator of
/// dilations, (Df)(k) = i * dilation_profile(|k|) for spherically symmetric f.
inline double dilation_profile(double r, const ModelParams& p) {
    const double om2 = r * r + p.m * p.m;
    return form_factor(r, p) *
           (1.5 - 2.0 * r * r / (p.lambda_uv * p.lambda_uv) - 0.5 * r * r / om2);
}

/// dist(e1 - e0, m*N) over positive integers; throws when the distance
/// vanishes (within 1e-12) or when m >= e1.
inline double delta_gap(const ModelParams& p) {
    constexpr double tol = 1e-12;
    if (p.m >= p.e1)
        throw MassOrderViolation("boson mass must be below e1 - e0 = " + std::to_string(p.e1));
    const double diff = p.e1 - p.e0;
    const double n = std::round(diff / p.m);
    double d = std::abs(diff - n * p.m);
    if (n < 0.5) d = std::abs(diff - p.m); // nearest positive multiple
    if (d <= tol)
        throw GapViolation("e1 - e0 lies on a multiple of the boson mass");
    return d;
}

inline double ModelParams::delta_gap() const { return sblab::delta_gap(*this); }

inline ModelParams ModelParams::make(double e1, double m, double lambda_uv, double g) {
    if (!(m > 0.0)) throw MassOrderViolation("boson mass must be positive");
    if (!(lambda_uv > 0.0)) throw ConfigError("lambda_uv must be positive");
    if (g < 0.0) throw ConfigError("coupling g must be non-negative");
    ModelParams p{0.0, e1, m, lambda_uv, g};
    sblab::delta_gap(p); // throws GapViolation / MassOrderViolation
    return p;
}

/// Desk-scale reference instance: e1 = 2.5, m = 1, Lambda = 2, gap delta = 1/2.
inline ModelParams ModelParams::reference(double g) {
    return make(2.5, 1.0, 2.0, g);
}

} // namespace sblab
