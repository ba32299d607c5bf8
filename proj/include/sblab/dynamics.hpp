#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "sblab/levelshift.hpp"
#include "sblab/model.hpp"

namespace sblab::dynamics {

using complex = std::complex<double>;

struct SurvivalCurve {
    std::vector<double> times;
    std::vector<complex> amplitudes;
    std::string method; // "residue" | "quadrature" | "oracle"
};

/// Survival amplitude of the bare excited state in closed form:
/// a(t) = exp(-i t lambda1_tilde)
///      = exp(-i t (e1 - g^2 Re Gamma_-0)) exp(-t g^2 Im Gamma_-0),
/// the residue of the spectral Lorentzian at the second-order resonance.
complex survival_residue(double t, const levelshift::Resonance& res);

/// Symmetric integration window [center - half_width, center + half_width]
/// around the shifted line center.
struct Window {
    double half_width;
};

/// Survival amplitude by direct quadrature of the spectral formula
///   a(t) = pi^-1 int dz e^{-i t z} Im (e1 - z - g^2 Gamma_-0)^-1
/// over a finite window, plus a closed-form correction for the truncated
/// 1/z^2 tails (sine-integral based). The residual after correction is
/// bounded by 2 gamma^3 / (3 pi L^3); the window must keep that below
/// 10 x abs_tol or WindowTooNarrow is raised. Default window: wide enough
/// for both 200 half-widths and the tail bound.
complex survival_quadrature(double t, const levelshift::Resonance& res,
                            std::optional<Window> window = std::nullopt,
                            const quadrature::QuadratureConfig& cfg = {});

SurvivalCurve survival_curve_residue(const std::vector<double>& times,
                                     const levelshift::Resonance& res);
SurvivalCurve survival_curve_quadrature(const std::vector<double>& times,
                                        const levelshift::Resonance& res,
                                        std::optional<Window> window = std::nullopt,
                                        const quadrature::QuadratureConfig& cfg = {});

/// Columns (t, re_a, im_a, abs2_a, method), one row per time point.
std::string to_csv(const SurvivalCurve& curve);

/// Smooth bump-plateau energy cutoff scaled about e1:
/// chi_s = 1 on [e1 - s delta/2, e1 + s delta/2], supported in
/// (e1 - 3 s delta/4, e1 + 3 s delta/4), built from the exp(-1/x) mollifier.
double chi_cutoff(double r, double s, const ModelParams& p);

/// The scale the remainder analysis optimizes: s = g^(2/3).
inline double default_chi_scale(const ModelParams& p) {
    return std::pow(p.g, 2.0 / 3.0);
}

} // namespace sblab::dynamics
