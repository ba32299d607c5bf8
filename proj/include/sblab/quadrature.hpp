#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <type_traits>
#include <vector>

#include "sblab/errors.hpp"

namespace sblab::quadrature {

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 1 << 14;
    double truncation_threshold = 1e-16; // magnitude floor for semi-infinite cutoff
};

template <class T>
struct IntegralResult {
    T value{};
    double error = 0.0;   // sum of accepted local error estimates
    bool converged = true; // false when the subdivision budget ran out
    int subdivisions = 0;
};

/// Gauss-Legendre nodes and weights on [-1, 1], Newton iteration on the
/// Legendre recurrence.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

namespace detail {

const std::vector<double>& gl15_nodes();
const std::vector<double>& gl15_weights();

template <class F>
auto gl15(F&& f, double a, double b) {
    const auto& xs = gl15_nodes();
    const auto& ws = gl15_weights();
    const double mid = 0.5 * (a + b);
    const double hal = 0.5 * (b - a);
    using R = std::invoke_result_t<F, double>;
    R acc{};
    for (std::size_t i = 0; i < xs.size(); ++i) acc += ws[i] * f(mid + hal * xs[i]);
    return acc * hal;
}

} // namespace detail

/// Adaptive bisection on top of the 15-point Gauss-Legendre rule. A segment is
/// accepted when the two-half refinement agrees with the single-panel value to
/// the length-prorated tolerance. Deterministic: segments are processed
/// left-to-right and accumulated in acceptance order. Optional breakpoints
/// pre-split the interval (useful when the integrand has a known sharp
/// feature; bisection then homes in on it from a segment endpoint).
template <class F>
auto integrate_adaptive(F&& f, double a, double b, const QuadratureConfig& cfg = {},
                        const std::vector<double>& breakpoints = {}) {
    using R = std::invoke_result_t<F, double>;
    IntegralResult<R> out;
    if (a == b) return out;

    std::vector<double> cuts{a, b};
    for (double c : breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());

    struct Seg {
        double a, b;
        R whole;
    };
    std::vector<Seg> stack;
    for (std::size_t i = cuts.size() - 1; i >= 1; --i) {
        stack.push_back({cuts[i - 1], cuts[i], detail::gl15(f, cuts[i - 1], cuts[i])});
        if (i == 1) break;
    }

    const double total_len = std::abs(b - a);
    int budget = cfg.max_subdivisions;
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (s.a + s.b);
        const R left = detail::gl15(f, s.a, mid);
        const R right = detail::gl15(f, mid, s.b);
        const R refined = left + right;
        const double err = std::abs(refined - s.whole);
        const double len = s.b - s.a;
        const double tol = std::max(cfg.abs_tol * len / total_len,
                                    cfg.rel_tol * std::abs(refined));
        const bool too_small = len <= 8.0 * std::numeric_limits<double>::epsilon() *
                                          std::max({std::abs(s.a), std::abs(s.b), 1.0});
        if (err <= tol || too_small) {
            out.value += refined;
            out.error += err;
            continue;
        }
        if (budget <= 0) {
            out.value += refined;
            out.error += err;
            out.converged = false;
            continue;
        }
        --budget;
        ++out.subdivisions;
        stack.push_back({mid, s.b, right});
        stack.push_back({s.a, mid, left});
    }
    return out;
}

/// Truncation point for semi-infinite integrals: the first R in a doubling
/// scan with |f| below cfg.truncation_threshold everywhere on [R, 2R]
/// (sampled); the integral is then taken over [a, 2R].
template <class F>
double truncation_point(F&& f, double a, const QuadratureConfig& cfg = {}) {
    double r = std::max(a, 0.0) + 1.0;
    for (int k = 0; k < 60; ++k) {
        bool below = true;
        for (int i = 0; i <= 32; ++i) {
            const double x = r + (r / 32.0) * i; // samples [R, 2R]
            if (std::abs(f(x)) >= cfg.truncation_threshold) {
                below = false;
                break;
            }
        }
        if (below) return 2.0 * r;
        r *= 2.0;
    }
    throw Error("truncation_point: integrand does not fall below the threshold");
}

template <class F>
auto integrate_to_infinity(F&& f, double a, const QuadratureConfig& cfg = {},
                           const std::vector<double>& breakpoints = {}) {
    const double b = truncation_point(f, a, cfg);
    return integrate_adaptive(f, a, b, cfg, breakpoints);
}

/// Cauchy principal value of  numerator(x) / (x - pole)  over (a, b); b may be
/// +infinity. The symmetric window [pole-w, pole+w] is folded into
/// int_0^w (numerator(pole+u) - numerator(pole-u))/u du, which is regular for
/// continuous numerators; the rest is plain adaptive integration.
IntegralResult<double> principal_value(const std::function<double(double)>& numerator,
                                       double pole, double a, double b,
                                       const QuadratureConfig& cfg = {});

/// int f(x) / ((x - pole) +- i eps) dx over (a, b); b may be +infinity.
/// Converges to the Sokhotski-Plemelj boundary value
/// PV -+ i pi f(pole) as eps -> 0.
IntegralResult<std::complex<double>>
epsilon_regularized(const std::function<double(double)>& f, double pole, double eps,
                    int sign, double a, double b, const QuadratureConfig& cfg = {});

} // namespace sblab::quadrature
