#include "sblab/quadrature.hpp"


namespace sblab::quadrature {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw InvalidGrid("gauss_legendre: need at least one node");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = -p1 / pp;
            z += dz;
            if (std::abs(dz) < 1e-15) break;
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

namespace detail {

namespace {
struct Gl15Table {
    std::vector<double> nodes, weights;
    Gl15Table() { gauss_legendre(15, nodes, weights); }
};
// function-local static: safe regardless of which translation unit calls
// first during static initialization
const Gl15Table& gl15_table() {
    static const Gl15Table table;
    return table;
}
} // namespace

const std::vector<double>& gl15_nodes() { return gl15_table().nodes; }
const std::vector<double>& gl15_weights() { return gl15_table().weights; }

} // namespace detail

IntegralResult<double> principal_value(const std::function<double(double)>& numerator,
                                       double pole, double a, double b,
                                       const QuadratureConfig& cfg) {
    const bool semi_infinite = std::isinf(b);
    if (!(pole > a) || (!semi_infinite && !(pole < b)))
        throw PoleOnBoundary("principal_value: pole must lie strictly inside the domain");

    const double right_room = semi_infinite ? std::numeric_limits<double>::infinity() : b - pole;
    const double w = std::min({pole - a, right_room, 1.0}) / 2.0;
    if (!(w > 0.0))
        throw PoleOnBoundary("principal_value: degenerate window around the pole");

    // Divided-difference probe: a jump at the pole makes the symmetric
    // difference quotient blow up like 1/u as u shrinks.
    {
        const double u1 = w * 1e-3, u2 = w * 1e-6;
        const double d1 = std::abs(numerator(pole + u1) - numerator(pole - u1)) / u1;
        const double d2 = std::abs(numerator(pole + u2) - numerator(pole - u2)) / u2;
        const double scale = std::abs(numerator(pole)) + 1.0;
        if (d2 > 50.0 * d1 + 1e3 * scale / w)
            throw NumeratorDiscontinuous("principal_value: numerator jumps at the pole");
    }

    auto folded = [&](double u) { return (numerator(pole + u) - numerator(pole - u)) / u; };
    auto tail = [&](double x) { return numerator(x) / (x - pole); };

    IntegralResult<double> out;
    auto add = [&out](const IntegralResult<double>& r) {
        out.value += r.value;
        out.error += r.error;
        out.converged = out.converged && r.converged;
        out.subdivisions += r.subdivisions;
    };
    add(integrate_adaptive(tail, a, pole - w, cfg));
    add(integrate_adaptive(folded, 0.0, w, cfg));
    if (semi_infinite)
        add(integrate_to_infinity(tail, pole + w, cfg));
    else
        add(integrate_adaptive(tail, pole + w, b, cfg));
    return out;
}

IntegralResult<std::complex<double>>
epsilon_regularized(const std::function<double(double)>& f, double pole, double eps,
                    int sign, double a, double b, const QuadratureConfig& cfg) {
    if (!(eps > 0.0)) throw Error("epsilon_regularized: eps must be positive");
    if (sign != +1 && sign != -1) throw Error("epsilon_regularized: sign must be +-1");

    const std::complex<double> shift{0.0, sign * eps};
    auto integrand = [&](double x) { return f(x) / ((x - pole) + shift); };

    std::vector<double> cuts;
    if (pole > a && (std::isinf(b) || pole < b)) cuts.push_back(pole);

    if (std::isinf(b)) return integrate_to_infinity(integrand, a, cfg, cuts);
    return integrate_adaptive(integrand, a, b, cfg, cuts);
}

} // namespace sblab::quadrature
