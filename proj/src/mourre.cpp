#include "sblab/mourre.hpp"

#include <complex>

#include "sblab/dynamics.hpp"

namespace sblab::mourre {

using complex = std::complex<double>;

DilationMatrix build_dilation(const fock::RadialGrid& grid) {
    const int m = grid.size();
    if (m < 3) throw InvalidGrid("build_dilation: need at least three nodes");
    const auto& k = grid.nodes;

    // derivative on flat-coordinate samples (nonuniform 3-point stencil,
    // one-sided at the boundary rows)
    Eigen::MatrixXd deriv = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < m; ++j) {
        if (j == 0 || j == m - 1) {
            const int a = (j == 0) ? 0 : m - 2;
            const int b = a + 1;
            deriv(j, b) += 1.0 / (k[b] - k[a]);
            deriv(j, a) -= 1.0 / (k[b] - k[a]);
        } else {
            const double hm = k[j] - k[j - 1];
            const double hp = k[j + 1] - k[j];
            deriv(j, j - 1) = -hp / (hm * (hm + hp));
            deriv(j, j) = (hp - hm) / (hm * hp);
            deriv(j, j + 1) = hm / (hp * (hm + hp));
        }
    }
    // symmetrized product (R d + d R)/2 = r d/dr + 1/2: on a uniform grid the
    // central-difference part is antisymmetric and R is diagonal, so the
    // interior of the product is skew-symmetric exactly
    Eigen::VectorXd r = Eigen::Map<const Eigen::VectorXd>(k.data(), m);
    Eigen::MatrixXd prod = 0.5 * (r.asDiagonal() * deriv + deriv * r.asDiagonal());

    // orthonormal mode coordinates carry sqrt(weight)
    Eigen::VectorXd ws(m);
    for (int j = 0; j < m; ++j) ws(j) = std::sqrt(grid.weights[j]);
    DilationMatrix d;
    d.raw = ws.asDiagonal() * prod * ws.cwiseInverse().asDiagonal();
    d.antisym = 0.5 * (d.raw - d.raw.transpose());
    return d;
}

double commutator_check(const std::function<double(double)>& test_fn,
                        const fock::RadialGrid& grid, const ModelParams& p) {
    const int m = grid.size();
    Eigen::VectorXd phi(m), om(m), xiv(m);
    double peak = 0.0;
    for (int j = 0; j < m; ++j) {
        phi(j) = test_fn(grid.nodes[j]);
        peak = std::max(peak, std::abs(phi(j)));
        om(j) = omega(grid.nodes[j], p);
        xiv(j) = xi(grid.nodes[j], p);
    }
    if (std::abs(phi(0)) > 1e-12 * peak || std::abs(phi(m - 1)) > 1e-12 * peak)
        throw SupportTouchesBoundary("commutator_check: test function reaches the grid edge");

    Eigen::VectorXd hat(m);
    for (int j = 0; j < m; ++j)
        hat(j) = std::sqrt(4.0 * M_PI * grid.weights[j]) * grid.nodes[j] * phi(j);
    hat.normalize();

    const DilationMatrix d = build_dilation(grid);
    // [omega, iD] = [A, omega] with D = iA.
    const Eigen::VectorXd lhs =
        d.antisym * om.cwiseProduct(hat) - om.cwiseProduct(d.antisym * hat);
    return (lhs - xiv.cwiseProduct(hat)).norm();
}

namespace {

struct PbarSpace {
    Eigen::MatrixXd hamiltonian; // dense H restricted to the complement of phi1 x Omega
    std::vector<int> kept;       // original basis indices
    fock::AssembledHamiltonian assembled;
};

PbarSpace build_pbar(const ModelParams& p, const fock::RadialGrid& grid, int n_max) {
    fock::AssembledHamiltonian h = fock::assemble(p, grid, n_max);
    const int dim = static_cast<int>(h.matrix.rows());
    const int drop = h.basis.excited_vacuum_index();
    std::vector<int> kept;
    kept.reserve(dim - 1);
    for (int i = 0; i < dim; ++i)
        if (i != drop) kept.push_back(i);
    Eigen::MatrixXd dense = Eigen::MatrixXd(h.matrix);
    Eigen::MatrixXd out(dim - 1, dim - 1);
    for (int a = 0; a < dim - 1; ++a)
        for (int b = 0; b < dim - 1; ++b) out(a, b) = dense(kept[a], kept[b]);
    return {std::move(out), std::move(kept), std::move(h)};
}

// dGamma(xi) + coupling_scale * sigma_1 Phi(Df) on the kept basis. Df is i
// times a real profile, so the coupling entries are +- i d_j sqrt(n_j + 1).
Eigen::MatrixXcd commutator_operator(const PbarSpace& space, double coupling_scale) {
    const auto& h = space.assembled;
    const auto& basis = h.basis;
    const int nf = basis.field_dim();
    const int n = static_cast<int>(space.kept.size());

    std::vector<int> pos(2 * nf, -1);
    for (int a = 0; a < n; ++a) pos[space.kept[a]] = a;

    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
    const ModelParams& p = h.params;
    for (int a = 0; a < n; ++a) {
        const int orig = space.kept[a];
        const auto& occ = basis.states[basis.state_of(orig)];
        double diag = 0.0;
        for (auto j : occ) diag += xi(h.grid.nodes[j], p);
        c(a, a) = diag;
    }
    if (coupling_scale != 0.0) {
        for (int si = 0; si < nf; ++si) {
            const auto& occ = basis.states[si];
            if (static_cast<int>(occ.size()) >= h.n_max) continue;
            for (int j = 0; j < h.grid.size(); ++j) {
                auto up = occ;
                up.insert(std::lower_bound(up.begin(), up.end(), j),
                          static_cast<std::uint16_t>(j));
                const int ti = basis.index.at(up);
                const int occ_j = static_cast<int>(
                    std::count(occ.begin(), occ.end(), static_cast<std::uint16_t>(j)));
                const double amp =
                    coupling_scale * h.field.dilation_coupling[j] * std::sqrt(occ_j + 1.0);
                for (int spin = 0; spin < 2; ++spin) {
                    const int row = pos[(1 - spin) * nf + ti]; // created state
                    const int col = pos[spin * nf + si];
                    if (row < 0 || col < 0) continue;
                    c(row, col) += complex{0.0, amp};
                    c(col, row) += complex{0.0, -amp};
                }
            }
        }
    }
    return c;
}

} // namespace

MourreReport mourre_constant(const ModelParams& p, const fock::RadialGrid& grid,
                             int n_max) {
    PbarSpace space = build_pbar(p, grid, n_max);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(space.hamiltonian);
    if (eig.info() != Eigen::Success)
        throw EigensolverFailure("mourre_constant: eigensolver failed");

    const int n = static_cast<int>(space.kept.size());
    std::vector<int> window;
    for (int i = 0; i < n; ++i)
        if (dynamics::chi_cutoff(eig.eigenvalues()(i), 1.0, p) > 1e-8) window.push_back(i);
    if (window.empty())
        throw EmptyCutoffRange("mourre_constant: cutoff annihilates the truncated space");

    Eigen::MatrixXd w(n, static_cast<int>(window.size()));
    for (std::size_t c = 0; c < window.size(); ++c) w.col(c) = eig.eigenvectors().col(window[c]);

    const Eigen::MatrixXcd cop = commutator_operator(space, p.g);
    Eigen::MatrixXcd compressed = w.cast<complex>().adjoint() * cop * w.cast<complex>();
    compressed = 0.5 * (compressed + compressed.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> beig(compressed);
    if (beig.info() != Eigen::Success)
        throw EigensolverFailure("mourre_constant: compressed eigensolver failed");

    const Eigen::MatrixXcd coupling = commutator_operator(space, 1.0) -
                                      commutator_operator(space, 0.0);
    const double coupling_norm = coupling.operatorNorm();

    const double delta = delta_gap(p);
    MourreReport rep;
    rep.alpha_num = beig.eigenvalues()(0);
    rep.coupling_norm = coupling_norm;
    rep.reference_bound = delta / 10.0 - p.g * coupling_norm;
    rep.g = p.g;
    rep.window_lo = p.e1 - 0.75 * delta;
    rep.window_hi = p.e1 + 0.75 * delta;
    rep.window_dim = static_cast<int>(window.size());
    rep.n_modes = grid.size();
    rep.n_max = n_max;
    rep.k_max = grid.k_max;
    return rep;
}

ProbeResult weighted_resolvent_probe(const ModelParams& p, const fock::RadialGrid& grid,
                                     double z, const std::vector<double>& eps_list) {
    const double delta = delta_gap(p);
    if (std::abs(z - p.e1) > delta / 4.0)
        throw Error("weighted_resolvent_probe: z must lie in [e1 - delta/4, e1 + delta/4]");

    PbarSpace space = build_pbar(p, grid, 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(space.hamiltonian);
    if (eig.info() != Eigen::Success)
        throw EigensolverFailure("weighted_resolvent_probe: eigensolver failed");
    const Eigen::VectorXd& ev = eig.eigenvalues();

    // local spacing floor near z
    std::vector<double> local;
    for (int i = 0; i < ev.size(); ++i)
        if (std::abs(ev(i) - z) < 0.3) local.push_back(ev(i));
    if (local.size() < 2)
        throw EpsBelowSpacingFloor("weighted_resolvent_probe: no levels near z");
    const double spacing = (local.back() - local.front()) / (local.size() - 1);
    for (double eps : eps_list)
        if (eps < 2.0 * spacing)
            throw EpsBelowSpacingFloor("weighted_resolvent_probe: eps " +
                                       std::to_string(eps) + " below 2 x spacing " +
                                       std::to_string(spacing));

    // weight rho: identity on vacuum states, (A^T A + 1)^{-1/2} per one-boson block
    const DilationMatrix d = build_dilation(grid);
    const int m = grid.size();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sq(d.antisym.transpose() * d.antisym +
                                                      Eigen::MatrixXd::Identity(m, m));
    const Eigen::MatrixXd rho1 = sq.eigenvectors() *
                                 sq.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                                 sq.eigenvectors().transpose();

    const int n = static_cast<int>(space.kept.size());
    const int nf = space.assembled.basis.field_dim();
    Eigen::MatrixXd rho = Eigen::MatrixXd::Identity(n, n);
    std::vector<int> pos(2 * nf, -1);
    for (int a = 0; a < n; ++a) pos[space.kept[a]] = a;
    auto fill_block = [&](int spin) {
        std::vector<int> idx(m);
        for (int j = 0; j < m; ++j) idx[j] = pos[spin * nf + 1 + j]; // modes follow vacuum
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                if (idx[a] >= 0 && idx[b] >= 0) rho(idx[a], idx[b]) = rho1(a, b);
    };
    fill_block(0);
    fill_block(1);

    const Eigen::MatrixXd y = rho * eig.eigenvectors();

    ProbeResult out;
    out.spacing = spacing;
    out.z = z;
    for (double eps : eps_list) {
        Eigen::VectorXcd dinv(n);
        double unweighted = 0.0;
        for (int i = 0; i < n; ++i) {
            const complex den{ev(i) - z, -eps};
            dinv(i) = 1.0 / den;
            unweighted = std::max(unweighted, 1.0 / std::abs(den));
        }
        // power iteration on B^dag B with B = Y diag(dinv) Y^T
        Eigen::VectorXcd v = Eigen::VectorXcd::Constant(n, 1.0 / std::sqrt(double(n)));
        double norm_est = 0.0;
        for (int it = 0; it < 80; ++it) {
            Eigen::VectorXcd bv =
                y.cast<complex>() * dinv.cwiseProduct(y.transpose().cast<complex>() * v);
            Eigen::VectorXcd bbv = y.cast<complex>() *
                                   dinv.conjugate().cwiseProduct(
                                       y.transpose().cast<complex>() * bv);
            const double nn = std::sqrt(bbv.norm());
            if (it > 10 && std::abs(nn - norm_est) < 1e-10 * nn) {
                norm_est = nn;
                break;
            }
            norm_est = nn;
            v = bbv / bbv.norm();
        }
        out.points.push_back({eps, norm_est, unweighted});
    }
    return out;
}

} // namespace sblab::mourre
