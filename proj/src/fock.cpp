#include "sblab/fock.hpp"

#include <Eigen/SparseLU>
#include <numeric>

#include "sblab/quadrature.hpp"

namespace sblab::fock {

RadialGrid build_grid(int m, double k_max, GridScheme scheme) {
    if (m < 2) throw InvalidGrid("build_grid: need at least two nodes");
    if (!(k_max > 0.0)) throw InvalidGrid("build_grid: k_max must be positive");
    RadialGrid g;
    g.k_max = k_max;
    g.scheme = scheme;
    if (scheme == GridScheme::gauss_legendre) {
        std::vector<double> x, w;
        quadrature::gauss_legendre(m, x, w);
        g.nodes.resize(m);
        g.weights.resize(m);
        for (int i = 0; i < m; ++i) {
            g.nodes[i] = 0.5 * k_max * (x[i] + 1.0);
            g.weights[i] = 0.5 * k_max * w[i];
        }
    } else {
        const double h = k_max / m;
        g.nodes.resize(m);
        g.weights.assign(m, h);
        for (int i = 0; i < m; ++i) g.nodes[i] = (i + 0.5) * h; // midpoint rule
    }
    return g;
}

DiscretizedField discretize_field(const ModelParams& p, const RadialGrid& grid) {
    DiscretizedField f;
    const int m = grid.size();
    f.mode_energy.resize(m);
    f.coupling.resize(m);
    f.dilation_coupling.resize(m);
    for (int j = 0; j < m; ++j) {
        const double k = grid.nodes[j];
        const double c = std::sqrt(4.0 * M_PI * grid.weights[j]) * k;
        f.mode_energy[j] = omega(k, p);
        f.coupling[j] = c * form_factor(k, p);
        f.dilation_coupling[j] = c * dilation_profile(k, p);
    }
    return f;
}

namespace {

void enumerate_multisets(int n_modes, int n, std::vector<std::uint16_t>& cur, int from,
                         std::vector<std::vector<std::uint16_t>>& out) {
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
    }
    for (int j = from; j < n_modes; ++j) {
        cur.push_back(static_cast<std::uint16_t>(j));
        enumerate_multisets(n_modes, n, cur, j, out);
        cur.pop_back();
    }
}

} // namespace

FockBasis build_basis(int n_modes, int n_max) {
    if (n_max < 0) throw InvalidGrid("build_basis: n_max must be non-negative");
    FockBasis b;
    b.n_modes = n_modes;
    b.n_max = n_max;
    for (int n = 0; n <= n_max; ++n) {
        std::vector<std::uint16_t> cur;
        enumerate_multisets(n_modes, n, cur, 0, b.states);
    }
    for (int i = 0; i < static_cast<int>(b.states.size()); ++i) b.index[b.states[i]] = i;
    return b;
}

AssembledHamiltonian assemble(const ModelParams& p, const RadialGrid& grid, int n_max,
                              std::int64_t dimension_cap) {
    if (n_max < 1) throw InvalidGrid("assemble: n_max must be at least 1");
    FockBasis basis = build_basis(grid.size(), n_max);
    const std::int64_t dim = basis.dim();
    if (dim > dimension_cap)
        throw DimensionOverflow("assemble: basis dimension " + std::to_string(dim) +
                                " exceeds the cap " + std::to_string(dimension_cap));

    DiscretizedField field = discretize_field(p, grid);
    const int nf = basis.field_dim();
    const double e_spin[2] = {p.e0, p.e1};

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(dim) * (grid.size() + 1));
    for (int si = 0; si < nf; ++si) {
        const auto& occ = basis.states[si];
        double field_energy = 0.0;
        for (auto j : occ) field_energy += field.mode_energy[j];
        for (int spin = 0; spin < 2; ++spin) {
            const int row = spin * nf + si;
            trips.emplace_back(row, row, e_spin[spin] + field_energy);
        }
        if (static_cast<int>(occ.size()) < n_max && p.g != 0.0) {
            for (int j = 0; j < grid.size(); ++j) {
                auto up = occ;
                up.insert(std::lower_bound(up.begin(), up.end(), j),
                          static_cast<std::uint16_t>(j));
                const int ti = basis.index.at(up);
                const int occ_j = static_cast<int>(
                    std::count(occ.begin(), occ.end(), static_cast<std::uint16_t>(j)));
                const double amp = p.g * field.coupling[j] * std::sqrt(occ_j + 1.0);
                for (int spin = 0; spin < 2; ++spin) {
                    const int row = spin * nf + si;
                    const int col = (1 - spin) * nf + ti;
                    trips.emplace_back(row, col, amp);
                    trips.emplace_back(col, row, amp);
                }
            }
        }
    }
    Eigen::SparseMatrix<double> mat(dim, dim);
    mat.setFromTriplets(trips.begin(), trips.end());
    return AssembledHamiltonian{std::move(mat), std::move(basis), std::move(field), p,
                                grid, n_max};
}

EigenDecomposition decompose(const AssembledHamiltonian& h, int dense_limit) {
    const int dim = static_cast<int>(h.matrix.rows());
    if (dim > dense_limit)
        throw EigensolverFailure("decompose: dimension " + std::to_string(dim) +
                                 " above the dense limit");
    Eigen::MatrixXd dense = Eigen::MatrixXd(h.matrix);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
    if (solver.info() != Eigen::Success)
        throw EigensolverFailure("decompose: dense eigensolver did not converge");
    return EigenDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

// Lanczos with full reorthogonalization for the lowest eigenpair.
std::pair<double, Eigen::VectorXd> lanczos_ground(const Eigen::SparseMatrix<double>& a,
                                                  int max_iter, double tol) {
    const int dim = static_cast<int>(a.rows());
    Eigen::VectorXd v = Eigen::VectorXd::Constant(dim, 1.0 / std::sqrt(double(dim)));
    std::vector<Eigen::VectorXd> basis;
    std::vector<double> alpha, beta;
    Eigen::VectorXd w;
    basis.push_back(v);
    for (int it = 0; it < max_iter; ++it) {
        w = a * basis.back();
        const double al = basis.back().dot(w);
        alpha.push_back(al);
        w -= al * basis.back();
        if (basis.size() > 1) w -= beta.back() * basis[basis.size() - 2];
        for (const auto& q : basis) w -= q.dot(w) * q; // reorthogonalize
        const double be = w.norm();
        const int k = static_cast<int>(alpha.size());
        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
        for (int i = 0; i < k; ++i) {
            tri(i, i) = alpha[i];
            if (i + 1 < k) tri(i, i + 1) = tri(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(tri);
        const double lam = small.eigenvalues()(0);
        const double resid = std::abs(be * small.eigenvectors()(k - 1, 0));
        if (resid < tol || be < 1e-14 || it + 1 == max_iter) {
            Eigen::VectorXd ground = Eigen::VectorXd::Zero(dim);
            for (int i = 0; i < k; ++i) ground += small.eigenvectors()(i, 0) * basis[i];
            ground.normalize();
            return {lam, ground};
        }
        beta.push_back(be);
        basis.push_back(w / be);
    }
    throw EigensolverFailure("lanczos_ground: no convergence");
}

} // namespace

std::pair<double, Eigen::VectorXd> ground_state(const AssembledHamiltonian& h,
                                                int dense_limit, bool force_iterative) {
    const int dim = static_cast<int>(h.matrix.rows());
    if (dim <= dense_limit && !force_iterative) {
        auto eig = decompose(h, dense_limit);
        return {eig.values(0), eig.vectors.col(0)};
    }
    const double scale = Eigen::VectorXd(h.matrix.diagonal()).cwiseAbs().maxCoeff() + 1.0;
    return lanczos_ground(h.matrix, std::min(dim, 400), 1e-11 * scale);
}

Eigen::VectorXd ground_projector_contour(const AssembledHamiltonian& h, int n_nodes) {
    if (n_nodes < 4) throw Error("ground_projector_contour: too few contour nodes");
    const int dim = static_cast<int>(h.matrix.rows());
    const double radius = h.params.m / 4.0;

    Eigen::SparseMatrix<std::complex<double>> hc = h.matrix.cast<std::complex<double>>();
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(h.basis.ground_vacuum_index()) = 1.0;

    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(dim);
    Eigen::SparseMatrix<std::complex<double>> shifted = hc;
    for (int k = 0; k < n_nodes; ++k) {
        const double t = 2.0 * M_PI * k / n_nodes;
        const std::complex<double> z = std::polar(radius, t);
        shifted = hc;
        for (int i = 0; i < dim; ++i) shifted.coeffRef(i, i) -= z;
        Eigen::SparseLU<Eigen::SparseMatrix<std::complex<double>>> lu(shifted);
        if (lu.info() != Eigen::Success)
            throw ContourCrossesSpectrum("ground_projector_contour: factorization failed");
        Eigen::VectorXcd x = lu.solve(v);
        if (!(x.norm() < 1e12))
            throw ContourCrossesSpectrum(
                "ground_projector_contour: resolvent blow-up at a contour node");
        acc -= z * x;
    }
    acc /= static_cast<double>(n_nodes);
    // The projected vector is real up to round-off for real symmetric input.
    return acc.real();
}

dynamics::SurvivalCurve survival_oracle(const AssembledHamiltonian& h,
                                        const EigenDecomposition& eig,
                                        const std::vector<double>& times) {
    const int src = h.basis.excited_vacuum_index();
    const Eigen::VectorXd overlaps = eig.vectors.row(src).transpose();
    dynamics::SurvivalCurve c;
    c.times = times;
    c.method = "oracle";
    c.amplitudes.reserve(times.size());
    for (double t : times) {
        complex a{0.0, 0.0};
        for (int n = 0; n < overlaps.size(); ++n) {
            const double pn = overlaps(n) * overlaps(n);
            if (pn == 0.0) continue;
            a += pn * std::polar(1.0, -t * eig.values(n));
        }
        c.amplitudes.push_back(a);
    }
    return c;
}

Eigen::VectorXd apply_sigma1(const FockBasis& basis, const Eigen::VectorXd& v) {
    const int nf = basis.field_dim();
    Eigen::VectorXd out(v.size());
    out.head(nf) = v.tail(nf);
    out.tail(nf) = v.head(nf);
    return out;
}

complex correlator(const AssembledHamiltonian& h, const EigenDecomposition& eig,
                   const Eigen::VectorXd& psi0, double t, int sign) {
    const Eigen::VectorXd flipped = apply_sigma1(h.basis, psi0);
    const Eigen::VectorXd q = eig.vectors.transpose() * flipped;
    complex a{0.0, 0.0};
    for (int n = 0; n < q.size(); ++n) {
        const double pn = q(n) * q(n);
        if (pn == 0.0) continue;
        a += pn * std::polar(1.0, sign * t * eig.values(n)); // e^{i sign t H}
    }
    return a;
}

double mean_level_spacing(const EigenDecomposition& eig, const ModelParams& p) {
    const double half = delta_gap(p) / 2.0;
    std::vector<double> in_window;
    for (int n = 0; n < eig.values.size(); ++n)
        if (std::abs(eig.values(n) - p.e1) <= half) in_window.push_back(eig.values(n));
    if (in_window.size() < 2)
        throw EtaTooSmall("mean_level_spacing: fewer than two levels near e1");
    return (in_window.back() - in_window.front()) / (in_window.size() - 1);
}

complex tmatrix_oracle(const AssembledHamiltonian& h, const EigenDecomposition& eig,
                       const Eigen::VectorXd& psi0, const scattering::WavePacket& hp,
                       const scattering::WavePacket& lp, double eta, double lambda0_num,
                       const quadrature::QuadratureConfig& cfg) {
    const double spacing = mean_level_spacing(eig, h.params);
    if (eta < 3.0 * spacing)
        throw EtaTooSmall("tmatrix_oracle: eta below 3 x mean level spacing " +
                          std::to_string(spacing));

    const scattering::PairKernel G = scattering::pair_kernel(hp, lp, h.params);
    if (G.lo >= G.hi) return {0.0, 0.0};

    const Eigen::VectorXd flipped = apply_sigma1(h.basis, psi0);
    const Eigen::VectorXd q = eig.vectors.transpose() * flipped;
    const double norm_sq = psi0.squaredNorm();

    const ModelParams p = h.params;
    complex t1{0.0, 0.0}, t2{0.0, 0.0};
    const double p_floor = 1e-14 * q.cwiseAbs2().maxCoeff();
    for (int n = 0; n < q.size(); ++n) {
        const double pn = q(n) * q(n);
        if (pn < p_floor) continue;
        const double en = eig.values(n);
        auto resolvent_sum = [&](double lam_sign) {
            auto integrand = [&](double r) -> complex {
                const double om = omega(r, p);
                return G.value(r) /
                       complex{om + lam_sign * (lambda0_num - en), eta};
            };
            return quadrature::integrate_adaptive(integrand, G.lo, G.hi, cfg).value;
        };
        t1 += pn * resolvent_sum(+1.0);
        t2 += pn * resolvent_sum(-1.0);
    }
    const double g2 = p.g * p.g;
    t1 *= complex{0.0, g2};
    t2 *= complex{0.0, g2};
    return 2.0 * M_PI * (t1 - t2) / norm_sq;
}

} // namespace sblab::fock
