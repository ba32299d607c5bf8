#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "sblab/fock.hpp"
#include "sblab/levelshift.hpp"

using namespace sblab;
using namespace sblab::fock;
using complex = std::complex<double>;

namespace {
const ModelParams kRef = ModelParams::reference(0.05);
}

TEST_CASE("grid: textbook two-point nodes and degree-3 exactness") {
    const auto g = build_grid(2, 1.0);
    CHECK(g.nodes[0] == doctest::Approx(0.5 - 0.5 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(g.nodes[1] == doctest::Approx(0.5 + 0.5 / std::sqrt(3.0)).epsilon(1e-14));
    double quad = 0.0;
    for (int j = 0; j < 2; ++j) quad += g.weights[j] * g.nodes[j] * g.nodes[j];
    CHECK(quad == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(build_grid(1, 1.0), InvalidGrid);
    CHECK_THROWS_AS(build_grid(8, -2.0), InvalidGrid);
}

TEST_CASE("discretized coupling norm converges to the continuum one") {
    auto integrand = [&](double r) {
        const double f = form_factor(r, kRef);
        return 4.0 * M_PI * r * r * f * f;
    };
    const double continuum = quadrature::integrate_to_infinity(integrand, 0.0).value;
    double prev_err = 1e9;
    double final_sum = 0.0;
    for (int m : {20, 40, 80}) {
        const auto grid = build_grid(m, 6.0);
        const auto field = discretize_field(kRef, grid);
        double sum = 0.0;
        for (double c : field.coupling) sum += c * c;
        const double err = std::abs(sum - continuum);
        CHECK(err < prev_err);
        prev_err = err;
        final_sum = sum;
    }
    // the remaining error is the k_max truncation tail, not grid resolution
    const double truncated = quadrature::integrate_adaptive(integrand, 0.0, 6.0).value;
    CHECK(prev_err < 1e-6);
    CHECK(final_sum == doctest::Approx(truncated).epsilon(1e-12));
}

TEST_CASE("basis dimensions and index maps") {
    const auto b = build_basis(40, 2);
    CHECK(b.field_dim() == 1 + 40 + 40 * 41 / 2);
    CHECK(b.dim() == 2 * 861);
    for (int i = 0; i < b.field_dim(); ++i) CHECK(b.index.at(b.states[i]) == i);
}

TEST_CASE("assembly: free limit is diagonal with the exact spectrum") {
    auto p = ModelParams::make(2.5, 1.0, 2.0, 0.0);
    const auto grid = build_grid(6, 6.0);
    const auto h = assemble(p, grid, 2);
    CHECK(h.matrix.nonZeros() == h.matrix.rows()); // diagonal only
    const auto eig = decompose(h);

    const auto field = discretize_field(p, grid);
    std::multiset<double> expected;
    for (int spin = 0; spin < 2; ++spin)
        for (const auto& occ : h.basis.states) {
            double e = spin == 0 ? p.e0 : p.e1;
            for (auto j : occ) e += field.mode_energy[j];
            expected.insert(e);
        }
    std::multiset<double> got(eig.values.data(), eig.values.data() + eig.values.size());
    auto it = expected.begin();
    for (double v : got) {
        CHECK(v == doctest::Approx(*it).epsilon(1e-12));
        ++it;
    }
}

TEST_CASE("assembly: one-mode, one-boson matrix by hand") {
    const auto grid = build_grid(2, 1.0); // need >= 2 nodes; couple only mode 0 checks
    // single-mode case via a 1-node uniform grid
    RadialGrid one;
    one.k_max = 1.0;
    one.scheme = GridScheme::uniform;
    one.nodes = {0.5};
    one.weights = {1.0};
    const auto p = ModelParams::reference(0.07);
    const auto h = assemble(p, one, 1);
    const auto field = discretize_field(p, one);
    const double om1 = field.mode_energy[0];
    const double gf = p.g * field.coupling[0];

    Eigen::MatrixXd dense = Eigen::MatrixXd(h.matrix);
    REQUIRE(dense.rows() == 4);
    // spin-major layout: (0,vac), (0,1), (1,vac), (1,1)
    Eigen::MatrixXd expected(4, 4);
    expected << 0.0, 0.0, 0.0, gf,
                0.0, om1, gf, 0.0,
                0.0, gf, p.e1, 0.0,
                gf, 0.0, 0.0, p.e1 + om1;
    CHECK((dense - expected).norm() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK((dense - dense.transpose()).norm() == 0.0);
}

TEST_CASE("assembly: symmetry, parity block structure, dimension cap") {
    const auto grid = build_grid(10, 6.0);
    const auto h = assemble(kRef, grid, 2);
    Eigen::MatrixXd dense = Eigen::MatrixXd(h.matrix);
    CHECK((dense - dense.transpose()).norm() == 0.0);

    // parity (spin + boson number) mod 2 is conserved
    const int nf = h.basis.field_dim();
    for (int a = 0; a < dense.rows(); ++a)
        for (int b = 0; b < dense.cols(); ++b) {
            if (dense(a, b) == 0.0) continue;
            const int pa = (a / nf + h.basis.states[a % nf].size()) % 2;
            const int pb = (b / nf + h.basis.states[b % nf].size()) % 2;
            CHECK(pa == pb);
        }

    CHECK_THROWS_AS(assemble(kRef, grid, 2, 100), DimensionOverflow);
}

TEST_CASE("ground state: free limit and variational bound") {
    const auto grid = build_grid(20, 6.0);
    auto free_p = ModelParams::make(2.5, 1.0, 2.0, 0.0);
    const auto h0 = assemble(free_p, grid, 2);
    const auto [lam0, psi0] = ground_state(h0);
    CHECK(lam0 == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(std::abs(psi0(h0.basis.ground_vacuum_index())) == doctest::Approx(1.0));

    double prev = 0.0;
    for (double g : {0.02, 0.05, 0.1}) {
        auto p = ModelParams::reference(g);
        const auto h = assemble(p, grid, 2);
        const auto lam = ground_state(h).first;
        CHECK(lam <= p.e0 + 1e-14);
        CHECK(lam < prev + 1e-14);
        prev = lam;
    }
}

TEST_CASE("ground state energy follows -g^2 Gamma0 with a quartic remainder") {
    const double gamma0 = levelshift::gamma0_groundshift(kRef);
    const auto grid = build_grid(40, 6.0);
    std::vector<double> gs{0.02, 0.04, 0.08}, resid;
    for (double g : gs) {
        auto p = ModelParams::reference(g);
        const auto h = assemble(p, grid, 2);
        resid.push_back(std::abs(ground_state(h).first + g * g * gamma0));
    }
    const double r1 = resid[1] / resid[0];
    const double r2 = resid[2] / resid[1];
    CHECK(r1 == doctest::Approx(16.0).epsilon(0.25));
    CHECK(r2 == doctest::Approx(16.0).epsilon(0.25));
}

TEST_CASE("Richardson-style grid refinement of the ground energy") {
    auto p = ModelParams::reference(0.05);
    const auto lam_m = ground_state(assemble(p, build_grid(20, 6.0), 2)).first;
    const auto lam_2m = ground_state(assemble(p, build_grid(40, 6.0), 2)).first;
    // refinement moves the energy by far less than the g^2 shift it resolves
    CHECK(std::abs(lam_2m - lam_m) < 1e-3 * std::abs(lam_2m));
}

TEST_CASE("eigendecomposition: residuals and orthonormality") {
    const auto grid = build_grid(16, 6.0);
    const auto h = assemble(ModelParams::reference(0.08), grid, 2);
    const auto eig = decompose(h);
    const Eigen::MatrixXd dense = Eigen::MatrixXd(h.matrix);
    const double scale = dense.norm();
    for (int n : {0, 1, 7, static_cast<int>(eig.values.size()) - 1}) {
        const double resid = (dense * eig.vectors.col(n) - eig.values(n) * eig.vectors.col(n)).norm();
        CHECK(resid <= 1e-10 * scale);
    }
    const Eigen::MatrixXd gram =
        eig.vectors.transpose() * eig.vectors -
        Eigen::MatrixXd::Identity(eig.values.size(), eig.values.size());
    CHECK(gram.cwiseAbs().maxCoeff() < 1e-10);

    CHECK_THROWS_AS(decompose(h, 3), EigensolverFailure);
}

TEST_CASE("contour projector rejects a node on the spectrum") {
    // hand-built Hamiltonian with an eigenvalue exactly on the contour circle
    RadialGrid grid;
    grid.k_max = 1.0;
    grid.scheme = GridScheme::uniform;
    grid.nodes = {0.25, 0.75};
    grid.weights = {0.5, 0.5};
    const auto p = ModelParams::reference(0.0);
    auto h = assemble(p, grid, 1);
    h.matrix.coeffRef(0, 0) = p.m / 4.0; // sits on the radius-m/4 contour
    CHECK_THROWS_AS(ground_projector_contour(h, 4), ContourCrossesSpectrum);
    CHECK_THROWS_AS(ground_projector_contour(h, 2), Error);
}

TEST_CASE("iterative ground state matches the dense path") {
    const auto grid = build_grid(24, 6.0);
    const auto h = assemble(ModelParams::reference(0.06), grid, 2);
    const auto dense = ground_state(h);
    const auto lanczos = ground_state(h, 4000, true);
    CHECK(lanczos.first == doctest::Approx(dense.first).epsilon(1e-11));
    CHECK(std::abs(std::abs(lanczos.second.dot(dense.second)) - 1.0) < 1e-9);
}

TEST_CASE("contour projector: free limit returns the bare ground state") {
    const auto grid = build_grid(12, 6.0);
    auto p = ModelParams::make(2.5, 1.0, 2.0, 0.0);
    const auto h = assemble(p, grid, 1);
    const auto psi = ground_projector_contour(h, 32);
    Eigen::VectorXd bare = Eigen::VectorXd::Zero(h.matrix.rows());
    bare(h.basis.ground_vacuum_index()) = 1.0;
    CHECK((psi - bare).norm() < 1e-12);
}

TEST_CASE("contour projector agrees with the eigensolver and converges geometrically") {
    const auto grid = build_grid(24, 6.0);
    const auto h = assemble(kRef, grid, 2);
    const auto [lam, psi_eig] = ground_state(h);

    auto angle_to_eig = [&](int nodes) {
        Eigen::VectorXd psi = ground_projector_contour(h, nodes);
        psi.normalize();
        const double c = std::min(1.0, std::abs(psi.dot(psi_eig)));
        return std::acos(c);
    };
    const double a16 = angle_to_eig(16);
    const double a32 = angle_to_eig(32);
    const double a64 = angle_to_eig(64);
    CHECK(a64 <= 1e-6);
    CHECK(a32 <= 1e-6);
    // geometric until the round-off floor
    CHECK((a16 > 4.0 * a32 || a32 < 1e-12));
    CHECK(a32 >= a64 - 1e-12);
}

TEST_CASE("survival oracle: free limit and unitarity") {
    const auto grid = build_grid(30, 6.0);
    auto free_p = ModelParams::make(2.5, 1.0, 2.0, 0.0);
    const auto h = assemble(free_p, grid, 1);
    const auto eig = decompose(h);
    const auto curve = survival_oracle(h, eig, {0.0, 1.0, 3.0, 8.0});
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        CHECK(std::abs(std::abs(curve.amplitudes[i]) - 1.0) < 1e-12);
        const complex expected = std::polar(1.0, -free_p.e1 * curve.times[i]);
        CHECK(std::abs(curve.amplitudes[i] - expected) < 1e-12);
    }

    const auto h5 = assemble(ModelParams::reference(0.1), grid, 1);
    const auto eig5 = decompose(h5);
    const int src = h5.basis.excited_vacuum_index();
    double total = 0.0;
    for (int n = 0; n < eig5.values.size(); ++n)
        total += eig5.vectors(src, n) * eig5.vectors(src, n);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    const auto curve5 = survival_oracle(h5, eig5, {0.0, 2.0, 5.0});
    CHECK(std::abs(curve5.amplitudes[0] - complex{1.0, 0.0}) < 1e-12);
    for (const auto& a : curve5.amplitudes) CHECK(std::abs(a) <= 1.0 + 1e-12);
}

TEST_CASE("correlator: normalization, free limit, O(g) distance to the survival") {
    const auto grid = build_grid(30, 6.0);
    for (double g : {0.02, 0.05, 0.1}) {
        auto p = ModelParams::reference(g);
        const auto h = assemble(p, grid, 1);
        const auto eig = decompose(h);
        auto [lam, psi] = ground_state(h);
        CHECK(std::abs(correlator(h, eig, psi, 0.0, -1) - complex{1.0, 0.0}) < 1e-12);

        const auto curve = survival_oracle(h, eig, {1.0, 4.0, 9.0});
        double worst = 0.0;
        for (std::size_t i = 0; i < curve.times.size(); ++i)
            worst = std::max(worst, std::abs(correlator(h, eig, psi, curve.times[i], -1) -
                                             curve.amplitudes[i]));
        CHECK(worst < 3.0 * g);
        if (g == 0.02) CHECK(worst < 0.05);
    }
}

TEST_CASE("tmatrix oracle: free limit, eta floor, off-resonance suppression") {
    const auto grid = build_grid(120, 6.0);
    auto free_p = ModelParams::make(2.5, 1.0, 2.0, 0.0);
    const auto h0 = assemble(free_p, grid, 1);
    const auto eig0 = decompose(h0);
    Eigen::VectorXd bare = Eigen::VectorXd::Zero(h0.matrix.rows());
    bare(h0.basis.ground_vacuum_index()) = 1.0;
    const auto on = scattering::bump_packet(2.0, 2.6);
    const double eta0 = default_eta(eig0, free_p);
    CHECK(std::abs(tmatrix_oracle(h0, eig0, bare, on, on, eta0, 0.0)) == 0.0);

    const auto p = ModelParams::reference(0.1);
    const auto h = assemble(p, grid, 1);
    const auto eig = decompose(h);
    auto [lam, psi] = ground_state(h);
    CHECK_THROWS_AS(tmatrix_oracle(h, eig, psi, on, on, 0.01, lam), EtaTooSmall);

    const double eta = default_eta(eig, p);
    const auto t_on = tmatrix_oracle(h, eig, psi, on, on, eta, lam);
    const auto off = scattering::bump_packet(0.5, 0.9);
    const auto t_off = tmatrix_oracle(h, eig, psi, off, off, eta, lam);
    const auto high = scattering::bump_packet(3.5, 4.5);
    const auto t_high = tmatrix_oracle(h, eig, psi, high, high, eta, lam);
    CHECK(std::abs(t_on) > 10.0 * std::abs(t_off));
    CHECK(std::abs(t_on) > 10.0 * std::abs(t_high));
}

TEST_CASE("tmatrix oracle reduces to the partial-fraction form as g -> 0") {
    // at g = 0 the two eta-regularized sums collapse onto the two Lorentzian
    // denominators evaluated at E = e1; checked at small but nonzero g
    const auto grid = build_grid(160, 6.0);
    const auto p = ModelParams::reference(0.01);
    const auto h = assemble(p, grid, 1);
    const auto eig = decompose(h);
    auto [lam, psi] = ground_state(h);
    const double eta = default_eta(eig, p);
    const auto on = scattering::bump_packet(2.0, 2.6);
    const auto t = tmatrix_oracle(h, eig, psi, on, on, eta, lam);

    const auto G = scattering::pair_kernel(on, on, p);
    auto ref = quadrature::integrate_adaptive(
        [&](double r) -> complex {
            const double om = omega(r, p);
            return G.value(r) * (1.0 / complex{om + lam - p.e1, eta} -
                                 1.0 / complex{om - lam + p.e1, eta});
        },
        G.lo, G.hi);
    const complex expected = 2.0 * M_PI * complex{0.0, p.g * p.g} * ref.value;
    CHECK(std::abs(t - expected) < 0.05 * std::abs(expected));
}
