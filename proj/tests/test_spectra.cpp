#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "parham/spectra.hpp"

using namespace parham;

namespace {

Eigen::VectorXcd random_state(int dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n;
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = cd(n(rng), n(rng));
    v.normalize();
    return v;
}

int binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return int(std::lround(r));
}

}  // namespace

TEST_CASE("blocking partitions the product basis") {
    const auto bl = make_blocking(6, 2, true);
    CHECK(bl->full_dim() == 64);
    CHECK(bl->num_blocks() == 7);
    std::size_t covered = 0;
    for (int b = 0; b < bl->num_blocks(); ++b) {
        const auto& sec = bl->sectors[b];
        // spin-1/2: sector dimension is the binomial coefficient
        CHECK(sec.dim() == binom(6, (sec.twice_sz + 6) / 2));
        for (int i = 0; i < sec.dim(); ++i) {
            const auto code = sec.configs[i];
            CHECK(bl->config_block[code] == b);
            CHECK(bl->config_offset[code] == i);
            if (i > 0) CHECK(sec.configs[i - 1] < code);  // ascending codes
        }
        covered += sec.dim();
    }
    CHECK(covered == 64);

    const auto flat = make_blocking(4, 3, false);
    CHECK(flat->num_blocks() == 1);
    CHECK(flat->full_dim() == 81);
    CHECK_FALSE(flat->blocked);
}

TEST_CASE("spin-1 blocking") {
    const auto bl = make_blocking(4, 3, true);
    CHECK(bl->full_dim() == 81);
    CHECK(bl->num_blocks() == 9);  // total S^z from -4 to 4
    std::size_t covered = 0;
    for (const auto& s : bl->sectors) covered += s.dim();
    CHECK(covered == 81);
}

TEST_CASE("build_operator matches the dense kronecker oracle") {
    std::mt19937_64 rng(11);
    struct Case {
        Geometry g;
        OperatorBasis basis;
        RampKind ramp;
        Support support;
    };
    std::vector<Case> cases;
    cases.push_back({build_chain(6, Spin::Half), basis_u1(Spin::Half), RampKind::Uniform,
                     Support::FullLattice});
    cases.push_back({build_chain(6, Spin::Half), basis_full(Spin::Half),
                     RampKind::Uniform, Support::FullLattice});
    cases.push_back({build_chain(6, Spin::Half), basis_u1(Spin::Half), RampKind::BW,
                     Support::SubsystemA});
    cases.push_back({build_chain(6, Spin::Half), basis_full(Spin::Half), RampKind::BW,
                     Support::SubsystemA});
    cases.push_back({build_chain(8, Spin::Half), basis_u1(Spin::Half), RampKind::CFT,
                     Support::SubsystemA});
    cases.push_back({build_chain(4, Spin::One), basis_u1(Spin::One), RampKind::BW,
                     Support::SubsystemA});
    cases.push_back({build_bilayer_cylinder(4), basis_bilayer(), RampKind::BW,
                     Support::SubsystemA});
    for (const Case& c : cases) {
        const Eigen::VectorXd w =
            oracles::random_couplings(rng, c.basis.size(), -1.5, 2.5);
        const BlockedOperator op = build_operator(c.g, c.basis, w, c.ramp, c.support);
        const Eigen::MatrixXcd lhs = oracles::densify(op);
        const Eigen::MatrixXcd rhs =
            oracles::dense_operator(c.g, c.basis, w, c.ramp, c.support);
        REQUIRE(lhs.rows() == rhs.rows());
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() == doctest::Approx(0).epsilon(1e-12));
        // Hermiticity
        CHECK((lhs - lhs.adjoint()).cwiseAbs().maxCoeff() ==
              doctest::Approx(0).epsilon(1e-12));
    }
}

TEST_CASE("ramp/support validation") {
    const Geometry g = build_chain(8, Spin::Half);
    const OperatorBasis b = basis_u1(Spin::Half);
    const Eigen::VectorXd w = Eigen::Vector2d(1.0, 1.0);
    CHECK_THROWS_AS(build_operator(g, b, w, RampKind::BW, Support::FullLattice),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_operator(g, b, w, RampKind::Uniform, Support::SubsystemA),
                    std::invalid_argument);
}

TEST_CASE("ground state matches dense diagonalization") {
    const Geometry g = build_chain(8, Spin::Half);
    const OperatorBasis basis = basis_u1(Spin::Half);
    const Eigen::VectorXd w = Eigen::Vector2d(1.0, 1.0);
    const BlockedOperator h =
        build_operator(g, basis, w, RampKind::Uniform, Support::FullLattice);
    const GroundState gs = ground_state(h);

    const Eigen::MatrixXcd hd =
        oracles::dense_operator(g, basis, w, RampKind::Uniform, Support::FullLattice);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hd);
    CHECK(gs.energy == doctest::Approx(es.eigenvalues()[0]).epsilon(1e-12));
    CHECK(gs.amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((hd * gs.amplitudes - gs.energy * gs.amplitudes).norm() ==
          doctest::Approx(0).epsilon(1e-10));
    CHECK(gs.sector_twice_sz == 0);
    CHECK_FALSE(gs.degenerate);
}

TEST_CASE("excited states follow the dense spectrum") {
    const Geometry g = build_chain(6, Spin::Half);
    const OperatorBasis basis = basis_u1(Spin::Half);
    const Eigen::VectorXd w = Eigen::Vector2d(1.0, 0.7);
    const BlockedOperator h =
        build_operator(g, basis, w, RampKind::Uniform, Support::FullLattice);
    const Eigen::MatrixXcd hd = oracles::densify(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hd);
    for (int k : {0, 1, 2, 5}) {
        const GroundState st = excited_state(h, k);
        CHECK(st.energy == doctest::Approx(es.eigenvalues()[k]).epsilon(1e-12));
        CHECK((hd * st.amplitudes - st.energy * st.amplitudes).norm() ==
              doctest::Approx(0).epsilon(1e-10));
    }
    CHECK(excited_state(h, 0).energy == doctest::Approx(ground_state(h).energy));
    CHECK_THROWS_AS(excited_state(h, 64), std::invalid_argument);
}

TEST_CASE("lanczos agrees with dense on one block") {
    const Geometry g = build_chain(10, Spin::Half);
    const BlockedOperator h = build_operator(g, basis_u1(Spin::Half),
                                             Eigen::Vector2d(1.0, 1.0),
                                             RampKind::Uniform, Support::FullLattice);
    // the half-filling sector, dim C(10,5) = 252
    int big = 0;
    for (int b = 0; b < h.blocking->num_blocks(); ++b)
        if (h.blocks[b].rows() > h.blocks[big].rows()) big = b;
    REQUIRE(h.blocks[big].rows() == 252);
    const auto [e, v] = lanczos_lowest(h.blocks[big]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd(h.blocks[big]));
    CHECK(e == doctest::Approx(es.eigenvalues()[0]).epsilon(1e-11));
    CHECK((h.blocks[big] * v - e * v).norm() == doctest::Approx(0).epsilon(1e-9));
    CHECK(v.norm() == doctest::Approx(1.0));
}

TEST_CASE("lowest_energies is the sorted spectrum prefix") {
    const Geometry g = build_chain(6, Spin::Half);
    const BlockedOperator h = build_operator(g, basis_u1(Spin::Half),
                                             Eigen::Vector2d(1.0, 0.3),
                                             RampKind::Uniform, Support::FullLattice);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(oracles::densify(h),
                                                       Eigen::EigenvaluesOnly);
    const auto lows = lowest_energies(h, 5);
    REQUIRE(lows.size() == 5);
    for (int i = 0; i < 5; ++i)
        CHECK(lows[i] == doctest::Approx(es.eigenvalues()[i]).epsilon(1e-12));
}

TEST_CASE("reduced density matrix vs explicit partial trace") {
    const Geometry g = build_chain(8, Spin::Half);
    const BlockedOperator h = build_operator(g, basis_u1(Spin::Half),
                                             Eigen::Vector2d(1.0, 1.0),
                                             RampKind::Uniform, Support::FullLattice);
    const GroundState gs = ground_state(h);
    const DensityMatrix rho = reduced_density_matrix(gs.amplitudes, g);
    CHECK(rho.blocking->blocked);  // definite total S^z input
    CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));

    const Eigen::MatrixXcd oracle =
        oracles::dense_partial_trace(gs.amplitudes, 4, 8, 2);
    const Eigen::MatrixXcd dense = oracles::densify(rho);
    CHECK((dense - oracle).cwiseAbs().maxCoeff() == doctest::Approx(0).epsilon(1e-12));

    // off-block coherences of the oracle vanish for a definite-S^z state
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            if (rho.blocking->config_block[i] != rho.blocking->config_block[j])
                CHECK(std::abs(oracle(i, j)) < 1e-13);

    // entropy against the oracle spectrum
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(oracle, Eigen::EigenvaluesOnly);
    double srl = 0;
    for (int i = 0; i < 16; ++i) {
        const double p = es.eigenvalues()[i];
        if (p > 1e-15) srl += p * std::log(p);
    }
    CHECK(rho.trace_rho_log_rho() == doctest::Approx(srl).epsilon(1e-10));
    const Eigen::VectorXd spec = rho.spectrum();
    for (int i = 1; i < spec.size(); ++i) CHECK(spec[i] >= spec[i - 1]);
    CHECK(spec.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("reduced density matrix of a generic state") {
    const Geometry g = build_chain(6, Spin::Half);
    const Eigen::VectorXcd psi = random_state(64, 5);
    const DensityMatrix rho = reduced_density_matrix(psi, g);
    CHECK_FALSE(rho.blocking->blocked);  // no definite magnetization
    const Eigen::MatrixXcd oracle = oracles::dense_partial_trace(psi, 3, 6, 2);
    CHECK((oracles::densify(rho) - oracle).cwiseAbs().maxCoeff() ==
          doctest::Approx(0).epsilon(1e-12));
    CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gibbs state closed form") {
    // H = diag(0, log 3) on a single spin: populations 3/4 and 1/4
    auto bl = make_blocking(1, 2, false);
    BlockedOperator h;
    h.blocking = bl;
    Eigen::SparseMatrix<cd> m(2, 2);
    m.insert(1, 1) = std::log(3.0);
    h.blocks.push_back(m);
    const GibbsState gs = gibbs_state(h);
    CHECK(gs.populations[0][0] == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(gs.populations[0][1] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(gs.log_z == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-14));
    CHECK(gs.sigma.trace() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(gs.sigma.blocks[0](0, 0) - cd(0.75, 0)) < 1e-14);
}

TEST_CASE("gibbs state vs dense oracle, shift invariance") {
    const Geometry g = build_chain(8, Spin::Half);
    const OperatorBasis basis = basis_u1(Spin::Half);
    const Eigen::VectorXd w = Eigen::Vector2d(3.7, 4.1);
    const BlockedOperator h =
        build_operator(g, basis, w, RampKind::BW, Support::SubsystemA);
    const GibbsState gs = gibbs_state(h);
    CHECK(gs.sigma.trace() == doctest::Approx(1.0).epsilon(1e-12));
    const Eigen::MatrixXcd oracle = oracles::dense_gibbs(oracles::densify(h));
    CHECK((oracles::densify(gs.sigma) - oracle).cwiseAbs().maxCoeff() ==
          doctest::Approx(0).epsilon(1e-12));

    // adding c * identity shifts log Z by -c and leaves sigma unchanged
    BlockedOperator shifted = h;
    const double c = 2.5;
    for (auto& blk : shifted.blocks) {
        Eigen::SparseMatrix<cd> id(blk.rows(), blk.cols());
        id.setIdentity();
        blk = Eigen::SparseMatrix<cd>(blk + Eigen::SparseMatrix<cd>(c * id));
    }
    const GibbsState gs2 = gibbs_state(shifted);
    CHECK(gs2.log_z == doctest::Approx(gs.log_z - c).epsilon(1e-12));
    CHECK((oracles::densify(gs2.sigma) - oracle).cwiseAbs().maxCoeff() ==
          doctest::Approx(0).epsilon(1e-12));
}

TEST_CASE("gibbs capacity guard") {
    const Geometry g = build_chain(8, Spin::Half);
    const BlockedOperator h = build_operator(g, basis_u1(Spin::Half),
                                             Eigen::Vector2d(1.0, 1.0), RampKind::BW,
                                             Support::SubsystemA);
    CHECK_THROWS_AS(gibbs_state(h, /*dense_cutoff=*/2), CapacityError);
}

TEST_CASE("expectation values vs dense oracles") {
    std::mt19937_64 rng(3);
    const Geometry g = build_chain(6, Spin::Half);
    const OperatorBasis u1 = basis_u1(Spin::Half);
    const OperatorBasis full = basis_full(Spin::Half);

    const BlockedOperator model = build_operator(g, u1, Eigen::Vector2d(1.0, 1.0),
                                                 RampKind::Uniform, Support::FullLattice);
    const GroundState gs = ground_state(model);

    // <psi|O|psi> on the full lattice
    for (int rep = 0; rep < 3; ++rep) {
        const Eigen::VectorXd w = oracles::random_couplings(rng, 2, -1, 2);
        const BlockedOperator op =
            build_operator(g, u1, w, RampKind::Uniform, Support::FullLattice);
        const Eigen::MatrixXcd od =
            oracles::dense_operator(g, u1, w, RampKind::Uniform, Support::FullLattice);
        const double oracle = std::real(gs.amplitudes.dot(od * gs.amplitudes));
        CHECK(expectation(gs.amplitudes, op) == doctest::Approx(oracle).epsilon(1e-11));
    }

    // <psi|(O_A x 1)|psi> for blocked (u1) and unblocked (full) subsystem operators
    const DensityMatrix rho = reduced_density_matrix(gs.amplitudes, g);
    const Eigen::MatrixXcd rho_d = oracles::densify(rho);
    for (const OperatorBasis& basis : {u1, full}) {
        const auto group_ops = build_group_operators(g, basis, RampKind::BW,
                                                     Support::SubsystemA);
        for (int gi = 0; gi < basis.size(); ++gi) {
            Eigen::VectorXd unit = Eigen::VectorXd::Zero(basis.size());
            unit[gi] = 1.0;
            const Eigen::MatrixXcd od = oracles::dense_operator(g, basis, unit,
                                                                RampKind::BW,
                                                                Support::SubsystemA);
            const double oracle = std::real((rho_d * od).trace());
            CHECK(expectation_on_A(gs.amplitudes, g, group_ops[gi]) ==
                  doctest::Approx(oracle).epsilon(1e-11));
            // Tr(rho O), exercising both the matched- and mixed-blocking paths
            CHECK(expectation(rho, group_ops[gi]) ==
                  doctest::Approx(oracle).epsilon(1e-11));
        }
    }
}

TEST_CASE("thermal expectations vs dense") {
    const Geometry g = build_chain(8, Spin::Half);
    const OperatorBasis basis = basis_u1(Spin::Half);
    const BlockedOperator h = build_operator(g, basis, Eigen::Vector2d(4.0, 4.0),
                                             RampKind::BW, Support::SubsystemA);
    const GibbsState gs = gibbs_state(h);
    const auto group_ops = build_group_operators(g, basis, RampKind::BW,
                                                 Support::SubsystemA);
    const Eigen::VectorXd t = thermal_expectations(gs, group_ops);
    const Eigen::MatrixXcd sigma_d = oracles::densify(gs.sigma);
    for (int gi = 0; gi < basis.size(); ++gi) {
        const double oracle =
            std::real((sigma_d * oracles::densify(group_ops[gi])).trace());
        CHECK(t[gi] == doctest::Approx(oracle).epsilon(1e-11));
    }
}
