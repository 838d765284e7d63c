#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "parham/relent.hpp"

using namespace parham;

namespace {

struct Fixture {
    Geometry g;
    OperatorBasis model;
    GroundState gs;

    explicit Fixture(int L, Spin spin = Spin::Half, double delta = 1.0)
        : g(build_chain(L, spin)), model(basis_u1(spin)) {
        const BlockedOperator h = build_operator(
            g, model, Eigen::Vector2d(1.0, delta), RampKind::Uniform,
            Support::FullLattice);
        gs = ground_state(h);
    }
};

}  // namespace

TEST_CASE("relative entropy matches the dense log-based oracle") {
    const Fixture fx(6);
    std::mt19937_64 rng(17);
    const Eigen::MatrixXcd rho_d = oracles::dense_partial_trace(fx.gs.amplitudes, 3, 6, 2);
    for (RampKind ramp : {RampKind::BW, RampKind::CFT}) {
        for (const OperatorBasis& basis :
             {basis_u1(Spin::Half), basis_full(Spin::Half)}) {
            const RampedEnsemble ens = RampedEnsemble::make(fx.g, basis, ramp);
            const DataMoments mom = data_moments(fx.gs.amplitudes, ens);
            for (int rep = 0; rep < 3; ++rep) {
                const Eigen::VectorXd w =
                    oracles::random_couplings(rng, basis.size(), 0.2, 4.0);
                const double oracle = oracles::dense_relative_entropy_gibbs(
                    rho_d,
                    oracles::dense_operator(fx.g, basis, w, ramp, Support::SubsystemA));
                CHECK(relative_entropy(mom, w, ens) ==
                      doctest::Approx(oracle).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("relative entropy is nonnegative") {
    const Fixture fx(8);
    const RampedEnsemble ens = RampedEnsemble::make(fx.g, basis_u1(Spin::Half),
                                                    RampKind::BW);
    const DataMoments mom = data_moments(fx.gs.amplitudes, ens);
    std::mt19937_64 rng(29);
    for (int rep = 0; rep < 25; ++rep) {
        const Eigen::VectorXd w = oracles::random_couplings(rng, 2, 0.1, 8.0);
        CHECK(relative_entropy(mom, w, ens) >= -1e-12);
    }
}

TEST_CASE("state- and density-matrix moments agree") {
    const Fixture fx(8);
    for (const OperatorBasis& basis :
         {basis_u1(Spin::Half), basis_full(Spin::Half)}) {
        const RampedEnsemble ens = RampedEnsemble::make(fx.g, basis, RampKind::BW);
        const DataMoments a = data_moments(fx.gs.amplitudes, ens);
        const DataMoments b =
            data_moments(reduced_density_matrix(fx.gs.amplitudes, fx.g), ens);
        CHECK((a.m - b.m).cwiseAbs().maxCoeff() == doctest::Approx(0).epsilon(1e-12));
        CHECK(a.tr_rho_log_rho == doctest::Approx(b.tr_rho_log_rho).epsilon(1e-12));
    }
}

TEST_CASE("zero at the representable point, with zero gradient") {
    // take rho itself from the Gibbs family: S and the gradient must vanish
    const Geometry g = build_chain(8, Spin::Half);
    const RampedEnsemble ens = RampedEnsemble::make(g, basis_u1(Spin::Half),
                                                    RampKind::BW);
    const Eigen::VectorXd w_star = Eigen::Vector2d(3.8, 4.3);
    const GibbsState target = gibbs_state(combine(ens, w_star));
    const DataMoments mom = data_moments(target.sigma, ens);
    CHECK(relative_entropy(mom, w_star, ens) == doctest::Approx(0).epsilon(1e-11));
    CHECK(relent_gradient(mom, w_star, ens).norm() ==
          doctest::Approx(0).epsilon(1e-11));
    // anywhere else the entropy is strictly positive
    CHECK(relative_entropy(mom, Eigen::Vector2d(2.0, 5.0), ens) > 1e-3);
}

TEST_CASE("gradient vs central finite differences") {
    const Fixture fx(8);
    std::mt19937_64 rng(41);
    for (RampKind ramp : {RampKind::BW, RampKind::CFT}) {
        for (const OperatorBasis& basis :
             {basis_u1(Spin::Half), basis_full(Spin::Half)}) {
            const RampedEnsemble ens = RampedEnsemble::make(fx.g, basis, ramp);
            const DataMoments mom = data_moments(fx.gs.amplitudes, ens);
            auto f = [&](const Eigen::VectorXd& w) {
                return relative_entropy(mom, w, ens);
            };
            for (int rep = 0; rep < 3; ++rep) {
                const Eigen::VectorXd w =
                    oracles::random_couplings(rng, basis.size(), 0.5, 4.0);
                const Eigen::VectorXd grad = relent_gradient(mom, w, ens);
                const Eigen::VectorXd fd = oracles::fd_gradient(f, w);
                CHECK((grad - fd).norm() / std::max(1.0, fd.norm()) < 1e-6);
            }
        }
    }
}

TEST_CASE("kubo-mori hessian vs gradient jacobian") {
    const Fixture fx(6);
    std::mt19937_64 rng(43);
    for (const OperatorBasis& basis :
         {basis_u1(Spin::Half), basis_full(Spin::Half)}) {
        const RampedEnsemble ens = RampedEnsemble::make(fx.g, basis, RampKind::BW);
        const DataMoments mom = data_moments(fx.gs.amplitudes, ens);
        const int n = basis.size();
        for (int rep = 0; rep < 2; ++rep) {
            const Eigen::VectorXd w = oracles::random_couplings(rng, n, 0.5, 3.0);
            const Eigen::MatrixXd xi = relent_hessian(w, ens);
            CHECK((xi - xi.transpose()).cwiseAbs().maxCoeff() < 1e-12);
            // column j of the Hessian is the derivative of the gradient
            const double h = 1e-5;
            Eigen::MatrixXd jac(n, n);
            for (int j = 0; j < n; ++j) {
                Eigen::VectorXd wp = w, wm = w;
                wp[j] += h;
                wm[j] -= h;
                jac.col(j) =
                    (relent_gradient(mom, wp, ens) - relent_gradient(mom, wm, ens)) /
                    (2 * h);
            }
            CHECK((xi - jac).cwiseAbs().maxCoeff() < 1e-5);
            // positive semidefinite up to roundoff
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(xi,
                                                              Eigen::EigenvaluesOnly);
            CHECK(es.eigenvalues().minCoeff() >= -1e-8 * xi.norm());
        }
    }
}

TEST_CASE("line-segment convexity") {
    const Fixture fx(8);
    const RampedEnsemble ens = RampedEnsemble::make(fx.g, basis_u1(Spin::Half),
                                                    RampKind::BW);
    const DataMoments mom = data_moments(fx.gs.amplitudes, ens);
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> lam(0.05, 0.95);
    for (int rep = 0; rep < 30; ++rep) {
        const Eigen::VectorXd a = oracles::random_couplings(rng, 2, 0.1, 6.0);
        const Eigen::VectorXd b = oracles::random_couplings(rng, 2, 0.1, 6.0);
        const double l = lam(rng);
        const double lhs = relative_entropy(mom, l * a + (1 - l) * b, ens);
        const double rhs = l * relative_entropy(mom, a, ens) +
                           (1 - l) * relative_entropy(mom, b, ens);
        CHECK(lhs <= rhs + 1e-9);
    }
}

TEST_CASE("spin-1 gradient sanity") {
    const Fixture fx(6, Spin::One);
    const RampedEnsemble ens = RampedEnsemble::make(fx.g, basis_u1(Spin::One),
                                                    RampKind::BW);
    const DataMoments mom = data_moments(fx.gs.amplitudes, ens);
    auto f = [&](const Eigen::VectorXd& w) { return relative_entropy(mom, w, ens); };
    const Eigen::VectorXd w = Eigen::Vector2d(2.5, 3.5);
    const Eigen::VectorXd grad = relent_gradient(mom, w, ens);
    const Eigen::VectorXd fd = oracles::fd_gradient(f, w);
    CHECK((grad - fd).norm() / std::max(1.0, fd.norm()) < 1e-6);
}

TEST_CASE("combine validates the coupling length") {
    const Geometry g = build_chain(6, Spin::Half);
    const RampedEnsemble ens = RampedEnsemble::make(g, basis_u1(Spin::Half),
                                                    RampKind::BW);
    CHECK_THROWS_AS(combine(ens, Eigen::Vector3d(1, 2, 3)), std::invalid_argument);
}
