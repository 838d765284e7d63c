#include "parham/runner.hpp"

#include <random>

namespace parham {

namespace {

Eigen::VectorXd fd_gradient(const DataMoments& m, const Eigen::VectorXd& w,
                            const RampedEnsemble& ens, double h) {
    Eigen::VectorXd g(w.size());
    for (int i = 0; i < w.size(); ++i) {
        Eigen::VectorXd wp = w, wm = w;
        wp[i] += h;
        wm[i] -= h;
        g[i] = (relative_entropy(m, wp, ens) - relative_entropy(m, wm, ens)) / (2 * h);
    }
    return g;
}

Eigen::MatrixXd fd_hessian(const DataMoments& m, const Eigen::VectorXd& w,
                           const RampedEnsemble& ens, double h) {
    Eigen::MatrixXd xi(w.size(), w.size());
    for (int i = 0; i < w.size(); ++i) {
        Eigen::VectorXd wp = w, wm = w;
        wp[i] += h;
        wm[i] -= h;
        xi.col(i) =
            (relent_gradient(m, wp, ens) - relent_gradient(m, wm, ens)) / (2 * h);
    }
    return 0.5 * (xi + xi.transpose());
}

Eigen::VectorXd random_couplings(std::mt19937_64& rng, int n, double lo, double hi) {
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) {
        const double u = double(rng() >> 11) * 0x1.0p-53;
        w[i] = lo + (hi - lo) * u;
    }
    return w;
}

// brute-force partial trace over B, walking site digits explicitly
Eigen::MatrixXcd dense_partial_trace(const Eigen::VectorXcd& psi, int n_sites,
                                     int n_a, int d) {
    std::uint64_t dim_a = 1, dim_b = 1;
    for (int i = 0; i < n_a; ++i) dim_a *= d;
    for (int i = 0; i < n_sites - n_a; ++i) dim_b *= d;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim_a, dim_a);
    for (std::uint64_t a = 0; a < dim_a; ++a)
        for (std::uint64_t a2 = 0; a2 < dim_a; ++a2)
            for (std::uint64_t b = 0; b < dim_b; ++b)
                rho(a, a2) += psi[a * dim_b + b] * std::conj(psi[a2 * dim_b + b]);
    return rho;
}

}  // namespace

std::vector<SuiteResult> run_check_suites(const RunConfig& cfg) {
    std::vector<SuiteResult> results;
    RunConfig small = cfg;
    small.model.L = std::min(cfg.model.L, cfg.model.family == "xxz-one" ? 6 : 8);
    if (small.model.family == "bilayer") small.model.L = 4;
    const Problem p = prepare_problem(small);
    std::mt19937_64 rng(small.optimizer.seed + 17);

    {  // analytic gradient vs central finite differences
        SuiteResult r{"gradient-vs-finite-differences"};
        r.worst = 0;
        for (int trial = 0; trial < 10; ++trial) {
            const Eigen::VectorXd w = random_couplings(rng, p.ensemble.size(), 0.5, 4.0);
            const Eigen::VectorXd g = relent_gradient(p.moments, w, p.ensemble);
            const Eigen::VectorXd gf = fd_gradient(p.moments, w, p.ensemble, 1e-5);
            r.worst = std::max(r.worst,
                               (g - gf).norm() / std::max(1.0, gf.norm()));
        }
        r.pass = r.worst < 1e-6;
        results.push_back(r);
    }
    {  // Kubo-Mori Hessian vs the Jacobian of the gradient
        SuiteResult r{"hessian-vs-gradient-jacobian"};
        r.worst = 0;
        for (int trial = 0; trial < 5; ++trial) {
            const Eigen::VectorXd w = random_couplings(rng, p.ensemble.size(), 0.5, 4.0);
            const Eigen::MatrixXd xi = relent_hessian(w, p.ensemble);
            const Eigen::MatrixXd xif = fd_hessian(p.moments, w, p.ensemble, 1e-5);
            r.worst = std::max(r.worst,
                               (xi - xif).norm() / std::max(1.0, xif.norm()));
        }
        r.pass = r.worst < 1e-5;
        results.push_back(r);
    }
    {  // Gibbs normalization
        SuiteResult r{"gibbs-normalization"};
        r.worst = 0;
        for (int trial = 0; trial < 20; ++trial) {
            const Eigen::VectorXd w = random_couplings(rng, p.ensemble.size(), 0.0, 6.0);
            const GibbsState gs = gibbs_state(combine(p.ensemble, w));
            r.worst = std::max(r.worst, std::abs(gs.sigma.trace() - 1.0));
        }
        r.pass = r.worst < 1e-10;
        results.push_back(r);
    }
    {  // reduced density matrix vs brute-force partial trace
        SuiteResult r{"partial-trace-oracle"};
        const DensityMatrix rho = reduced_density_matrix(p.state.amplitudes, p.geometry);
        const Eigen::MatrixXcd dense = dense_partial_trace(
            p.state.amplitudes, p.geometry.num_sites(), p.geometry.sites_in_A,
            p.geometry.site_dim());
        double worst = 0;
        for (int b = 0; b < rho.blocking->num_blocks(); ++b) {
            const auto& configs = rho.blocking->sectors[b].configs;
            for (std::size_t i = 0; i < configs.size(); ++i)
                for (std::size_t j = 0; j < configs.size(); ++j)
                    worst = std::max(worst, std::abs(rho.blocks[b](i, j) -
                                                     dense(configs[i], configs[j])));
        }
        // off-block coherences must vanish for a fixed-magnetization state
        Eigen::MatrixXcd rebuilt = Eigen::MatrixXcd::Zero(dense.rows(), dense.cols());
        for (int b = 0; b < rho.blocking->num_blocks(); ++b) {
            const auto& configs = rho.blocking->sectors[b].configs;
            for (std::size_t i = 0; i < configs.size(); ++i)
                for (std::size_t j = 0; j < configs.size(); ++j)
                    rebuilt(configs[i], configs[j]) = rho.blocks[b](i, j);
        }
        worst = std::max(worst, (rebuilt - dense).cwiseAbs().maxCoeff());
        r.worst = worst;
        r.pass = worst < 1e-10;
        results.push_back(r);
    }
    {  // convexity along random segments
        SuiteResult r{"convexity-spot-checks"};
        r.worst = 0;
        for (int trial = 0; trial < 20; ++trial) {
            const Eigen::VectorXd w1 = random_couplings(rng, p.ensemble.size(), 0.0, 6.0);
            const Eigen::VectorXd w2 = random_couplings(rng, p.ensemble.size(), 0.0, 6.0);
            const double s1 = relative_entropy(p.moments, w1, p.ensemble);
            const double s2 = relative_entropy(p.moments, w2, p.ensemble);
            for (double t : {0.25, 0.5, 0.75}) {
                const double s =
                    relative_entropy(p.moments, t * w1 + (1 - t) * w2, p.ensemble);
                r.worst = std::max(r.worst, s - (t * s1 + (1 - t) * s2));
            }
        }
        r.pass = r.worst < 1e-9;
        results.push_back(r);
    }
    return results;
}

}  // namespace parham
