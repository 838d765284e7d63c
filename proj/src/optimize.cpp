#include "parham/optimize.hpp"

#include <chrono>
#include <cmath>
#include <deque>
#include <random>

namespace parham {

Method method_from_name(const std::string& name) {
    if (name == "adaptive-gd") return Method::AdaptiveGD;
    if (name == "newton") return Method::Newton;
    throw std::invalid_argument("unknown method: " + name);
}

std::string method_name(Method m) {
    return m == Method::AdaptiveGD ? "adaptive-gd" : "newton";
}

std::string status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Converged: return "converged";
        case RunStatus::MaxSteps: return "max-steps";
        case RunStatus::CapacityError: return "capacity-error";
    }
    return "?";
}

void OptimizerConfig::validate() const {
    if (threshold <= 0) throw std::invalid_argument("optimizer: threshold must be > 0");
    if (eta0 <= 0) throw std::invalid_argument("optimizer: eta0 must be > 0");
    if (init_low >= init_high)
        throw std::invalid_argument("optimizer: initial interval is empty");
    if (max_steps < 1) throw std::invalid_argument("optimizer: max_steps must be >= 1");
}

Eigen::VectorXd init_couplings(const OptimizerConfig& cfg, int n_groups) {
    std::mt19937_64 rng(cfg.seed);
    Eigen::VectorXd w(n_groups);
    for (int i = 0; i < n_groups; ++i) {
        // top 53 bits -> [0,1); identical on every platform
        const double u = double(rng() >> 11) * 0x1.0p-53;
        w[i] = cfg.init_low + (cfg.init_high - cfg.init_low) * u;
    }
    return w;
}

double step_error(const Eigen::VectorXd& gradient, double eta) {
    return eta * gradient.norm();
}

namespace {

void mask_fixed(Eigen::VectorXd& v, const std::vector<int>& fixed) {
    for (int i : fixed)
        if (i >= 0 && i < v.size()) v[i] = 0;
}

}  // namespace

Trajectory minimize(const DataMoments& moments, const Eigen::VectorXd& w0,
                    const RampedEnsemble& ens, const OptimizerConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed_ms = [&] {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    };

    Trajectory traj;
    Eigen::VectorXd w = w0;
    double eta = cfg.eta0;
    std::deque<double> update_norms;
    std::deque<double> window_values;  // S at the accepted iterates of the window
    const bool newton = cfg.method == Method::Newton;

    try {
        for (int step = 0; step <= cfg.max_steps; ++step) {
            RelEntReport rep = relent_report(moments, w, ens, newton);
            Eigen::VectorXd grad = rep.gradient;
            mask_fixed(grad, cfg.fixed_groups);

            Eigen::VectorXd dir;  // proposed update is -dir (times eta for gd)
            double eps;
            if (newton) {
                Eigen::MatrixXd xi = *rep.hessian;
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(xi,
                                                                  Eigen::EigenvaluesOnly);
                if (es.eigenvalues().minCoeff() < cfg.ridge)
                    xi.diagonal().array() += cfg.ridge;
                dir = xi.ldlt().solve(grad);
                mask_fixed(dir, cfg.fixed_groups);
                if (grad.dot(dir) <= 0) dir = grad;  // descent check failed
                eps = dir.norm();
            } else {
                dir = eta * grad;
                eps = dir.norm();
            }

            traj.steps.push_back({step, w, rep.value, eps, eta, elapsed_ms()});
            if (eps < cfg.threshold) {
                traj.status = RunStatus::Converged;
                return traj;
            }
            if (step == cfg.max_steps) break;

            // backtracking: a step may not increase S. The halving is local to
            // the step; the persistent step size only changes through the
            // grew-or-stationary rule below, so a steep start cannot collapse
            // eta and stop the run far from the minimum.
            double scale = 1.0;
            int halvings = 0;
            Eigen::VectorXd w_new;
            double s_new;
            while (true) {
                w_new = w - scale * dir;
                s_new = relative_entropy(moments, w_new, ens);
                if (s_new <= rep.value + 1e-12) break;
                scale *= 0.5;
                if (++halvings > cfg.max_halvings) {
                    traj.status = RunStatus::MaxSteps;
                    traj.message = "backtracking exhausted";
                    return traj;
                }
            }

            const double unorm = (w_new - w).norm();
            if (!newton) {
                bool shrink = !update_norms.empty() && unorm > update_norms.back();
                if (!shrink &&
                    static_cast<int>(update_norms.size()) >= cfg.stationary_window) {
                    double lo = unorm, hi = unorm;
                    for (double u : update_norms) {
                        lo = std::min(lo, u);
                        hi = std::max(hi, u);
                    }
                    // the iterate is stationary only if the objective has
                    // stalled as well; steady descent at a constant rate (a
                    // plateau being traversed) must not shrink the step
                    const double drop = window_values.front() - s_new;
                    if (hi <= lo * (1.0 + cfg.stationary_tol) &&
                        drop <= cfg.stationary_tol * std::abs(s_new))
                        shrink = true;
                }
                if (shrink) {
                    eta *= 0.5;
                    update_norms.clear();
                    window_values.clear();
                } else {
                    update_norms.push_back(unorm);
                    window_values.push_back(s_new);
                    if (static_cast<int>(update_norms.size()) > cfg.stationary_window) {
                        update_norms.pop_front();
                        window_values.pop_front();
                    }
                }
            }
            w = w_new;
        }
        traj.status = RunStatus::MaxSteps;
    } catch (const CapacityError& e) {
        traj.status = RunStatus::CapacityError;
        traj.message = e.what();
        if (traj.steps.empty())
            traj.steps.push_back({0, w, 0.0, std::numeric_limits<double>::infinity(),
                                  eta, elapsed_ms()});
    }
    return traj;
}

ParentReport extract_parent(const Eigen::VectorXd& w_star, const OperatorBasis& basis) {
    if (w_star.size() != basis.size())
        throw std::invalid_argument("extract_parent: coupling vector length mismatch");
    ParentReport rep;
    int ref = basis.norm_group;
    if (std::abs(w_star[ref]) < 1e-6) {
        // normalization reference vanished; fall back to the largest two-site
        // coupling and report the substitution
        double best = 0;
        int best_i = -1;
        for (int i = 0; i < basis.size(); ++i) {
            if (!basis.groups[i].terms.front().two_site) continue;
            if (std::abs(w_star[i]) > best) {
                best = std::abs(w_star[i]);
                best_i = i;
            }
        }
        if (best_i < 0 || best < 1e-6)
            throw std::runtime_error(
                "extract_parent: no usable normalization reference");
        ref = best_i;
        rep.substituted_reference = true;
    }
    rep.beta = w_star[ref];
    rep.norm_group = basis.groups[ref].name;
    rep.couplings = w_star / rep.beta;
    for (int i = 0; i < rep.couplings.size(); ++i)
        if (std::abs(rep.couplings[i]) < 1e-3) rep.couplings[i] = 0.0;
    return rep;
}

}  // namespace parham
