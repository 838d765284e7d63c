#pragma once

#include <string>

#include "parham/relent.hpp"

namespace parham {

enum class Method { AdaptiveGD, Newton };

Method method_from_name(const std::string& name);
std::string method_name(Method m);

struct OptimizerConfig {
    Method method = Method::AdaptiveGD;
    double eta0 = 4.0;
    double threshold = 1e-3;  // on epsilon = |proposed update|
    int max_steps = 1000;
    double init_low = 2.0, init_high = 6.0;
    std::uint64_t seed = 0;
    int stationary_window = 3;
    double stationary_tol = 0.01;  // relative change counted as stationary
    double ridge = 1e-8;
    int max_halvings = 30;
    std::vector<int> fixed_groups;  // couplings held at their initial value

    void validate() const;
};

struct StepRecord {
    int step = 0;
    Eigen::VectorXd w;
    double value = 0;  // S(rho|sigma_BW(w))
    double error = 0;  // epsilon at this w
    double eta = 0;
    double ms = 0;  // wall time since the start of the run
};

enum class RunStatus { Converged, MaxSteps, CapacityError };

std::string status_name(RunStatus s);

struct Trajectory {
    std::vector<StepRecord> steps;
    RunStatus status = RunStatus::MaxSteps;
    std::string message;

    const StepRecord& final() const { return steps.back(); }
};

// Independent uniform draws on [init_low, init_high], reproducible per seed
// across platforms.
Eigen::VectorXd init_couplings(const OptimizerConfig& cfg, int n_groups);

double step_error(const Eigen::VectorXd& gradient, double eta);

Trajectory minimize(const DataMoments& moments, const Eigen::VectorXd& w0,
                    const RampedEnsemble& ens, const OptimizerConfig& cfg);

struct ParentReport {
    double beta = 0;
    Eigen::VectorXd couplings;  // J_alpha = w_alpha / beta, small ones zeroed
    std::string norm_group;
    bool substituted_reference = false;  // fell back to another group for beta
};

// Splits converged couplings into the entanglement temperature and the
// uniform parent-Hamiltonian couplings (w_alpha = beta J_alpha).
ParentReport extract_parent(const Eigen::VectorXd& w_star, const OperatorBasis& basis);

}  // namespace parham
