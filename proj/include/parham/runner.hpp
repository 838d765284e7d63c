#pragma once

#include <iosfwd>

#include "parham/config.hpp"

namespace parham {

// Prepared inputs of one reconstruction: lattice, input state, the ansatz
// ensemble, and the cached data moments.
struct Problem {
    Geometry geometry;
    OperatorBasis model_basis;   // basis the input Hamiltonian is built from
    Eigen::VectorXd model_weights;
    GroundState state;
    OperatorBasis ansatz_basis;
    RampedEnsemble ensemble;
    DataMoments moments;
};

Problem prepare_problem(const RunConfig& cfg);

// Couplings for a (delta, beta, g) point of the ansatz basis:
// chain u1: w = (beta, beta*delta); bilayer: w = (beta, beta*g).
Eigen::VectorXd scan_point_couplings(const RunConfig& cfg, double delta, double beta,
                                     double g);

struct ReconstructOutcome {
    Trajectory trajectory;
    ParentReport parent;
    bool parent_valid = false;
    bool near_zero = false;  // terminal relative entropy below 1e-3
};

ReconstructOutcome run_reconstruct(const Problem& problem, const OptimizerConfig& opt);

// CLI entry points; write outputs under cfg.output.dir.
int cmd_reconstruct(const RunConfig& cfg, std::ostream& log);
int cmd_scan(const RunConfig& cfg, std::ostream& log);
int cmd_check(const RunConfig& cfg, std::ostream& log);

// Verification suites behind cmd_check.
struct SuiteResult {
    std::string name;
    bool pass = false;
    double worst = 0;
    std::string detail;
};
std::vector<SuiteResult> run_check_suites(const RunConfig& cfg);

// Formatting helpers shared with the tests: '.' decimal, 17 significant
// digits, LF endings.
std::string format_double(double x);
void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const OperatorBasis& basis);

}  // namespace parham
