#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <memory>
#include <stdexcept>
#include <vector>

#include "parham/operators.hpp"

namespace parham {

// Raised when a Gibbs-state block exceeds the dense-diagonalization cutoff or
// a lattice exceeds the configured ED limit.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SectorBasis {
    int twice_sz = 0;  // 2 * total S^z of the sector
    std::vector<std::uint32_t> configs;  // base-d codes, ascending

    int dim() const { return static_cast<int>(configs.size()); }
};

// Partition of the product basis of n_sites spins into magnetization sectors
// (or one trivial sector when the operator does not conserve S^z).
struct Blocking {
    int num_sites = 0;
    int local_dim = 2;
    bool blocked = true;
    std::vector<SectorBasis> sectors;
    std::vector<std::int32_t> config_block;   // code -> sector index
    std::vector<std::int32_t> config_offset;  // code -> row within sector

    std::uint64_t full_dim() const;
    int num_blocks() const { return static_cast<int>(sectors.size()); }
};

std::shared_ptr<const Blocking> make_blocking(int n_sites, int local_dim, bool blocked);

struct BlockedOperator {
    std::shared_ptr<const Blocking> blocking;
    std::vector<Eigen::SparseMatrix<cd>> blocks;
};

enum class Support { FullLattice, SubsystemA };

// Assembles sum_groups w_g * sum_terms ramp(term) * O_term as a sector-blocked
// sparse Hermitian operator. Support::SubsystemA keeps only terms fully inside
// A and acts on the A Hilbert space; ramps other than uniform require
// Support::SubsystemA.
BlockedOperator build_operator(const Geometry& g, const OperatorBasis& basis,
                               const Eigen::VectorXd& weights, RampKind ramp,
                               Support support);

// One ramped operator per coupling group (unit coupling), all sharing one
// blocking. These are the h-tilde operators the gradient and Hessian need.
std::vector<BlockedOperator> build_group_operators(const Geometry& g,
                                                   const OperatorBasis& basis,
                                                   RampKind ramp, Support support);

struct EigenSystem {
    std::vector<Eigen::VectorXd> evals;   // ascending per block
    std::vector<Eigen::MatrixXcd> evecs;  // columns
};

struct GroundState {
    double energy = 0;
    Eigen::VectorXcd amplitudes;  // full product-basis Hilbert space
    int sector_twice_sz = 0;
    bool sector_blocked = true;
    bool degenerate = false;
};

GroundState ground_state(const BlockedOperator& op);

// index 0 is the ground state. Requires dense-capable blocks.
GroundState excited_state(const BlockedOperator& op, int index);

// Lowest k eigenvalues across all sectors, ascending.
std::vector<double> lowest_energies(const BlockedOperator& op, int k);

// Lanczos with full reorthogonalization; lowest eigenpair of one block.
std::pair<double, Eigen::VectorXcd> lanczos_lowest(const Eigen::SparseMatrix<cd>& h,
                                                   double tol = 1e-12,
                                                   int max_iter = 600);

struct DensityMatrix {
    std::shared_ptr<const Blocking> blocking;  // subsystem A
    std::vector<Eigen::MatrixXcd> blocks;

    double trace() const;
    // sum_i p_i log p_i over the spectrum, with 0 log 0 = 0
    double trace_rho_log_rho() const;
    Eigen::VectorXd spectrum() const;  // ascending over all blocks
};

DensityMatrix reduced_density_matrix(const Eigen::VectorXcd& full_state,
                                     const Geometry& g);

struct GibbsState {
    DensityMatrix sigma;
    EigenSystem eigsys;
    std::vector<Eigen::VectorXd> populations;  // e^{-lambda}/Z per block
    double log_z = 0;
};

GibbsState gibbs_state(const BlockedOperator& h_A, int dense_cutoff = 4096,
                       bool assemble_sigma = true);

// <psi|O|psi> for an operator on the same full lattice.
double expectation(const Eigen::VectorXcd& full_state, const BlockedOperator& op);

// <psi|(O_A x 1_B)|psi> for an operator supported on subsystem A.
double expectation_on_A(const Eigen::VectorXcd& full_state, const Geometry& g,
                        const BlockedOperator& op_A);

// Tr(rho O) with rho and O on the same site set (blockings may differ).
double expectation(const DensityMatrix& rho, const BlockedOperator& op);

// Thermal expectations Tr(sigma O_g) for every group operator, evaluated in
// the eigenbasis of the Gibbs state.
Eigen::VectorXd thermal_expectations(const GibbsState& gs,
                                     const std::vector<BlockedOperator>& group_ops);

}  // namespace parham
