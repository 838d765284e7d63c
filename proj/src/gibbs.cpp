#include "parham/kernels.hpp"
#include "parham/spectra.hpp"

#include <cmath>

namespace parham {

GibbsState gibbs_state(const BlockedOperator& h_A, int dense_cutoff,
                       bool assemble_sigma) {
    for (const auto& b : h_A.blocks)
        if (b.rows() > dense_cutoff)
            throw CapacityError("gibbs_state: block dimension " +
                                std::to_string(b.rows()) +
                                " exceeds the dense cutoff " +
                                std::to_string(dense_cutoff));

    GibbsState gs;
    kernels::eigendecompose_blocks(h_A.blocks, gs.eigsys.evals, gs.eigsys.evecs,
                                   kernels::num_threads() > 1);

    double lambda0 = std::numeric_limits<double>::infinity();
    for (const auto& ev : gs.eigsys.evals)
        if (ev.size() > 0) lambda0 = std::min(lambda0, ev.minCoeff());

    // shift before exponentiating; log Z carries the shift back
    double zshift = 0;
    for (const auto& ev : gs.eigsys.evals)
        zshift += (-(ev.array() - lambda0)).exp().sum();
    gs.log_z = std::log(zshift) - lambda0;

    gs.populations.resize(gs.eigsys.evals.size());
    for (std::size_t b = 0; b < gs.eigsys.evals.size(); ++b)
        gs.populations[b] =
            (-(gs.eigsys.evals[b].array() - lambda0)).exp() / zshift;

    gs.sigma.blocking = h_A.blocking;
    if (assemble_sigma) {
        gs.sigma.blocks.resize(h_A.blocks.size());
        for (std::size_t b = 0; b < h_A.blocks.size(); ++b)
            gs.sigma.blocks[b] = gs.eigsys.evecs[b] *
                                 gs.populations[b].asDiagonal() *
                                 gs.eigsys.evecs[b].adjoint();
    }
    return gs;
}

Eigen::VectorXd thermal_expectations(const GibbsState& gs,
                                     const std::vector<BlockedOperator>& group_ops) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(group_ops.size());
    for (std::size_t g = 0; g < group_ops.size(); ++g) {
        if (group_ops[g].blocks.size() != gs.eigsys.evals.size())
            throw std::invalid_argument(
                "thermal_expectations: blocking mismatch with the Gibbs state");
        double acc = 0;
        for (std::size_t b = 0; b < group_ops[g].blocks.size(); ++b) {
            const Eigen::MatrixXcd& v = gs.eigsys.evecs[b];
            const Eigen::MatrixXcd w = group_ops[g].blocks[b] * v;
            for (int i = 0; i < v.cols(); ++i)
                acc += gs.populations[b][i] * std::real(v.col(i).dot(w.col(i)));
        }
        out[g] = acc;
    }
    return out;
}

}  // namespace parham
