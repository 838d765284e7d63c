#include "parham/relent.hpp"

#include "parham/kernels.hpp"

namespace parham {

RampedEnsemble RampedEnsemble::make(const Geometry& g, const OperatorBasis& basis,
                                    RampKind ramp) {
    RampedEnsemble ens;
    ens.geometry = g;
    ens.basis = basis;
    ens.ramp = ramp;
    ens.group_ops = build_group_operators(g, basis, ramp, Support::SubsystemA);
    return ens;
}

BlockedOperator combine(const RampedEnsemble& ens, const Eigen::VectorXd& w) {
    if (w.size() != ens.size())
        throw std::invalid_argument("combine: coupling vector length mismatch");
    BlockedOperator h;
    h.blocking = ens.group_ops.front().blocking;
    h.blocks.resize(h.blocking->num_blocks());
    for (int b = 0; b < h.blocking->num_blocks(); ++b) {
        Eigen::SparseMatrix<cd> acc = w[0] * ens.group_ops[0].blocks[b];
        for (int g = 1; g < ens.size(); ++g)
            acc = acc + Eigen::SparseMatrix<cd>(w[g] * ens.group_ops[g].blocks[b]);
        h.blocks[b] = std::move(acc);
    }
    return h;
}

DataMoments data_moments(const Eigen::VectorXcd& full_state, const RampedEnsemble& ens) {
    DataMoments m;
    m.m.resize(ens.size());
    for (int g = 0; g < ens.size(); ++g)
        m.m[g] = expectation_on_A(full_state, ens.geometry, ens.group_ops[g]);
    m.tr_rho_log_rho =
        reduced_density_matrix(full_state, ens.geometry).trace_rho_log_rho();
    return m;
}

DataMoments data_moments(const DensityMatrix& rho, const RampedEnsemble& ens) {
    DataMoments m;
    m.m.resize(ens.size());
    for (int g = 0; g < ens.size(); ++g) m.m[g] = expectation(rho, ens.group_ops[g]);
    m.tr_rho_log_rho = rho.trace_rho_log_rho();
    return m;
}

double relative_entropy(const DataMoments& moments, const Eigen::VectorXd& w,
                        const RampedEnsemble& ens) {
    const GibbsState gs = gibbs_state(combine(ens, w), 4096, /*assemble_sigma=*/false);
    return moments.tr_rho_log_rho + w.dot(moments.m) + gs.log_z;
}

Eigen::VectorXd relent_gradient(const DataMoments& moments, const Eigen::VectorXd& w,
                                const RampedEnsemble& ens) {
    const GibbsState gs = gibbs_state(combine(ens, w), 4096, false);
    return moments.m - thermal_expectations(gs, ens.group_ops);
}

RelEntReport relent_report(const DataMoments& moments, const Eigen::VectorXd& w,
                           const RampedEnsemble& ens, bool want_hessian) {
    const GibbsState gs = gibbs_state(combine(ens, w), 4096, false);
    RelEntReport rep;
    rep.log_z = gs.log_z;
    rep.value = moments.tr_rho_log_rho + w.dot(moments.m) + gs.log_z;
    const Eigen::VectorXd thermal = thermal_expectations(gs, ens.group_ops);
    rep.gradient = moments.m - thermal;
    if (!want_hessian) return rep;

    const int k = ens.size();
    const bool parallel = kernels::num_threads() > 1;
    Eigen::MatrixXd xi = Eigen::MatrixXd::Zero(k, k);
    for (std::size_t b = 0; b < gs.eigsys.evals.size(); ++b) {
        const Eigen::MatrixXcd& v = gs.eigsys.evecs[b];
        std::vector<Eigen::MatrixXcd> rotated(k);
        for (int g = 0; g < k; ++g)
            rotated[g] = v.adjoint() * (ens.group_ops[g].blocks[b] * v);
        for (int a = 0; a < k; ++a)
            for (int c = a; c < k; ++c)
                xi(a, c) += kernels::kubo_mori_block(
                    gs.eigsys.evals[b], gs.populations[b], rotated[a], rotated[c],
                    parallel);
    }
    for (int a = 0; a < k; ++a)
        for (int c = a; c < k; ++c) {
            xi(a, c) -= thermal[a] * thermal[c];
            xi(c, a) = xi(a, c);
        }
    rep.hessian = xi;
    return rep;
}

Eigen::MatrixXd relent_hessian(const Eigen::VectorXd& w, const RampedEnsemble& ens) {
    DataMoments dummy;
    dummy.m = Eigen::VectorXd::Zero(ens.size());
    dummy.tr_rho_log_rho = 0;
    return *relent_report(dummy, w, ens, true).hessian;
}

}  // namespace parham
