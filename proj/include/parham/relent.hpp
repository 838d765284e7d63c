#pragma once

#include <optional>

#include "parham/spectra.hpp"

namespace parham {

// Everything the relative-entropy evaluations need that does not change along
// an optimization run: the geometry, the basis, and the ramped group
// operators h_alpha = sum_r ramp(r) O_{alpha,r} on subsystem A.
struct RampedEnsemble {
    Geometry geometry;
    OperatorBasis basis;
    RampKind ramp = RampKind::BW;
    std::vector<BlockedOperator> group_ops;

    static RampedEnsemble make(const Geometry& g, const OperatorBasis& basis,
                               RampKind ramp);
    int size() const { return basis.size(); }
};

// H_BW(w) = sum_alpha w_alpha h_alpha, sharing the ensemble blocking.
BlockedOperator combine(const RampedEnsemble& ens, const Eigen::VectorXd& w);

// Sufficient statistics of the input state: the ramped moments
// M_alpha = sum_r ramp(r) <O_{alpha,r}> and the entropy term Tr(rho log rho).
struct DataMoments {
    Eigen::VectorXd m;
    double tr_rho_log_rho = 0;
};

DataMoments data_moments(const Eigen::VectorXcd& full_state, const RampedEnsemble& ens);
DataMoments data_moments(const DensityMatrix& rho, const RampedEnsemble& ens);

struct RelEntReport {
    double value = 0;
    Eigen::VectorXd gradient;
    std::optional<Eigen::MatrixXd> hessian;
    double log_z = 0;
};

// S(rho | sigma_BW(w)) = Tr(rho log rho) + sum_alpha w_alpha M_alpha + log Z(w);
// never forms log(sigma).
double relative_entropy(const DataMoments& moments, const Eigen::VectorXd& w,
                        const RampedEnsemble& ens);

Eigen::VectorXd relent_gradient(const DataMoments& moments, const Eigen::VectorXd& w,
                                const RampedEnsemble& ens);

// Kubo-Mori covariance matrix of the group operators under sigma_BW(w);
// symmetric positive semidefinite.
Eigen::MatrixXd relent_hessian(const Eigen::VectorXd& w, const RampedEnsemble& ens);

RelEntReport relent_report(const DataMoments& moments, const Eigen::VectorXd& w,
                           const RampedEnsemble& ens, bool want_hessian = false);

}  // namespace parham
