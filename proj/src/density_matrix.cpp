#include "parham/spectra.hpp"

#include <cmath>

namespace parham {

double DensityMatrix::trace() const {
    double t = 0;
    for (const auto& b : blocks) t += b.trace().real();
    return t;
}

Eigen::VectorXd DensityMatrix::spectrum() const {
    std::vector<double> vals;
    for (const auto& b : blocks) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b, Eigen::EigenvaluesOnly);
        for (int i = 0; i < b.rows(); ++i) vals.push_back(es.eigenvalues()[i]);
    }
    std::sort(vals.begin(), vals.end());
    return Eigen::Map<Eigen::VectorXd>(vals.data(), vals.size());
}

double DensityMatrix::trace_rho_log_rho() const {
    const Eigen::VectorXd p = spectrum();
    double s = 0;
    for (int i = 0; i < p.size(); ++i) {
        if (p[i] < -1e-12)
            throw std::runtime_error("density matrix has a negative eigenvalue: " +
                                     std::to_string(p[i]));
        if (p[i] > 1e-300) s += p[i] * std::log(p[i]);
    }
    return s;
}

DensityMatrix reduced_density_matrix(const Eigen::VectorXcd& full_state,
                                     const Geometry& g) {
    const int d = g.site_dim();
    const int na = g.sites_in_A;
    const int nb = g.num_sites() - na;
    std::uint64_t dim_a = 1, dim_b = 1;
    for (int i = 0; i < na; ++i) dim_a *= d;
    for (int i = 0; i < nb; ++i) dim_b *= d;
    if (static_cast<std::uint64_t>(full_state.size()) != dim_a * dim_b)
        throw std::invalid_argument("reduced_density_matrix: state dimension " +
                                    std::to_string(full_state.size()) +
                                    " inconsistent with the bipartition");
    const double norm = full_state.norm();
    if (std::abs(norm - 1.0) > 1e-10)
        throw std::invalid_argument("reduced_density_matrix: state not normalized");

    // does the state live in a single total-S^z sector?
    auto full_blocking = make_blocking(g.num_sites(), d, true);
    int sector = -1;
    bool definite = true;
    for (std::uint64_t c = 0; c < dim_a * dim_b; ++c) {
        if (std::abs(full_state[c]) < 1e-12) continue;
        const int b = full_blocking->config_block[c];
        if (sector < 0)
            sector = b;
        else if (b != sector) {
            definite = false;
            break;
        }
    }

    DensityMatrix rho;
    rho.blocking = make_blocking(na, d, definite);
    rho.blocks.resize(rho.blocking->num_blocks());

    // site 0 is the most significant digit, so the A index is code / dim_b
    for (int b = 0; b < rho.blocking->num_blocks(); ++b) {
        const auto& configs = rho.blocking->sectors[b].configs;
        const int n = static_cast<int>(configs.size());
        Eigen::MatrixXcd m(n, dim_b);
        for (int i = 0; i < n; ++i)
            m.row(i) = full_state.segment(std::uint64_t(configs[i]) * dim_b, dim_b)
                           .transpose();
        rho.blocks[b] = m * m.adjoint();
    }
    return rho;
}

}  // namespace parham
