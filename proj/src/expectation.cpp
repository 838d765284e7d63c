#include "parham/spectra.hpp"

namespace parham {

double expectation(const Eigen::VectorXcd& full_state, const BlockedOperator& op) {
    const Blocking& bl = *op.blocking;
    if (static_cast<std::uint64_t>(full_state.size()) != bl.full_dim())
        throw std::invalid_argument("expectation: dimension mismatch");
    double acc = 0;
    for (int b = 0; b < bl.num_blocks(); ++b) {
        const auto& configs = bl.sectors[b].configs;
        Eigen::VectorXcd x(configs.size());
        for (std::size_t i = 0; i < configs.size(); ++i) x[i] = full_state[configs[i]];
        if (x.squaredNorm() < 1e-28) continue;
        acc += std::real(x.dot(op.blocks[b] * x));
    }
    return acc;
}

double expectation_on_A(const Eigen::VectorXcd& full_state, const Geometry& g,
                        const BlockedOperator& op_A) {
    const Blocking& bl = *op_A.blocking;
    const int d = g.site_dim();
    std::uint64_t dim_b = 1;
    for (int i = 0; i < g.num_sites() - g.sites_in_A; ++i) dim_b *= d;
    if (bl.full_dim() * dim_b != static_cast<std::uint64_t>(full_state.size()))
        throw std::invalid_argument("expectation_on_A: dimension mismatch");

    double acc = 0;
    for (int b = 0; b < bl.num_blocks(); ++b) {
        const auto& configs = bl.sectors[b].configs;
        Eigen::MatrixXcd x(configs.size(), dim_b);
        for (std::size_t i = 0; i < configs.size(); ++i)
            x.row(i) =
                full_state.segment(std::uint64_t(configs[i]) * dim_b, dim_b).transpose();
        const Eigen::MatrixXcd y = op_A.blocks[b] * x;
        acc += std::real((x.conjugate().cwiseProduct(y)).sum());
    }
    return acc;
}

namespace {

Eigen::MatrixXcd densify(const DensityMatrix& rho) {
    const std::uint64_t dim = rho.blocking->full_dim();
    if (dim > 4096)
        throw CapacityError("expectation: dense density matrix too large");
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
    for (int b = 0; b < rho.blocking->num_blocks(); ++b) {
        const auto& configs = rho.blocking->sectors[b].configs;
        for (std::size_t i = 0; i < configs.size(); ++i)
            for (std::size_t j = 0; j < configs.size(); ++j)
                full(configs[i], configs[j]) = rho.blocks[b](i, j);
    }
    return full;
}

}  // namespace

double expectation(const DensityMatrix& rho, const BlockedOperator& op) {
    if (rho.blocking->full_dim() != op.blocking->full_dim())
        throw std::invalid_argument("expectation: operand dimensions differ");
    if (rho.blocking->blocked == op.blocking->blocked &&
        rho.blocking->num_blocks() == op.blocking->num_blocks()) {
        double acc = 0;
        for (std::size_t b = 0; b < rho.blocks.size(); ++b) {
            const Eigen::MatrixXcd h(op.blocks[b]);
            acc += (rho.blocks[b] * h).trace().real();
        }
        return acc;
    }
    // blocking mismatch (e.g. sector-blocked rho against the unblocked
    // 12-term ansatz): fall back to the dense product
    const Eigen::MatrixXcd dense_rho = densify(rho);
    double acc = 0;
    for (int b = 0; b < op.blocking->num_blocks(); ++b) {
        const auto& configs = op.blocking->sectors[b].configs;
        Eigen::MatrixXcd sub(configs.size(), configs.size());
        for (std::size_t i = 0; i < configs.size(); ++i)
            for (std::size_t j = 0; j < configs.size(); ++j)
                sub(i, j) = dense_rho(configs[i], configs[j]);
        acc += (sub * op.blocks[b]).trace().real();
    }
    return acc;
}

}  // namespace parham
