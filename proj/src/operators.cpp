#include "parham/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace parham {

SpinAlgebra spin_matrices(Spin s) {
    SpinAlgebra alg;
    alg.s = s;
    alg.dim = local_dim(s);
    const int d = alg.dim;
    const double spin = (s == Spin::Half) ? 0.5 : 1.0;
    Eigen::MatrixXcd sp = Eigen::MatrixXcd::Zero(d, d);  // raising operator
    alg.sz = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const double m = spin - i;  // descending S^z eigenvalues
        alg.sz(i, i) = m;
        if (i > 0) sp(i - 1, i) = std::sqrt(spin * (spin + 1) - (m + 1) * m);
    }
    alg.sx = 0.5 * (sp + sp.adjoint());
    alg.sy = cd(0, -0.5) * (sp - sp.adjoint());
    return alg;
}

namespace {

const char* axis_name(Axis a) {
    switch (a) {
        case Axis::X: return "x";
        case Axis::Y: return "y";
        default: return "z";
    }
}

}  // namespace

OperatorBasis basis_full(Spin s) {
    OperatorBasis b;
    b.name = "full";
    b.spin = s;
    const Axis axes[3] = {Axis::X, Axis::Y, Axis::Z};
    for (Axis a1 : axes)
        for (Axis a2 : axes) {
            CouplingGroup g;
            g.name = std::string(axis_name(a1)) + axis_name(a2);
            g.terms.push_back({true, a1, a2, 1.0, {}});
            if (a1 == Axis::X && a2 == Axis::X) b.norm_group = b.size();
            b.groups.push_back(std::move(g));
        }
    for (Axis a : axes) {
        CouplingGroup g;
        g.name = axis_name(a);
        g.terms.push_back({false, a, a, 1.0, {}});
        b.groups.push_back(std::move(g));
    }
    return b;
}

OperatorBasis basis_u1(Spin s) {
    OperatorBasis b;
    b.name = "u1";
    b.spin = s;
    CouplingGroup perp;
    perp.name = "perp";  // S^x S^x + S^y S^y under one coupling
    perp.terms.push_back({true, Axis::X, Axis::X, 1.0, {}});
    perp.terms.push_back({true, Axis::Y, Axis::Y, 1.0, {}});
    CouplingGroup zz;
    zz.name = "zz";
    zz.terms.push_back({true, Axis::Z, Axis::Z, 1.0, {}});
    b.groups.push_back(std::move(perp));
    b.groups.push_back(std::move(zz));
    b.norm_group = 0;
    return b;
}

OperatorBasis basis_bilayer() {
    OperatorBasis b;
    b.name = "bilayer";
    b.spin = Spin::Half;
    const std::vector<BondKind> intra = {BondKind::XIntra, BondKind::YIntra};
    const std::vector<BondKind> inter = {BondKind::InterLayer};
    const Axis axes[3] = {Axis::X, Axis::Y, Axis::Z};
    CouplingGroup gi, gg;
    gi.name = "intra";
    gg.name = "inter";
    for (Axis a : axes) {
        gi.terms.push_back({true, a, a, 1.0, intra});
        gg.terms.push_back({true, a, a, 1.0, inter});
    }
    b.groups.push_back(std::move(gi));
    b.groups.push_back(std::move(gg));
    b.norm_group = 0;
    return b;
}

OperatorBasis basis_from_name(const std::string& name, Spin s) {
    if (name == "full") return basis_full(s);
    if (name == "u1") return basis_u1(s);
    if (name == "bilayer") return basis_bilayer();
    throw std::invalid_argument("unknown operator basis: " + name);
}

Eigen::MatrixXcd group_local_matrix(const CouplingGroup& group, const SpinAlgebra& alg,
                                    bool two_site) {
    const int d = alg.dim;
    const int dim = two_site ? d * d : d;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const TermDescriptor& t : group.terms) {
        if (t.two_site != two_site)
            throw std::invalid_argument("group mixes one-site and two-site terms");
        if (two_site) {
            Eigen::MatrixXcd kron(d * d, d * d);
            const Eigen::MatrixXcd& a = axis_matrix(alg, t.first);
            const Eigen::MatrixXcd& b = axis_matrix(alg, t.second);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) kron.block(i * d, j * d, d, d) = a(i, j) * b;
            m += t.factor * kron;
        } else {
            m += t.factor * axis_matrix(alg, t.first);
        }
    }
    return m;
}

bool conserves_sz(const OperatorBasis& basis) {
    const SpinAlgebra alg = spin_matrices(basis.spin);
    const int d = alg.dim;
    Eigen::MatrixXcd sz2 = Eigen::MatrixXcd::Zero(d * d, d * d);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            sz2.block(i * d, j * d, d, d) += alg.sz(i, j) * id;
            sz2.block(i * d, j * d, d, d) += (i == j ? 1.0 : 0.0) * alg.sz;
        }
    for (const CouplingGroup& g : basis.groups) {
        const bool two_site = g.terms.front().two_site;
        const Eigen::MatrixXcd m = group_local_matrix(g, alg, two_site);
        const Eigen::MatrixXcd& z = two_site ? sz2 : alg.sz;
        if ((m * z - z * m).cwiseAbs().maxCoeff() > 1e-12) return false;
    }
    return true;
}

}  // namespace parham
