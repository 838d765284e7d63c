#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "parham/lattice.hpp"

namespace parham {

using cd = std::complex<double>;

struct SpinAlgebra {
    Spin s;
    int dim;
    Eigen::MatrixXcd sx, sy, sz;
};

// Standard spin-s representation, S^z diagonal with descending eigenvalues.
SpinAlgebra spin_matrices(Spin s);

enum class Axis { X, Y, Z };

inline const Eigen::MatrixXcd& axis_matrix(const SpinAlgebra& alg, Axis a) {
    switch (a) {
        case Axis::X: return alg.sx;
        case Axis::Y: return alg.sy;
        default: return alg.sz;
    }
}

struct TermDescriptor {
    bool two_site = true;
    Axis first = Axis::Z;
    Axis second = Axis::Z;             // ignored for one-site terms
    double factor = 1.0;               // fixed relative weight within the group
    std::vector<BondKind> bond_kinds;  // empty: applies to every bond
};

struct CouplingGroup {
    std::string name;
    std::vector<TermDescriptor> terms;
};

struct OperatorBasis {
    std::string name;
    Spin spin = Spin::Half;
    std::vector<CouplingGroup> groups;
    int norm_group = 0;  // coupling used as the beta reference in extract_parent

    int size() const { return static_cast<int>(groups.size()); }
};

// All 9 nearest-neighbor products S^a S^b plus the 3 single-site S^a,
// one coupling each. Spin-1 keeps the same list (no (S^a)^2 terms).
OperatorBasis basis_full(Spin s);

// Two groups: {S^x S^x + S^y S^y} with one shared coupling, and {S^z S^z}.
OperatorBasis basis_u1(Spin s);

// Heisenberg S.S split into an intra-layer group and an inter-layer group.
OperatorBasis basis_bilayer();

OperatorBasis basis_from_name(const std::string& name, Spin s);

// True when every coupling group commutes with total S^z (numerical check on
// the group's local matrix).
bool conserves_sz(const OperatorBasis& basis);

// Dense matrix of one group on its local support (d^2 x d^2 for two-site
// groups restricted to one bond kind; one-site groups give d x d).
Eigen::MatrixXcd group_local_matrix(const CouplingGroup& group, const SpinAlgebra& alg,
                                    bool two_site);

}  // namespace parham
