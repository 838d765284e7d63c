#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace parham {

enum class Spin { Half, One };

inline int local_dim(Spin s) { return s == Spin::Half ? 2 : 3; }

enum class GeometryKind { Chain1D, BilayerCylinder2D };

enum class BondKind {
    Chain,       // 1D nearest neighbor
    XIntra,      // 2D intra-layer, perpendicular to the cut
    YIntra,      // 2D intra-layer, parallel to the cut (wraps in y)
    InterLayer,  // 2D vertical pair
};

struct Site {
    int x = 0;      // 1-based; 1D: chain position, 2D: column index
    int y = 0;      // 2D row index (1-based), periodic
    int layer = 0;  // 2D layer, 0 or 1
    bool in_A = false;
    int cut_distance = 0;  // >= 1 inside A; 1 is adjacent to the entanglement cut
};

struct Bond {
    int a = 0, b = 0;  // site indices into Geometry::sites
    BondKind kind = BondKind::Chain;
};

struct Geometry {
    GeometryKind kind = GeometryKind::Chain1D;
    int length = 0;  // linear size L
    Spin spin = Spin::Half;
    std::vector<Site> sites;  // sites [0, sites_in_A) form subsystem A
    std::vector<Bond> bonds;
    int sites_in_A = 0;

    int num_sites() const { return static_cast<int>(sites.size()); }
    int site_dim() const { return local_dim(spin); }
    bool bond_in_A(const Bond& b) const {
        return sites[b.a].in_A && sites[b.b].in_A;
    }
};

// Open chain of L sites; subsystem A is the first L/2 sites, the cut sits
// between sites L/2 and L/2+1.
Geometry build_chain(int L, Spin spin);

// Two coupled L x L/2 layers, open in x, periodic in y. Spin-1/2 only.
// Rejected when the full Hilbert dimension exceeds ed_limit.
Geometry build_bilayer_cylinder(int L, std::uint64_t ed_limit = std::uint64_t(1) << 24);

enum class RampKind { Uniform, BW, CFT };

RampKind ramp_from_name(const std::string& name);
std::string ramp_name(RampKind r);

struct TermLocation {
    bool is_bond = false;
    int index = 0;  // into Geometry::bonds or Geometry::sites
    static TermLocation bond(int i) { return {true, i}; }
    static TermLocation site(int i) { return {false, i}; }
};

// Positional weight of a local term in the entanglement Hamiltonian.
// uniform: 1 everywhere. bw: the discretized boost ramp, minimal next to the
// cut and growing linearly towards the far (open) boundary of A. cft: the
// sine-deformed ramp (L/pi) sin(pi r / L), 1D only.
double ramp_weight(const Geometry& g, TermLocation loc, RampKind ramp);

}  // namespace parham
