#include "parham/lattice.hpp"

#include <cmath>

namespace parham {

Geometry build_chain(int L, Spin spin) {
    if (L < 4 || L % 2 != 0)
        throw std::invalid_argument("build_chain: L must be even and >= 4, got " +
                                    std::to_string(L));
    Geometry g;
    g.kind = GeometryKind::Chain1D;
    g.length = L;
    g.spin = spin;
    g.sites_in_A = L / 2;
    g.sites.resize(L);
    for (int s = 0; s < L; ++s) {
        Site& site = g.sites[s];
        site.x = s + 1;
        site.in_A = (s < L / 2);
        // distance index counted from the cut between sites L/2 and L/2+1
        site.cut_distance = site.in_A ? (L / 2 - s) : 0;
    }
    for (int s = 0; s + 1 < L; ++s) g.bonds.push_back({s, s + 1, BondKind::Chain});
    return g;
}

Geometry build_bilayer_cylinder(int L, std::uint64_t ed_limit) {
    if (L < 4 || L % 2 != 0)
        throw std::invalid_argument("build_bilayer_cylinder: L must be even and >= 4, got " +
                                    std::to_string(L));
    const int n_sites = 2 * L * (L / 2);
    if (n_sites >= 64 || (std::uint64_t(1) << n_sites) > ed_limit)
        throw std::invalid_argument(
            "build_bilayer_cylinder: Hilbert dimension 2^" + std::to_string(n_sites) +
            " exceeds the exact-diagonalization limit (" + std::to_string(ed_limit) + ")");

    Geometry g;
    g.kind = GeometryKind::BilayerCylinder2D;
    g.length = L;
    g.spin = Spin::Half;

    const int Ly = L / 2;
    // A sites first (x <= L/2), then B; within each half ordered by (x, y, layer)
    std::vector<int> index(2 * L * Ly, -1);
    auto flat = [&](int x, int y, int l) { return ((x - 1) * Ly + (y - 1)) * 2 + l; };
    for (int pass = 0; pass < 2; ++pass) {
        for (int x = 1; x <= L; ++x) {
            const bool in_A = (x <= L / 2);
            if (in_A != (pass == 0)) continue;
            for (int y = 1; y <= Ly; ++y) {
                for (int l = 0; l < 2; ++l) {
                    index[flat(x, y, l)] = g.num_sites();
                    Site site;
                    site.x = x;
                    site.y = y;
                    site.layer = l;
                    site.in_A = in_A;
                    site.cut_distance = in_A ? (L / 2 + 1 - x) : 0;
                    g.sites.push_back(site);
                }
            }
        }
        if (pass == 0) g.sites_in_A = g.num_sites();
    }

    for (int x = 1; x <= L; ++x) {
        for (int y = 1; y <= Ly; ++y) {
            for (int l = 0; l < 2; ++l) {
                if (x < L)
                    g.bonds.push_back({index[flat(x, y, l)], index[flat(x + 1, y, l)],
                                       BondKind::XIntra});
                int yn = (y % Ly) + 1;  // periodic wrap
                g.bonds.push_back({index[flat(x, y, l)], index[flat(x, yn, l)],
                                   BondKind::YIntra});
            }
            g.bonds.push_back({index[flat(x, y, 0)], index[flat(x, y, 1)],
                               BondKind::InterLayer});
        }
    }
    return g;
}

RampKind ramp_from_name(const std::string& name) {
    if (name == "uniform") return RampKind::Uniform;
    if (name == "bw") return RampKind::BW;
    if (name == "cft") return RampKind::CFT;
    throw std::invalid_argument("unknown ramp: " + name);
}

std::string ramp_name(RampKind r) {
    switch (r) {
        case RampKind::Uniform: return "uniform";
        case RampKind::BW: return "bw";
        case RampKind::CFT: return "cft";
    }
    return "?";
}

double ramp_weight(const Geometry& g, TermLocation loc, RampKind ramp) {
    if (ramp == RampKind::Uniform) return 1.0;

    if (loc.is_bond) {
        const Bond& b = g.bonds.at(loc.index);
        if (!g.bond_in_A(b))
            throw std::invalid_argument("ramp_weight: bond not inside subsystem A");
        const int na = g.sites[b.a].cut_distance;
        const int nb = g.sites[b.b].cut_distance;
        if (g.kind == GeometryKind::Chain1D) {
            const int n = std::min(na, nb);  // bond (n, n+1) carries n
            if (ramp == RampKind::BW) return double(n);
            return (g.length / M_PI) * std::sin(M_PI * n / g.length);
        }
        if (ramp == RampKind::CFT)
            throw std::invalid_argument("ramp_weight: cft ramp is unsupported in 2D");
        switch (b.kind) {
            case BondKind::XIntra: return double(std::min(na, nb));
            case BondKind::YIntra: return double(na) - 0.5;
            case BondKind::InterLayer: return double(na) - 0.5;
            default: throw std::logic_error("ramp_weight: bad 2D bond kind");
        }
    }

    const Site& s = g.sites.at(loc.index);
    if (!s.in_A)
        throw std::invalid_argument("ramp_weight: site not inside subsystem A");
    const int n = s.cut_distance;
    if (g.kind == GeometryKind::Chain1D) {
        if (ramp == RampKind::BW) return double(n);
        return (g.length / M_PI) * std::sin(M_PI * n / g.length);
    }
    if (ramp == RampKind::CFT)
        throw std::invalid_argument("ramp_weight: cft ramp is unsupported in 2D");
    return double(n) - 0.5;
}

}  // namespace parham
