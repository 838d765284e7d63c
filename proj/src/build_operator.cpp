#include "parham/spectra.hpp"

#include <algorithm>

namespace parham {

namespace {

struct TermInstance {
    bool two_site = true;
    int p = 0, q = 0;
    Axis a1 = Axis::Z, a2 = Axis::Z;
    double coef = 0;
};

bool bond_matches(const TermDescriptor& t, const Bond& b) {
    if (t.bond_kinds.empty()) return true;
    return std::find(t.bond_kinds.begin(), t.bond_kinds.end(), b.kind) !=
           t.bond_kinds.end();
}

std::vector<std::vector<TermInstance>> expand_terms(const Geometry& g,
                                                    const OperatorBasis& basis,
                                                    RampKind ramp, Support support) {
    if (support == Support::FullLattice && ramp != RampKind::Uniform)
        throw std::invalid_argument("build_operator: " + ramp_name(ramp) +
                                    " ramp requires subsystem-A support");
    if (support == Support::SubsystemA && ramp == RampKind::Uniform)
        throw std::invalid_argument(
            "build_operator: subsystem-A support requires a bw or cft ramp");

    std::vector<std::vector<TermInstance>> per_group(basis.groups.size());
    for (std::size_t gi = 0; gi < basis.groups.size(); ++gi) {
        for (const TermDescriptor& t : basis.groups[gi].terms) {
            if (t.two_site) {
                for (std::size_t bi = 0; bi < g.bonds.size(); ++bi) {
                    const Bond& b = g.bonds[bi];
                    if (!bond_matches(t, b)) continue;
                    if (support == Support::SubsystemA && !g.bond_in_A(b)) continue;
                    const double w =
                        ramp_weight(g, TermLocation::bond(static_cast<int>(bi)), ramp);
                    per_group[gi].push_back({true, b.a, b.b, t.first, t.second,
                                             t.factor * w});
                }
            } else {
                const int n = (support == Support::SubsystemA) ? g.sites_in_A
                                                               : g.num_sites();
                for (int si = 0; si < n; ++si) {
                    const double w = ramp_weight(g, TermLocation::site(si), ramp);
                    per_group[gi].push_back({false, si, si, t.first, t.first,
                                             t.factor * w});
                }
            }
        }
    }
    return per_group;
}

BlockedOperator assemble(const Geometry& g, const std::vector<TermInstance>& terms,
                         std::shared_ptr<const Blocking> blocking) {
    const SpinAlgebra alg = spin_matrices(g.spin);
    const int d = alg.dim;
    const int n = blocking->num_sites;

    std::vector<std::uint64_t> pow(n);  // site 0 is the most significant digit
    pow[n - 1] = 1;
    for (int j = n - 2; j >= 0; --j) pow[j] = pow[j + 1] * d;

    BlockedOperator op;
    op.blocking = blocking;
    op.blocks.resize(blocking->num_blocks());

    for (int b = 0; b < blocking->num_blocks(); ++b) {
        const SectorBasis& sec = blocking->sectors[b];
        std::vector<Eigen::Triplet<cd>> trip;
        // per-column scatter buffer; sector-violating amplitudes must cancel
        // within a group (e.g. the S+S+ parts of S^xS^x against S^yS^y)
        std::vector<std::pair<std::uint64_t, cd>> targets;
        for (int col = 0; col < sec.dim(); ++col) {
            const std::uint64_t c = sec.configs[col];
            targets.clear();
            auto add = [&](std::uint64_t c2, cd amp) {
                for (auto& [code, a] : targets)
                    if (code == c2) {
                        a += amp;
                        return;
                    }
                targets.emplace_back(c2, amp);
            };
            for (const TermInstance& t : terms) {
                const int dp = static_cast<int>((c / pow[t.p]) % d);
                const Eigen::MatrixXcd& A = axis_matrix(alg, t.a1);
                if (t.two_site) {
                    const int dq = static_cast<int>((c / pow[t.q]) % d);
                    const Eigen::MatrixXcd& B = axis_matrix(alg, t.a2);
                    for (int ip = 0; ip < d; ++ip) {
                        if (A(ip, dp) == cd(0)) continue;
                        for (int iq = 0; iq < d; ++iq) {
                            if (B(iq, dq) == cd(0)) continue;
                            const std::uint64_t c2 =
                                c + (ip - dp) * pow[t.p] + (iq - dq) * pow[t.q];
                            add(c2, t.coef * A(ip, dp) * B(iq, dq));
                        }
                    }
                } else {
                    for (int ip = 0; ip < d; ++ip) {
                        if (A(ip, dp) == cd(0)) continue;
                        add(c + (ip - dp) * pow[t.p], t.coef * A(ip, dp));
                    }
                }
            }
            for (const auto& [c2, amp] : targets) {
                if (std::abs(amp) < 1e-14) continue;
                if (blocking->config_block[c2] != b)
                    throw std::logic_error("build_operator: term leaves the sector");
                trip.emplace_back(blocking->config_offset[c2], col, amp);
            }
        }
        Eigen::SparseMatrix<cd> m(sec.dim(), sec.dim());
        m.setFromTriplets(trip.begin(), trip.end());
        op.blocks[b] = std::move(m);
    }
    return op;
}

}  // namespace

BlockedOperator build_operator(const Geometry& g, const OperatorBasis& basis,
                               const Eigen::VectorXd& weights, RampKind ramp,
                               Support support) {
    if (weights.size() != basis.size())
        throw std::invalid_argument("build_operator: weights length " +
                                    std::to_string(weights.size()) +
                                    " != group count " + std::to_string(basis.size()));
    auto per_group = expand_terms(g, basis, ramp, support);
    std::vector<TermInstance> all;
    for (std::size_t gi = 0; gi < per_group.size(); ++gi)
        for (TermInstance t : per_group[gi]) {
            t.coef *= weights[static_cast<int>(gi)];
            all.push_back(t);
        }
    const int n = (support == Support::SubsystemA) ? g.sites_in_A : g.num_sites();
    auto blocking = make_blocking(n, g.site_dim(), conserves_sz(basis));
    return assemble(g, all, blocking);
}

std::vector<BlockedOperator> build_group_operators(const Geometry& g,
                                                   const OperatorBasis& basis,
                                                   RampKind ramp, Support support) {
    auto per_group = expand_terms(g, basis, ramp, support);
    const int n = (support == Support::SubsystemA) ? g.sites_in_A : g.num_sites();
    auto blocking = make_blocking(n, g.site_dim(), conserves_sz(basis));
    std::vector<BlockedOperator> ops;
    ops.reserve(per_group.size());
    for (auto& terms : per_group) ops.push_back(assemble(g, terms, blocking));
    return ops;
}

}  // namespace parham
