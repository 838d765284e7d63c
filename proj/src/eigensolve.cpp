#include "parham/spectra.hpp"

#include <algorithm>
#include <cmath>

namespace parham {

namespace {

constexpr int kDenseGroundCutoff = 1200;   // full spectrum per block below this
constexpr int kDenseSpectrumCutoff = 4096;
constexpr double kDegeneracyTol = 1e-10;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

Eigen::VectorXcd deterministic_start(int dim) {
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) {
        const double re = double(splitmix64(2 * i) >> 11) * 0x1.0p-53 - 0.5;
        const double im = double(splitmix64(2 * i + 1) >> 11) * 0x1.0p-53 - 0.5;
        v[i] = cd(re, im);
    }
    v.normalize();
    return v;
}

void fix_phase(Eigen::VectorXcd& v) {
    int best = 0;
    double mag = 0;
    for (int i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) > mag + 1e-15) {
            mag = std::abs(v[i]);
            best = i;
        }
    if (mag > 0) v *= std::conj(v[best]) / mag;
}

}  // namespace

std::pair<double, Eigen::VectorXcd> lanczos_lowest(const Eigen::SparseMatrix<cd>& h,
                                                   double tol, int max_iter) {
    const int dim = static_cast<int>(h.rows());
    if (dim == 1) return {h.coeff(0, 0).real(), Eigen::VectorXcd::Ones(1)};

    Eigen::VectorXcd start = deterministic_start(dim);
    const int chunk = std::min(dim, 250);

    for (int restart = 0; restart < 20; ++restart) {
        std::vector<Eigen::VectorXcd> V;
        V.push_back(start);
        std::vector<double> alpha, beta;
        Eigen::VectorXcd w;
        for (int j = 0; j < chunk && j < dim; ++j) {
            w = h * V[j];
            const double a = std::real(V[j].dot(w));
            alpha.push_back(a);
            w -= a * V[j];
            if (j > 0) w -= beta[j - 1] * V[j - 1];
            for (int pass = 0; pass < 2; ++pass)  // full reorthogonalization
                for (const auto& v : V) w -= v.dot(w) * v;
            const double b = w.norm();
            if (b < 1e-14) break;
            beta.push_back(b);
            V.push_back(w / b);
        }
        const int m = static_cast<int>(alpha.size());
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            T(i, i) = alpha[i];
            if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        const double theta = es.eigenvalues()[0];
        Eigen::VectorXcd ritz = Eigen::VectorXcd::Zero(dim);
        for (int i = 0; i < m; ++i) ritz += es.eigenvectors()(i, 0) * V[i];
        ritz.normalize();
        const double resid = (h * ritz - theta * ritz).norm();
        if (resid < tol * std::max(1.0, std::abs(theta)) ||
            (restart + 1) * chunk >= max_iter) {
            if (resid > 1e-6 * std::max(1.0, std::abs(theta)))
                throw std::runtime_error(
                    "lanczos_lowest: no convergence, residual " + std::to_string(resid));
            fix_phase(ritz);
            return {theta, ritz};
        }
        start = ritz;
    }
    throw std::runtime_error("lanczos_lowest: restart limit reached");
}

namespace {

struct BlockLowest {
    double energy;
    Eigen::VectorXcd vec;
    double gap_to_next;  // within the block; +inf if unknown/1-dim
    Eigen::VectorXcd second;
};

BlockLowest block_lowest(const Eigen::SparseMatrix<cd>& h) {
    const int dim = static_cast<int>(h.rows());
    if (dim <= kDenseGroundCutoff) {
        const Eigen::MatrixXcd dense(h);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
        BlockLowest r;
        r.energy = es.eigenvalues()[0];
        r.vec = es.eigenvectors().col(0);
        r.gap_to_next = dim > 1 ? es.eigenvalues()[1] - es.eigenvalues()[0]
                                : std::numeric_limits<double>::infinity();
        if (dim > 1) r.second = es.eigenvectors().col(1);
        return r;
    }
    auto [e, v] = lanczos_lowest(h);
    return {e, std::move(v), std::numeric_limits<double>::infinity(), {}};
}

Eigen::VectorXcd embed(const Blocking& blocking, int block,
                       const Eigen::VectorXcd& sector_vec) {
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(blocking.full_dim());
    const auto& configs = blocking.sectors[block].configs;
    for (int i = 0; i < static_cast<int>(configs.size()); ++i)
        full[configs[i]] = sector_vec[i];
    return full;
}

}  // namespace

GroundState ground_state(const BlockedOperator& op) {
    const Blocking& blocking = *op.blocking;
    std::vector<BlockLowest> lows(blocking.num_blocks());
    for (int b = 0; b < blocking.num_blocks(); ++b) lows[b] = block_lowest(op.blocks[b]);

    int best = 0;
    for (int b = 1; b < blocking.num_blocks(); ++b) {
        const double diff = lows[b].energy - lows[best].energy;
        if (diff < -kDegeneracyTol) {
            best = b;
        } else if (std::abs(diff) <= kDegeneracyTol) {
            // deterministic tie-break: prefer the S^z_tot = 0 sector, then
            // the smaller |S^z_tot|
            const int mb = std::abs(blocking.sectors[b].twice_sz);
            const int mbest = std::abs(blocking.sectors[best].twice_sz);
            if (mb < mbest) best = b;
        }
    }

    GroundState gs;
    gs.energy = lows[best].energy;
    gs.sector_twice_sz = blocking.sectors[best].twice_sz;
    gs.sector_blocked = blocking.blocked;

    Eigen::VectorXcd vec = lows[best].vec;
    bool degenerate = lows[best].gap_to_next < kDegeneracyTol;
    for (int b = 0; b < blocking.num_blocks(); ++b)
        if (b != best && std::abs(lows[b].energy - gs.energy) <= kDegeneracyTol)
            degenerate = true;
    gs.degenerate = degenerate;

    if (lows[best].gap_to_next < kDegeneracyTol && lows[best].second.size() > 0) {
        // rotate inside the degenerate pair onto the earliest basis
        // configuration carrying weight, for a reproducible representative
        const Eigen::VectorXcd& u = vec;
        const Eigen::VectorXcd& v = lows[best].second;
        for (int i = 0; i < u.size(); ++i) {
            const double wu = std::abs(u[i]), wv = std::abs(v[i]);
            if (wu * wu + wv * wv > 1e-16) {
                Eigen::VectorXcd rotated =
                    std::conj(u[i]) * u + std::conj(v[i]) * v;
                rotated.normalize();
                vec = rotated;
                break;
            }
        }
    }
    fix_phase(vec);
    gs.amplitudes = embed(blocking, best, vec);
    return gs;
}

GroundState excited_state(const BlockedOperator& op, int index) {
    const Blocking& blocking = *op.blocking;
    struct Entry {
        double e;
        int block, col;
    };
    std::vector<Entry> entries;
    std::vector<Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>> solvers;
    solvers.reserve(blocking.num_blocks());
    for (int b = 0; b < blocking.num_blocks(); ++b) {
        if (op.blocks[b].rows() > kDenseSpectrumCutoff)
            throw CapacityError("excited_state: block dimension " +
                                std::to_string(op.blocks[b].rows()) +
                                " above dense cutoff");
        solvers.emplace_back(Eigen::MatrixXcd(op.blocks[b]));
        for (int i = 0; i < op.blocks[b].rows(); ++i)
            entries.push_back({solvers[b].eigenvalues()[i], b, i});
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.e < b.e; });
    if (index < 0 || index >= static_cast<int>(entries.size()))
        throw std::invalid_argument("excited_state: index out of range");
    const Entry& e = entries[index];
    GroundState st;
    st.energy = e.e;
    st.sector_twice_sz = blocking.sectors[e.block].twice_sz;
    st.sector_blocked = blocking.blocked;
    st.degenerate = (index + 1 < static_cast<int>(entries.size()) &&
                     entries[index + 1].e - e.e < kDegeneracyTol) ||
                    (index > 0 && e.e - entries[index - 1].e < kDegeneracyTol);
    Eigen::VectorXcd vec = solvers[e.block].eigenvectors().col(e.col);
    fix_phase(vec);
    st.amplitudes = embed(blocking, e.block, vec);
    return st;
}

std::vector<double> lowest_energies(const BlockedOperator& op, int k) {
    std::vector<double> all;
    for (int b = 0; b < op.blocking->num_blocks(); ++b) {
        const auto& h = op.blocks[b];
        if (h.rows() <= kDenseSpectrumCutoff) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
                Eigen::MatrixXcd(h), Eigen::EigenvaluesOnly);
            for (int i = 0; i < std::min<int>(k, h.rows()); ++i)
                all.push_back(es.eigenvalues()[i]);
        } else {
            all.push_back(lanczos_lowest(h).first);
        }
    }
    std::sort(all.begin(), all.end());
    if (static_cast<int>(all.size()) > k) all.resize(k);
    return all;
}

}  // namespace parham
