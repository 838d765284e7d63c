#include "parham/kernels.hpp"

#include <atomic>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace parham::kernels {

namespace {
std::atomic<int> g_threads{1};
constexpr double kDegenTol = 1e-10;
constexpr int kChunkRows = 32;

inline double phi(double li, double lj, double pi, double pj) {
    if (std::abs(li - lj) < kDegenTol) return pi;
    return (pi - pj) / (lj - li);
}
}  // namespace

void set_num_threads(int n) {
    g_threads = n < 1 ? 1 : n;
#ifdef _OPENMP
    omp_set_num_threads(g_threads);
#endif
}

int num_threads() { return g_threads; }

void eigendecompose_blocks(const std::vector<Eigen::SparseMatrix<cd>>& blocks,
                           std::vector<Eigen::VectorXd>& evals,
                           std::vector<Eigen::MatrixXcd>& evecs, bool parallel) {
    const int n = static_cast<int>(blocks.size());
    evals.resize(n);
    evecs.resize(n);
    if (!parallel) {
        for (int b = 0; b < n; ++b) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
                Eigen::MatrixXcd(blocks[b]));
            evals[b] = es.eigenvalues();
            evecs[b] = es.eigenvectors();
        }
        return;
    }
#pragma omp parallel for schedule(dynamic)
    for (int b = 0; b < n; ++b) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd(blocks[b]));
        evals[b] = es.eigenvalues();
        evecs[b] = es.eigenvectors();
    }
}

namespace {

double km_rows(const Eigen::VectorXd& l, const Eigen::VectorXd& p,
               const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, int row0,
               int row1) {
    const int n = static_cast<int>(l.size());
    double acc = 0;
    for (int i = row0; i < row1; ++i)
        for (int j = 0; j < n; ++j)
            acc += phi(l[i], l[j], p[i], p[j]) *
                   std::real(a(i, j) * std::conj(b(i, j)));
    return acc;
}

}  // namespace

double kubo_mori_block(const Eigen::VectorXd& evals, const Eigen::VectorXd& pops,
                       const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                       bool parallel) {
    const int n = static_cast<int>(evals.size());
    if (!parallel) return km_rows(evals, pops, a, b, 0, n);

    const int n_chunks = (n + kChunkRows - 1) / kChunkRows;
    std::vector<double> partial(n_chunks, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < n_chunks; ++c) {
        const int row0 = c * kChunkRows;
        const int row1 = std::min(n, row0 + kChunkRows);
        partial[c] = km_rows(evals, pops, a, b, row0, row1);
    }
    // fixed combination order keeps the sum independent of the worker count
    double acc = 0;
    for (double x : partial) acc += x;
    return acc;
}

}  // namespace parham::kernels
