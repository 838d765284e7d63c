#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <vector>

namespace parham::kernels {

using cd = std::complex<double>;

// Process-wide worker count for the OpenMP paths (1 = serial reference).
void set_num_threads(int n);
int num_threads();

// Full eigendecomposition of every block, parallel over blocks.
void eigendecompose_blocks(const std::vector<Eigen::SparseMatrix<cd>>& blocks,
                           std::vector<Eigen::VectorXd>& evals,
                           std::vector<Eigen::MatrixXcd>& evecs, bool parallel);

// Kubo-Mori covariance contribution of one block:
//   sum_ij phi(l_i, l_j) A_ij conj(B_ij)
// with phi = (p_i - p_j)/(l_j - l_i), and phi -> p at coinciding eigenvalues
// (threshold 1e-10). A, B are Hermitian matrices already rotated into the
// eigenbasis. The parallel path reduces over fixed row chunks so the result
// does not depend on the worker count.
double kubo_mori_block(const Eigen::VectorXd& evals, const Eigen::VectorXd& pops,
                       const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                       bool parallel);

}  // namespace parham::kernels
