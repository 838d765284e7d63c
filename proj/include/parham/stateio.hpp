#pragma once

#include <string>

#include "parham/spectra.hpp"

namespace parham {

// Binary container for states and density-matrix blocks.
//
// Layout (little-endian):
//   magic   8 bytes  "PARHAMB1"
//   u32     version (1)
//   u32     kind: 1 = state vector, 2 = density matrix
//   u32     local dimension d (2 = spin-1/2, 3 = spin-1)
//   u32     number of sites the object lives on
//   u32     number of sectors
//   per sector: i32 twice-S^z, u64 dimension
//   payload, IEEE-754 doubles:
//     state:          per sector, dim complex amplitudes (re, im) in
//                     config-ascending order
//     density matrix: per sector, dim x dim complex entries, row-major
void save_state(const std::string& path, const Eigen::VectorXcd& full_state,
                int n_sites, int local_dim);
Eigen::VectorXcd load_state(const std::string& path, int& n_sites, int& local_dim);

void save_density_matrix(const std::string& path, const DensityMatrix& rho);
DensityMatrix load_density_matrix(const std::string& path);

}  // namespace parham
