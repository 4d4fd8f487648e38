#pragma once

#include <array>
#include <utility>
#include <vector>

#include "paircat/channel.hpp"
#include "paircat/matrix.hpp"
#include "paircat/states.hpp"

namespace paircat {

struct Spectrum {
  std::vector<double> eigenvalues;  // descending
};

// Reduction-type distillability witness restricted to the (i, j) ladder pair.
// Omega_1 = -D Re(f_i conj(f_j)), Omega_2 = +D Re(f_i conj(f_j)),
// Omega_3 = +D Im(f_i conj(f_j)), Omega_4 = -D Im(f_i conj(f_j)), with
// D = exp(-(gamma1/2) t (i-j)^2 - (gamma2/2) t (i-j)^2). A negative entry
// certifies distillability at all damping degrees.
struct WitnessReport {
  std::array<double, 4> omega{};    // linear values; may underflow for deep damping
  std::array<double, 4> log_abs{};  // ln|Omega_k|, -infinity for an exact zero
  std::array<int, 4> sign{};        // -1, 0, +1
  double min_omega = 0.0;
  int min_index = 0;  // 0-based position of the minimum in omega
  bool distillable = false;
  int i = 0;
  int j = 0;
};

// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, descending.
// Throws ConvergenceError if the off-diagonal norm is not driven below
// threshold within a bounded number of sweeps.
Spectrum hermitian_eigenvalues(const HermitianMatrix& m);

// -sum_k lambda_k log2 lambda_k. Entries below -1e-10 raise
// NegativeEigenvalueError; the rest are clipped to [0, 1].
double von_neumann_entropy(const Spectrum& s);

// Relative entropy of entanglement of a ladder-supported state:
// E = -sum_n c_nn log2 c_nn + Tr(rho log2 rho). Results within 1e-10 below
// zero are clipped to zero.
double relative_entropy_of_entanglement(const CorrelatedMatrix& m);

// The diagonal of m in the ladder basis, i.e. the separable state closest
// to m in relative entropy for this family.
CorrelatedMatrix closest_separable_state(const CorrelatedMatrix& m);

// Default witness pair: the two largest-weight coefficients of matching
// nonzero parity. Throws ZeroCoefficientError when no such pair exists.
std::pair<int, int> choose_witness_pair(const SchmidtVector& v);

WitnessReport reduction_witness(const SchmidtVector& v, const DampingSchedule& sched,
                                int i, int j);

}  // namespace paircat
