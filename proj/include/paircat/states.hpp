#pragma once

#include <complex>
#include <vector>

#include "paircat/fock.hpp"

namespace paircat {

struct PairCatParams {
  std::complex<double> xi;
  int q = 0;
  double phi = 0.0;
  int n_max = 100;

  void validate() const;  // throws std::invalid_argument on out-of-range fields
};

// Pure two-mode state on the ladder |n+q, n>: |psi> = sum_n f_n |n+q, n>.
// Accepted constructions are unit-norm with a discarded tail below 1e-12.
struct SchmidtVector {
  int q = 0;
  std::vector<std::complex<double>> coeffs;  // f_0 .. f_{n_max}

  int n_max() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  double weight(int n) const { return std::norm(coeffs[static_cast<size_t>(n)]); }
  double norm_sq() const;
  double tail_mass() const { return std::norm(coeffs.back()); }
};

// Interference factor 1 + (-1)^n e^{i phi}. The magnitude comes from
// |1 + s e^{i phi}|^2 = 2(1 + s cos phi), so the cancelled parity class
// (phi = 0 odd n, phi = pi even n) is exactly zero whenever cos phi
// evaluates to +-1.
LogAmplitude parity_factor(double phi, int n);

// Unnormalised pair-cat ladder amplitude xi^n (1 + (-1)^n e^{i phi}) / sqrt(n!(n+q)!).
LogAmplitude pair_cat_amplitude(std::complex<double> xi, int q, double phi, int n);

// N_q = [|xi|^{-q} I_q(2|xi|)]^{-1/2}; at xi = 0 this limits to sqrt(q!).
double log_normalization_nq(std::complex<double> xi, int q);
double normalization_nq(std::complex<double> xi, int q);

// N_phi = (1/sqrt 2) [1 + N_q^2 cos(phi) sum_n (-1)^n |xi|^{2n}/(n!(n+q)!)]^{-1/2}.
// Throws DegenerateStateError when the bracket is <= 1e-14.
double normalization_nphi(const PairCatParams& params);

// f_n = N_q xi^n / sqrt(n!(n+q)!), truncated at n_max and renormalised.
SchmidtVector pair_coherent_coeffs(std::complex<double> xi, int q, int n_max);

// f_n = N_phi N_q xi^n (1 + (-1)^n e^{i phi}) / sqrt(n!(n+q)!), truncated and
// renormalised; the cancelled parity class is exactly zero.
SchmidtVector pair_cat_coeffs(const PairCatParams& params);

// Entanglement entropy -sum_n |f_n|^2 log2 |f_n|^2 of a unit-norm ladder state.
double schmidt_entropy(const SchmidtVector& v);

}  // namespace paircat
