#pragma once

#include <complex>
#include <vector>

#include "paircat/matrix.hpp"
#include "paircat/states.hpp"

namespace paircat {

// Single-mode target |psi_T> = sum_k d_k |k>, unit norm, truncated at k_max.
struct TargetState {
  std::vector<std::complex<double>> d;  // d_0 .. d_{k_max}

  int k_max() const noexcept { return static_cast<int>(d.size()) - 1; }
  void validate() const;
};

// Joint measurement record: total photon number n_sum across Alice's modes
// and the measured phase difference theta_minus. Bob's corrected state does
// not depend on theta_minus (the phase cancels between the projection and
// Bob's phase shift), so it is carried for reporting only.
struct MeasurementOutcome {
  int n_sum = 0;
  double theta_minus = 0.0;
};

// Coherent target d_k = e^{-|alpha|^2/2} alpha^k / sqrt(k!), truncated at
// k_max (discarded tail must be <= 1e-12) and renormalised.
TargetState coherent_target(std::complex<double> alpha, int k_max);

// Number-state target |k0> embedded in a window of size k_max + 1.
TargetState number_target(int k0, int k_max);

// Phase-difference eigenstate coefficients on the number-sum-N subspace:
// <n, N-n | theta_r^N> = e^{i n theta} / sqrt(N+1), theta = vartheta + 2 pi r/(N+1).
std::vector<std::complex<double>> phase_eigenstate(int n_sum, int r, double vartheta);

// Probability of measuring total photon number n_sum:
// P = N_phi^2 N_q^2 sum_{l=q}^{n_sum} 2 |d_{n_sum-l}|^2 |xi|^{2(l-q)}
//     [1 + (-1)^{l-q} cos phi] / (l! (l-q)!).
// Zero (not an error) when n_sum < q or the window misses the target support.
double outcome_probability(const PairCatParams& params, const TargetState& target,
                           int n_sum);

// Bob's normalised conditional state after amplification and phase correction,
// indexed by photon number 0 .. n_sum - q:
// amplitude on |N-q-n> proportional to d_{N-q-n} xi^n (1+(-1)^n e^{i phi}) / sqrt(n!(n+q)!).
// Throws ZeroProbabilityError when the outcome has probability zero.
std::vector<std::complex<double>> conditional_bob_state(const PairCatParams& params,
                                                        const TargetState& target,
                                                        const MeasurementOutcome& outcome);

// Teleportation fidelity conditioned on the outcome n_sum (undamped resource).
double conditional_fidelity(const PairCatParams& params, const TargetState& target,
                            int n_sum);

// Outcome-averaged fidelity sum_N P(N) F(N), N = q .. q + n_max + k_max.
// Throws TruncationError if the discarded probability tail exceeds 1e-10.
double average_fidelity(const PairCatParams& params, const TargetState& target);

// Same protocol with the resource phase-damped before measurement; gamma_t is
// the combined degree (gamma1 + gamma2) t / 2, multiplying (n - m)^2 in the
// ladder coherence decay.
HermitianMatrix conditional_bob_state_damped(const PairCatParams& params,
                                             const TargetState& target, double gamma_t,
                                             int n_sum);
double conditional_fidelity_damped(const PairCatParams& params, const TargetState& target,
                                   double gamma_t, int n_sum);
double average_fidelity_damped(const PairCatParams& params, const TargetState& target,
                               double gamma_t);

// Closed forms for a coherent target, evaluated termwise in log space. The
// n_sum series is truncated at q + n_max + k_max. alpha = 0 delegates to the
// general path with a vacuum target.
double average_fidelity_coherent(const PairCatParams& params, std::complex<double> alpha,
                                 int k_max);
double average_fidelity_damped_coherent(const PairCatParams& params,
                                        std::complex<double> alpha, double gamma_t,
                                        int k_max);

}  // namespace paircat
