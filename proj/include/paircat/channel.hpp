#pragma once

#include "paircat/matrix.hpp"
#include "paircat/states.hpp"

namespace paircat {

// Independent phase damping of the two modes at rates gamma1, gamma2 for
// duration t. The dimensionless degree d collapses gamma1 = gamma2 = 1, t = d,
// so that the ladder decoherence exponent is d (n-m)^2.
struct DampingSchedule {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double t = 0.0;

  static DampingSchedule from_degree(double d) { return {1.0, 1.0, d}; }
  double combined_rate() const { return 0.5 * (gamma1 + gamma2) * t; }
};

// Two-mode state restricted to the ladder span {|n+q, n>}: entries
// c_{n,m} = <n+q, n| rho |m+q, m>. Hermitian by construction, unit trace,
// positive semidefinite for states produced by this library.
struct CorrelatedMatrix {
  int q = 0;
  HermitianMatrix c;

  int dim() const noexcept { return c.dim(); }
};

// Closed-form phase damping on the ladder:
// c_{n,m}(t) = f_n conj(f_m) exp(-(gamma1+gamma2) t (n-m)^2 / 2).
// Diagonal entries are time invariant; far off-diagonals underflow to exact 0.
CorrelatedMatrix evolve(const SchmidtVector& v, const DampingSchedule& sched);

// Reference integrator: classical 4th-order Runge-Kutta directly on the
// coefficient ODE dc_{n,m}/dt = -[(gamma1/2)((n+q)-(m+q))^2
// + (gamma2/2)(n-m)^2] c_{n,m}, starting from the projector of v.
// Integrates with `steps` steps and again with 2*steps; throws StepCheckError
// if any entry moves by more than 1e-8 between the two resolutions, and
// returns the finer result. Restricted to n_max <= 16.
CorrelatedMatrix liouvillian_oracle(const SchmidtVector& v, const DampingSchedule& sched,
                                    int steps);

}  // namespace paircat
