#include "paircat/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "paircat/errors.hpp"

namespace paircat {

namespace {

using Grid = std::vector<std::complex<double>>;

// Entrywise generator of the two-mode phase damping master equation on the
// ladder: both mode occupations differ by (n - m) between bra and ket.
double generator_rate(const DampingSchedule& s, int n, int m) {
  const double d1 = static_cast<double>(n - m);  // (n+q) - (m+q)
  const double d2 = static_cast<double>(n - m);
  return -(0.5 * s.gamma1 * d1 * d1 + 0.5 * s.gamma2 * d2 * d2);
}

Grid rk4_integrate(const SchmidtVector& v, const DampingSchedule& s, int steps) {
  const int dim = v.n_max() + 1;
  Grid c(static_cast<size_t>(dim) * dim);
  for (int n = 0; n < dim; ++n)
    for (int m = 0; m < dim; ++m)
      c[static_cast<size_t>(n) * dim + m] =
          v.coeffs[static_cast<size_t>(n)] * std::conj(v.coeffs[static_cast<size_t>(m)]);

  const double h = s.t / steps;
  Grid k1(c.size()), k2(c.size()), k3(c.size()), k4(c.size());
  for (int step = 0; step < steps; ++step) {
    for (int n = 0; n < dim; ++n) {
      for (int m = 0; m < dim; ++m) {
        const size_t idx = static_cast<size_t>(n) * dim + m;
        const double g = generator_rate(s, n, m);
        k1[idx] = g * c[idx];
        k2[idx] = g * (c[idx] + 0.5 * h * k1[idx]);
        k3[idx] = g * (c[idx] + 0.5 * h * k2[idx]);
        k4[idx] = g * (c[idx] + h * k3[idx]);
        c[idx] += (h / 6.0) * (k1[idx] + 2.0 * k2[idx] + 2.0 * k3[idx] + k4[idx]);
      }
    }
  }
  return c;
}

}  // namespace

CorrelatedMatrix evolve(const SchmidtVector& v, const DampingSchedule& sched) {
  if (sched.t < 0.0 || sched.gamma1 < 0.0 || sched.gamma2 < 0.0) {
    throw std::invalid_argument("evolve: damping parameters must be nonnegative");
  }
  const int dim = v.n_max() + 1;
  CorrelatedMatrix out{v.q, HermitianMatrix(dim)};
  const double rate = sched.combined_rate();
  for (int n = 0; n < dim; ++n) {
    for (int m = n; m < dim; ++m) {
      const double delta = static_cast<double>(n - m);
      const double factor = std::exp(-rate * delta * delta);
      out.c.set_hermitian_pair(
          n, m,
          v.coeffs[static_cast<size_t>(n)] * std::conj(v.coeffs[static_cast<size_t>(m)]) *
              factor);
    }
  }
  return out;
}

CorrelatedMatrix liouvillian_oracle(const SchmidtVector& v, const DampingSchedule& sched,
                                    int steps) {
  if (v.n_max() > 16) {
    throw std::invalid_argument("liouvillian_oracle: restricted to n_max <= 16");
  }
  if (steps < 1) throw std::invalid_argument("liouvillian_oracle: steps must be positive");
  if (sched.t < 0.0 || sched.gamma1 < 0.0 || sched.gamma2 < 0.0) {
    throw std::invalid_argument("liouvillian_oracle: damping parameters must be nonnegative");
  }

  const Grid coarse = rk4_integrate(v, sched, steps);
  const Grid fine = rk4_integrate(v, sched, 2 * steps);
  double max_diff = 0.0;
  for (size_t i = 0; i < coarse.size(); ++i) {
    max_diff = std::max(max_diff, std::abs(fine[i] - coarse[i]));
  }
  if (max_diff > 1e-8) {
    throw StepCheckError("liouvillian_oracle: step-halving check failed, max entry change " +
                         std::to_string(max_diff));
  }

  const int dim = v.n_max() + 1;
  CorrelatedMatrix out{v.q, HermitianMatrix(dim)};
  for (int n = 0; n < dim; ++n) {
    for (int m = n; m < dim; ++m) {
      out.c.set_hermitian_pair(n, m, fine[static_cast<size_t>(n) * dim + m]);
    }
  }
  return out;
}

}  // namespace paircat
