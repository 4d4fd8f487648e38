#include "paircat/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "paircat/errors.hpp"

namespace paircat {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// One complex Jacobi rotation annihilating A(p, r). With beta = A(p, r) =
// b e^{i theta}, the similarity diag(1, e^{-i theta}) reduces the 2x2 block to
// a real symmetric one; the real rotation angle then satisfies
// t^2 - 2 tau t - 1 = 0 with tau = (A_rr - A_pp) / (2b), and the smaller-
// magnitude root keeps rotations bounded.
void jacobi_rotate(HermitianMatrix& a, int p, int r) {
  const std::complex<double> beta = a(p, r);
  const double b = std::abs(beta);
  const double theta = std::arg(beta);
  const double tau = (a(r, r).real() - a(p, p).real()) / (2.0 * b);
  const double sgn = (tau >= 0.0) ? 1.0 : -1.0;
  const double t = -sgn / (std::abs(tau) + std::hypot(1.0, tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const std::complex<double> phase = std::polar(1.0, theta);
  const std::complex<double> sp = s * phase;              // s e^{i theta}
  const std::complex<double> sm = s * std::conj(phase);   // s e^{-i theta}
  const int n = a.dim();

  // A <- U^H A U with U = [[c, -s e^{i theta}], [s e^{-i theta}, c]] acting
  // on rows/columns (p, r).
  for (int k = 0; k < n; ++k) {
    if (k == p || k == r) continue;
    const std::complex<double> akp = a(k, p);
    const std::complex<double> akr = a(k, r);
    a(k, p) = c * akp + sm * akr;
    a(k, r) = -sp * akp + c * akr;
    a(p, k) = std::conj(a(k, p));
    a(r, k) = std::conj(a(k, r));
  }
  const double app = a(p, p).real();
  const double arr = a(r, r).real();
  a(p, p) = std::complex<double>(app + t * b, 0.0);
  a(r, r) = std::complex<double>(arr - t * b, 0.0);
  a(p, r) = 0.0;
  a(r, p) = 0.0;
}

}  // namespace

Spectrum hermitian_eigenvalues(const HermitianMatrix& m) {
  const int n = m.dim();
  if (n == 0) return {};
  HermitianMatrix a = m;

  const double scale = a.frobenius_norm();
  const double target = 1e-13 * std::max(scale, 1e-300);
  const double skip = target / n;
  constexpr int kMaxSweeps = 60;

  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (a.off_diagonal_norm() <= target) {
      converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int r = p + 1; r < n; ++r) {
        if (std::abs(a(p, r)) <= skip) {
          a(p, r) = 0.0;
          a(r, p) = 0.0;
          continue;
        }
        jacobi_rotate(a, p, r);
      }
    }
  }
  if (!converged && a.off_diagonal_norm() > target) {
    throw ConvergenceError("hermitian_eigenvalues: Jacobi sweeps did not converge");
  }

  Spectrum s;
  s.eigenvalues.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) s.eigenvalues[static_cast<size_t>(i)] = a(i, i).real();
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), std::greater<double>());
  return s;
}

double von_neumann_entropy(const Spectrum& s) {
  long double h = 0.0L;
  for (double lambda : s.eigenvalues) {
    if (lambda < -1e-10) {
      throw NegativeEigenvalueError("von_neumann_entropy: eigenvalue " +
                                    std::to_string(lambda) + " below -1e-10");
    }
    const double clipped = std::clamp(lambda, 0.0, 1.0);
    if (clipped > 0.0) {
      h -= static_cast<long double>(clipped) * std::log2(static_cast<long double>(clipped));
    }
  }
  return static_cast<double>(h);
}

double relative_entropy_of_entanglement(const CorrelatedMatrix& m) {
  long double diag_entropy = 0.0L;
  for (int i = 0; i < m.dim(); ++i) {
    const double w = m.c(i, i).real();
    if (w > 0.0) {
      diag_entropy -= static_cast<long double>(w) * std::log2(static_cast<long double>(w));
    }
  }
  const double state_entropy = von_neumann_entropy(hermitian_eigenvalues(m.c));
  double e = static_cast<double>(diag_entropy - static_cast<long double>(state_entropy));
  if (e < 0.0 && e > -1e-10) e = 0.0;
  return e;
}

CorrelatedMatrix closest_separable_state(const CorrelatedMatrix& m) {
  CorrelatedMatrix out{m.q, HermitianMatrix(m.dim())};
  for (int i = 0; i < m.dim(); ++i) {
    out.c.set_hermitian_pair(i, i, m.c(i, i).real());
  }
  return out;
}

std::pair<int, int> choose_witness_pair(const SchmidtVector& v) {
  // Best two indices per parity class, by weight.
  std::array<int, 2> best_even{-1, -1};
  std::array<int, 2> best_odd{-1, -1};
  auto consider = [&](std::array<int, 2>& best, int n) {
    if (best[0] < 0 || v.weight(n) > v.weight(best[0])) {
      best[1] = best[0];
      best[0] = n;
    } else if (best[1] < 0 || v.weight(n) > v.weight(best[1])) {
      best[1] = n;
    }
  };
  for (int n = 0; n <= v.n_max(); ++n) {
    if (v.weight(n) == 0.0) continue;
    consider((n % 2 == 0) ? best_even : best_odd, n);
  }

  auto pair_product = [&](const std::array<int, 2>& best) {
    return (best[1] < 0) ? -1.0 : v.weight(best[0]) * v.weight(best[1]);
  };
  const double even_product = pair_product(best_even);
  const double odd_product = pair_product(best_odd);
  if (even_product < 0.0 && odd_product < 0.0) {
    throw ZeroCoefficientError(
        "choose_witness_pair: fewer than two nonzero coefficients share a parity");
  }
  const auto& best = (even_product >= odd_product) ? best_even : best_odd;
  return {std::min(best[0], best[1]), std::max(best[0], best[1])};
}

WitnessReport reduction_witness(const SchmidtVector& v, const DampingSchedule& sched,
                                int i, int j) {
  if (i < 0 || j < 0 || i > v.n_max() || j > v.n_max() || i == j) {
    throw std::invalid_argument("reduction_witness: indices must be distinct and in range");
  }
  const std::complex<double> fi = v.coeffs[static_cast<size_t>(i)];
  const std::complex<double> fj = v.coeffs[static_cast<size_t>(j)];
  if (fi == std::complex<double>(0.0) || fj == std::complex<double>(0.0)) {
    throw ZeroCoefficientError("reduction_witness: coefficient at requested index is zero");
  }

  // Both mode occupations differ by (i - j) across the pair, so the damping
  // factor is D = exp(-(gamma1 + gamma2) t (i-j)^2 / 2), handled in log form.
  const double delta = static_cast<double>(i - j);
  const double log_damping = -sched.combined_rate() * delta * delta;
  const std::complex<double> prod = fi * std::conj(fj);
  const double re = prod.real();
  const double im = prod.imag();

  WitnessReport rep;
  rep.i = i;
  rep.j = j;
  auto fill = [&](int k, double value, double overall_sign) {
    if (value == 0.0) {
      rep.sign[static_cast<size_t>(k)] = 0;
      rep.log_abs[static_cast<size_t>(k)] = kNegInf;
      rep.omega[static_cast<size_t>(k)] = 0.0;
    } else {
      const double s = overall_sign * ((value > 0.0) ? 1.0 : -1.0);
      rep.sign[static_cast<size_t>(k)] = (s > 0.0) ? 1 : -1;
      rep.log_abs[static_cast<size_t>(k)] = log_damping + std::log(std::abs(value));
      rep.omega[static_cast<size_t>(k)] = s * std::exp(rep.log_abs[static_cast<size_t>(k)]);
    }
  };
  fill(0, re, -1.0);  // Omega_1 = -D Re
  fill(1, re, +1.0);  // Omega_2 = +D Re
  fill(2, im, +1.0);  // Omega_3 = +D Im
  fill(3, im, -1.0);  // Omega_4 = -D Im

  // Minimum by sign and log magnitude, so deep damping cannot flush the
  // verdict to a tie at +-0.
  int min_k = 0;
  auto more_negative = [&](int lhs, int rhs) {
    const int sl = rep.sign[static_cast<size_t>(lhs)];
    const int sr = rep.sign[static_cast<size_t>(rhs)];
    if (sl != sr) return sl < sr;
    if (sl < 0) return rep.log_abs[static_cast<size_t>(lhs)] > rep.log_abs[static_cast<size_t>(rhs)];
    if (sl > 0) return rep.log_abs[static_cast<size_t>(lhs)] < rep.log_abs[static_cast<size_t>(rhs)];
    return false;
  };
  for (int k = 1; k < 4; ++k) {
    if (more_negative(k, min_k)) min_k = k;
  }
  rep.min_index = min_k;
  rep.min_omega = rep.omega[static_cast<size_t>(min_k)];
  rep.distillable = rep.sign[static_cast<size_t>(min_k)] < 0;
  return rep;
}

}  // namespace paircat
