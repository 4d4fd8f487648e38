#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace paircat {

// Amplitudes are carried as ln|z| plus a phase so that factors such as
// xi^n / sqrt(n!(n+q)!) stay representable far outside double range.
// log_mag == -infinity encodes an exact zero (not a tiny magnitude), which
// keeps parity cancellations exact downstream.
struct LogAmplitude {
  double log_mag = -std::numeric_limits<double>::infinity();  // ln|z|
  double phase = 0.0;                                         // arg z, in (-pi, pi]

  static LogAmplitude zero() noexcept { return {}; }
  static LogAmplitude from_polar(double log_mag, double phase) noexcept;
  static LogAmplitude from_complex(const std::complex<double>& z);

  bool is_zero() const noexcept { return std::isinf(log_mag) && log_mag < 0.0; }
  std::complex<double> to_complex() const;
  LogAmplitude conjugate() const noexcept;

  friend LogAmplitude operator*(const LogAmplitude& a, const LogAmplitude& b) noexcept;
};

// Maps an angle to the principal branch (-pi, pi].
double wrap_phase(double angle) noexcept;

// ln(n!), absolute error below 1e-12 over the supported range (n >= 0).
double log_factorial(int n);

// ln I_q(x) for integer order q >= 0, x >= 0; -infinity when I_q(x) == 0
// (q > 0 at x == 0). Series form I_q(x) = sum_n (x/2)^{2n+q} / (n!(n+q)!),
// summed in log space until a term drops below 1e-18 of the running sum.
double log_bessel_i(int q, double x);

// Modified Bessel function of the first kind, I_q(x).
double bessel_i(int q, double x);

// Ladder amplitude xi^n / sqrt(n!(n+q)!) in log form.
LogAmplitude pair_amplitude(std::complex<double> xi, int q, int n);

}  // namespace paircat
