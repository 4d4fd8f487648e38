#include "paircat/fock.hpp"

#include <numbers>
#include <stdexcept>
#include <vector>

namespace paircat {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kFactorialTableSize = 8192;

const std::vector<double>& factorial_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kFactorialTableSize);
    t[0] = 0.0;
    long double acc = 0.0L;
    for (int n = 1; n < kFactorialTableSize; ++n) {
      acc += std::log(static_cast<long double>(n));
      t[n] = static_cast<double>(acc);
    }
    return t;
  }();
  return table;
}

// Stirling series; the first omitted term is O(n^-9), far below 1e-12 for
// every n that falls through the table.
double stirling_log_factorial(int n) {
  const long double x = n;
  const long double inv = 1.0L / x;
  const long double inv2 = inv * inv;
  long double s = (x + 0.5L) * std::log(x) - x +
                  0.5L * std::log(2.0L * std::numbers::pi_v<long double>);
  s += inv * (1.0L / 12.0L -
              inv2 * (1.0L / 360.0L - inv2 * (1.0L / 1260.0L - inv2 / 1680.0L)));
  return static_cast<double>(s);
}

}  // namespace

LogAmplitude LogAmplitude::from_polar(double log_mag, double phase) noexcept {
  if (std::isinf(log_mag) && log_mag < 0.0) return zero();
  return {log_mag, wrap_phase(phase)};
}

LogAmplitude LogAmplitude::from_complex(const std::complex<double>& z) {
  if (z == std::complex<double>(0.0, 0.0)) return zero();
  return {std::log(std::abs(z)), std::arg(z)};
}

std::complex<double> LogAmplitude::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(log_mag), phase);
}

LogAmplitude LogAmplitude::conjugate() const noexcept {
  if (is_zero()) return zero();
  return {log_mag, wrap_phase(-phase)};
}

LogAmplitude operator*(const LogAmplitude& a, const LogAmplitude& b) noexcept {
  if (a.is_zero() || b.is_zero()) return LogAmplitude::zero();
  return {a.log_mag + b.log_mag, wrap_phase(a.phase + b.phase)};
}

double wrap_phase(double angle) noexcept {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(angle, two_pi);  // lands in [-pi, pi]
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

double log_factorial(int n) {
  if (n < 0) throw std::domain_error("log_factorial: negative argument");
  if (n < kFactorialTableSize) return factorial_table()[n];
  return stirling_log_factorial(n);
}

double log_bessel_i(int q, double x) {
  if (q < 0) throw std::domain_error("log_bessel_i: order must be nonnegative");
  if (!(x >= 0.0)) throw std::domain_error("log_bessel_i: argument must be nonnegative");
  if (x == 0.0) return q == 0 ? 0.0 : kNegInf;

  // Streaming log-sum-exp over t_n = (2n+q) ln(x/2) - ln n! - ln (n+q)!.
  const double log_half_x = std::log(0.5 * x);
  double max_log = q * log_half_x - log_factorial(q);  // n = 0 term
  long double scaled_sum = 1.0L;
  double prev = max_log;
  for (int n = 1; n < 100000; ++n) {
    const double t = (2.0 * n + q) * log_half_x - log_factorial(n) - log_factorial(n + q);
    if (t <= max_log) {
      const long double w = std::exp(static_cast<long double>(t - max_log));
      scaled_sum += w;
      if (t < prev && w < 1e-18L * scaled_sum) break;
    } else {
      scaled_sum = scaled_sum * std::exp(static_cast<long double>(max_log - t)) + 1.0L;
      max_log = t;
    }
    prev = t;
  }
  return max_log + static_cast<double>(std::log(scaled_sum));
}

double bessel_i(int q, double x) {
  const double lg = log_bessel_i(q, x);
  return (std::isinf(lg) && lg < 0.0) ? 0.0 : std::exp(lg);
}

LogAmplitude pair_amplitude(std::complex<double> xi, int q, int n) {
  if (q < 0) throw std::domain_error("pair_amplitude: q must be nonnegative");
  if (n < 0) throw std::domain_error("pair_amplitude: n must be nonnegative");
  if (n == 0) return LogAmplitude::from_polar(-0.5 * log_factorial(q), 0.0);
  const double r = std::abs(xi);
  if (r == 0.0) return LogAmplitude::zero();
  const double log_mag =
      n * std::log(r) - 0.5 * (log_factorial(n) + log_factorial(n + q));
  return LogAmplitude::from_polar(log_mag, n * std::arg(xi));
}

}  // namespace paircat
