#include "paircat/states.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "paircat/errors.hpp"

namespace paircat {

namespace {

struct CompensatedSum {
  long double sum = 0.0L;
  long double carry = 0.0L;
  void add(long double x) {
    const long double y = x - carry;
    const long double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Assembles a ladder state from absolute log amplitudes (normalisation
// constants already folded in, so the untruncated weights sum to 1),
// verifies the discarded tail, and renormalises the kept window.
SchmidtVector assemble_ladder_state(int q, int n_max, double abs_xi,
                                    const std::function<LogAmplitude(int)>& amplitude,
                                    const char* what) {
  SchmidtVector v;
  v.q = q;
  v.coeffs.resize(static_cast<size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    v.coeffs[static_cast<size_t>(n)] = amplitude(n).to_complex();
  }

  // Tail of the untruncated weight distribution. The window extends far past
  // the weight peak near n ~ |xi|, so the remainder beyond it is negligible
  // against the 1e-12 budget.
  CompensatedSum tail;
  const int tail_end = n_max + 400 + static_cast<int>(4.0 * abs_xi);
  for (int n = n_max + 1; n <= tail_end; ++n) {
    const LogAmplitude a = amplitude(n);
    if (a.is_zero()) continue;
    tail.add(std::exp(2.0L * static_cast<long double>(a.log_mag)));
  }
  const double tail_mass = static_cast<double>(tail.sum);
  if (tail_mass > 1e-12) {
    std::ostringstream msg;
    msg << what << ": discarded tail mass " << tail_mass << " exceeds 1e-12 at n_max=" << n_max;
    throw TruncationError(msg.str());
  }
  const double last_weight = std::norm(v.coeffs.back());
  if (last_weight > 1e-12) {
    std::ostringstream msg;
    msg << what << ": weight " << last_weight << " at n_max=" << n_max << " exceeds 1e-12";
    throw TruncationError(msg.str());
  }

  CompensatedSum norm;
  for (const auto& c : v.coeffs) norm.add(static_cast<long double>(std::norm(c)));
  const double scale = static_cast<double>(1.0L / std::sqrt(norm.sum));
  for (auto& c : v.coeffs) c *= scale;
  return v;
}

}  // namespace

void PairCatParams::validate() const {
  if (q < 0) throw std::invalid_argument("PairCatParams: q must be nonnegative");
  if (n_max < 1) throw std::invalid_argument("PairCatParams: n_max must be at least 1");
  if (!std::isfinite(xi.real()) || !std::isfinite(xi.imag()) || !std::isfinite(phi)) {
    throw std::invalid_argument("PairCatParams: parameters must be finite");
  }
}

double SchmidtVector::norm_sq() const {
  CompensatedSum s;
  for (const auto& c : coeffs) s.add(static_cast<long double>(std::norm(c)));
  return static_cast<double>(s.sum);
}

LogAmplitude parity_factor(double phi, int n) {
  const double s = (n % 2 == 0) ? 1.0 : -1.0;
  const double mag_sq = 2.0 * (1.0 + s * std::cos(phi));  // |1 + s e^{i phi}|^2
  if (mag_sq <= 0.0) return LogAmplitude::zero();
  const double phase = std::atan2(s * std::sin(phi), 1.0 + s * std::cos(phi));
  return LogAmplitude::from_polar(0.5 * std::log(mag_sq), phase);
}

LogAmplitude pair_cat_amplitude(std::complex<double> xi, int q, double phi, int n) {
  return pair_amplitude(xi, q, n) * parity_factor(phi, n);
}

double log_normalization_nq(std::complex<double> xi, int q) {
  if (q < 0) throw std::domain_error("log_normalization_nq: q must be nonnegative");
  const double r = std::abs(xi);
  if (r == 0.0) return 0.5 * log_factorial(q);
  return -0.5 * (log_bessel_i(q, 2.0 * r) - q * std::log(r));
}

double normalization_nq(std::complex<double> xi, int q) {
  return std::exp(log_normalization_nq(xi, q));
}

double normalization_nphi(const PairCatParams& params) {
  params.validate();
  const double r = std::abs(params.xi);
  const double cos_phi = std::cos(params.phi);

  // N_q^2 sum_n (-1)^n r^{2n}/(n!(n+q)!). Term n scaled by N_q^2 is
  // r^{2n+q}/(n!(n+q)!)/I_q(2r) <= 1, so the compensated sum carries the
  // bracket to ~1e-18 even where the raw alternating series cancels by
  // tens of orders of magnitude.
  long double scaled_series = 1.0L;
  if (r > 0.0) {
    const double log_nq2 = 2.0 * log_normalization_nq(params.xi, params.q);
    const double log_r = std::log(r);
    CompensatedSum acc;
    for (int n = 0; n < 100000; ++n) {
      const double lt =
          log_nq2 + 2.0 * n * log_r - log_factorial(n) - log_factorial(n + params.q);
      const long double w = std::exp(static_cast<long double>(lt));
      acc.add((n % 2 == 0) ? w : -w);
      if (n > r && w < 1e-20L) break;
    }
    scaled_series = acc.sum;
  }

  const double bracket = 1.0 + cos_phi * static_cast<double>(scaled_series);
  if (bracket <= 1e-14) {
    throw DegenerateStateError("normalization_nphi: superposition norm vanishes");
  }
  return 1.0 / std::sqrt(2.0 * bracket);
}

SchmidtVector pair_coherent_coeffs(std::complex<double> xi, int q, int n_max) {
  if (q < 0) throw std::invalid_argument("pair_coherent_coeffs: q must be nonnegative");
  if (n_max < 1) throw std::invalid_argument("pair_coherent_coeffs: n_max must be at least 1");
  const LogAmplitude prefactor = LogAmplitude::from_polar(log_normalization_nq(xi, q), 0.0);
  return assemble_ladder_state(
      q, n_max, std::abs(xi),
      [&](int n) { return prefactor * pair_amplitude(xi, q, n); },
      "pair_coherent_coeffs");
}

SchmidtVector pair_cat_coeffs(const PairCatParams& params) {
  params.validate();
  const double log_prefactor =
      log_normalization_nq(params.xi, params.q) + std::log(normalization_nphi(params));
  const LogAmplitude prefactor = LogAmplitude::from_polar(log_prefactor, 0.0);
  return assemble_ladder_state(
      params.q, params.n_max, std::abs(params.xi),
      [&](int n) {
        return prefactor * pair_cat_amplitude(params.xi, params.q, params.phi, n);
      },
      "pair_cat_coeffs");
}

double schmidt_entropy(const SchmidtVector& v) {
  CompensatedSum h;
  for (const auto& c : v.coeffs) {
    const long double w = static_cast<long double>(std::norm(c));
    if (w > 0.0L) h.add(-w * std::log2(w));
  }
  return static_cast<double>(h.sum);
}

}  // namespace paircat
