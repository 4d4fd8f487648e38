#include "paircat/teleport.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "paircat/errors.hpp"

namespace paircat {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// A nonnegative quantity e^{log_scale} * value, kept split so that window
// sums at |xi| ~ 30 never leave representable range.
struct ScaledReal {
  double log_scale = kNegInf;
  long double value = 0.0L;

  bool is_zero() const { return value <= 0.0L || (std::isinf(log_scale) && log_scale < 0.0); }
  double log() const {
    return is_zero() ? kNegInf : log_scale + static_cast<double>(std::log(value));
  }
};

struct ScaledComplex {
  double log_scale = kNegInf;
  std::complex<long double> value{0.0L, 0.0L};

  bool is_zero() const {
    return (std::isinf(log_scale) && log_scale < 0.0) || std::abs(value) == 0.0L;
  }
  double log_abs() const {
    return is_zero() ? kNegInf : log_scale + static_cast<double>(std::log(std::abs(value)));
  }
};

double max_log_mag(const std::vector<LogAmplitude>& a) {
  double m = kNegInf;
  for (const auto& x : a) {
    if (!x.is_zero()) m = std::max(m, x.log_mag);
  }
  return m;
}

// sum_n exp(2 ln|a_n|), low index to high.
ScaledReal sum_weights(const std::vector<LogAmplitude>& a) {
  const double peak = max_log_mag(a);
  if (std::isinf(peak)) return {};
  long double s = 0.0L;
  for (const auto& x : a) {
    if (!x.is_zero()) s += std::exp(2.0L * static_cast<long double>(x.log_mag - peak));
  }
  return {2.0 * peak, s};
}

// sum_n a_n, low index to high.
ScaledComplex sum_amplitudes(const std::vector<LogAmplitude>& a) {
  const double peak = max_log_mag(a);
  if (std::isinf(peak)) return {};
  std::complex<long double> s{0.0L, 0.0L};
  for (const auto& x : a) {
    if (x.is_zero()) continue;
    const long double mag = std::exp(static_cast<long double>(x.log_mag - peak));
    s += std::complex<long double>(mag * std::cos(static_cast<long double>(x.phase)),
                                   mag * std::sin(static_cast<long double>(x.phase)));
  }
  return {peak, s};
}

// sum_{n,m} a_n conj(a_m) exp(-gamma_t (n-m)^2): real and nonnegative, since
// the Gaussian kernel is positive semidefinite. Diagonal first, then pairs in
// ascending (n, m) order.
ScaledReal dephased_quadratic_form(const std::vector<LogAmplitude>& a, double gamma_t) {
  const double peak = max_log_mag(a);
  if (std::isinf(peak)) return {};
  const int count = static_cast<int>(a.size());

  std::vector<std::complex<long double>> u(static_cast<size_t>(count));
  for (int n = 0; n < count; ++n) {
    const auto& x = a[static_cast<size_t>(n)];
    if (x.is_zero()) continue;
    const long double mag = std::exp(static_cast<long double>(x.log_mag - peak));
    u[static_cast<size_t>(n)] =
        std::complex<long double>(mag * std::cos(static_cast<long double>(x.phase)),
                                  mag * std::sin(static_cast<long double>(x.phase)));
  }
  std::vector<long double> decay(static_cast<size_t>(count));
  for (int delta = 0; delta < count; ++delta) {
    decay[static_cast<size_t>(delta)] =
        std::exp(-static_cast<long double>(gamma_t) * delta * delta);
  }

  long double s = 0.0L;
  for (int n = 0; n < count; ++n) s += std::norm(u[static_cast<size_t>(n)]);
  for (int n = 0; n < count; ++n) {
    for (int m = n + 1; m < count; ++m) {
      const long double k = decay[static_cast<size_t>(m - n)];
      if (k == 0.0L) break;
      s += 2.0L * k *
           (u[static_cast<size_t>(n)] * std::conj(u[static_cast<size_t>(m)])).real();
    }
  }
  if (s < 0.0L) s = 0.0L;  // roundoff guard; the form is PSD
  return {2.0 * peak, s};
}

// Per-outcome window machinery. For n_sum = N the Bob window has
// N' = N - q + 1 slots; slot n pairs target amplitude d_{N'-n} with the
// resource ladder term g_n = xi^n (1+(-1)^n e^{i phi}) / sqrt(n!(n+q)!).
struct OutcomeWindow {
  int n_prime = -1;                    // N - q; negative when N < q
  std::vector<LogAmplitude> bob;       // d_{N'-n} g_n        (conditional state)
  std::vector<LogAmplitude> weighted;  // |d_{N'-n}|^2 g_n    (fidelity sums)
};

std::vector<LogAmplitude> ladder_terms(const PairCatParams& p, int up_to) {
  std::vector<LogAmplitude> g(static_cast<size_t>(up_to) + 1);
  for (int n = 0; n <= up_to; ++n) g[static_cast<size_t>(n)] = pair_cat_amplitude(p.xi, p.q, p.phi, n);
  return g;
}

std::vector<LogAmplitude> target_log_amps(const TargetState& t) {
  std::vector<LogAmplitude> ld(t.d.size());
  for (size_t k = 0; k < t.d.size(); ++k) ld[k] = LogAmplitude::from_complex(t.d[k]);
  return ld;
}

OutcomeWindow make_window(const std::vector<LogAmplitude>& g,
                          const std::vector<LogAmplitude>& ld, int q, int n_sum) {
  OutcomeWindow w;
  w.n_prime = n_sum - q;
  if (w.n_prime < 0) return w;
  const int k_max = static_cast<int>(ld.size()) - 1;
  w.bob.resize(static_cast<size_t>(w.n_prime) + 1);
  w.weighted.resize(static_cast<size_t>(w.n_prime) + 1);
  for (int n = 0; n <= w.n_prime; ++n) {
    const int k = w.n_prime - n;
    if (k > k_max) continue;  // outside the target window: exact zero
    const LogAmplitude& dk = ld[static_cast<size_t>(k)];
    const LogAmplitude& gn = g[static_cast<size_t>(n)];
    if (dk.is_zero() || gn.is_zero()) continue;
    w.bob[static_cast<size_t>(n)] = dk * gn;
    w.weighted[static_cast<size_t>(n)] =
        LogAmplitude::from_polar(2.0 * dk.log_mag + gn.log_mag, gn.phase);
  }
  return w;
}

// ln(N_phi^2 N_q^2).
double log_prefactor(const PairCatParams& p) {
  return 2.0 * log_normalization_nq(p.xi, p.q) + 2.0 * std::log(normalization_nphi(p));
}

double checked_average(const PairCatParams& params, const TargetState& target,
                       double gamma_t, bool damped) {
  params.validate();
  target.validate();
  const int window_top = params.n_max + target.k_max();
  const auto g = ladder_terms(params, window_top);
  const auto ld = target_log_amps(target);
  const double pref = log_prefactor(params);

  long double total_probability = 0.0L;
  long double average = 0.0L;
  for (int n_prime = 0; n_prime <= window_top; ++n_prime) {
    const OutcomeWindow w = make_window(g, ld, params.q, n_prime + params.q);
    const ScaledReal norm_sq = sum_weights(w.bob);
    if (norm_sq.is_zero()) continue;
    total_probability += std::exp(static_cast<long double>(pref + norm_sq.log()));
    // P(N) F(N) = N_phi^2 N_q^2 * (numerator of the conditional fidelity).
    if (damped) {
      const ScaledReal quad = dephased_quadratic_form(w.weighted, gamma_t);
      if (!quad.is_zero()) average += std::exp(static_cast<long double>(pref + quad.log()));
    } else {
      const ScaledComplex num = sum_amplitudes(w.weighted);
      if (!num.is_zero()) {
        average += std::exp(static_cast<long double>(pref + 2.0 * num.log_abs()));
      }
    }
  }

  const double tail = std::abs(1.0 - static_cast<double>(total_probability));
  if (tail > 1e-10) {
    std::ostringstream msg;
    msg << "average_fidelity: discarded outcome probability " << tail << " exceeds 1e-10";
    throw TruncationError(msg.str());
  }
  return static_cast<double>(average);
}

// Coherent-target closed forms share this kernel: slot amplitudes
// A_n(N') = |alpha|^{2(N'-n)} g_n / (N'-n)!, overall weight e^{-2|alpha|^2}.
double coherent_closed_form(const PairCatParams& params, std::complex<double> alpha,
                            double gamma_t, bool damped, int k_max) {
  params.validate();
  if (k_max < 0) throw std::invalid_argument("k_max must be nonnegative");
  const double r = std::abs(alpha);
  if (r == 0.0) {
    return damped ? average_fidelity_damped(params, number_target(0, 0), gamma_t)
                  : average_fidelity(params, number_target(0, 0));
  }
  const int window_top = params.n_max + k_max;
  const auto g = ladder_terms(params, window_top);
  const double pref = log_prefactor(params) - 2.0 * r * r;
  const double log_r2 = 2.0 * std::log(r);

  long double average = 0.0L;
  std::vector<LogAmplitude> slot(static_cast<size_t>(window_top) + 1);
  for (int n_prime = 0; n_prime <= window_top; ++n_prime) {
    slot.assign(static_cast<size_t>(n_prime) + 1, LogAmplitude::zero());
    for (int n = 0; n <= n_prime; ++n) {
      const LogAmplitude& gn = g[static_cast<size_t>(n)];
      if (gn.is_zero()) continue;
      slot[static_cast<size_t>(n)] = LogAmplitude::from_polar(
          gn.log_mag + (n_prime - n) * log_r2 - log_factorial(n_prime - n), gn.phase);
    }
    if (damped) {
      const ScaledReal quad = dephased_quadratic_form(slot, gamma_t);
      if (!quad.is_zero()) average += std::exp(static_cast<long double>(pref + quad.log()));
    } else {
      const ScaledComplex inner = sum_amplitudes(slot);
      if (!inner.is_zero()) {
        average += std::exp(static_cast<long double>(pref + 2.0 * inner.log_abs()));
      }
    }
  }
  return static_cast<double>(average);
}

}  // namespace

void TargetState::validate() const {
  if (d.empty()) throw std::invalid_argument("TargetState: empty amplitude vector");
  long double norm = 0.0L;
  for (const auto& c : d) norm += static_cast<long double>(std::norm(c));
  if (std::abs(static_cast<double>(norm) - 1.0) > 1e-10) {
    throw std::invalid_argument("TargetState: amplitudes must be unit norm");
  }
}

TargetState coherent_target(std::complex<double> alpha, int k_max) {
  if (k_max < 0) throw std::invalid_argument("coherent_target: k_max must be nonnegative");
  TargetState t;
  t.d.assign(static_cast<size_t>(k_max) + 1, {0.0, 0.0});
  const double r = std::abs(alpha);
  if (r == 0.0) {
    t.d[0] = 1.0;
    return t;
  }

  const double log_r = std::log(r);
  const double arg = std::arg(alpha);
  const double log_weight0 = -r * r;  // ln of the Poisson weight e^{-r^2} r^{2k}/k! at k=0
  long double kept = 0.0L;
  for (int k = 0; k <= k_max; ++k) {
    const double lm = 0.5 * log_weight0 + k * log_r - 0.5 * log_factorial(k);
    t.d[static_cast<size_t>(k)] = LogAmplitude::from_polar(lm, k * arg).to_complex();
    kept += std::exp(2.0L * static_cast<long double>(lm));
  }
  long double tail = 0.0L;
  const int tail_end = k_max + 400 + static_cast<int>(4.0 * r);
  for (int k = k_max + 1; k <= tail_end; ++k) {
    tail += std::exp(static_cast<long double>(log_weight0 + 2.0 * k * log_r - log_factorial(k)));
  }
  if (static_cast<double>(tail) > 1e-12) {
    std::ostringstream msg;
    msg << "coherent_target: discarded tail " << static_cast<double>(tail)
        << " exceeds 1e-12 at k_max=" << k_max;
    throw TruncationError(msg.str());
  }
  const double scale = static_cast<double>(1.0L / std::sqrt(kept));
  for (auto& c : t.d) c *= scale;
  return t;
}

TargetState number_target(int k0, int k_max) {
  if (k0 < 0 || k_max < k0) {
    throw std::invalid_argument("number_target: need 0 <= k0 <= k_max");
  }
  TargetState t;
  t.d.assign(static_cast<size_t>(k_max) + 1, {0.0, 0.0});
  t.d[static_cast<size_t>(k0)] = 1.0;
  return t;
}

std::vector<std::complex<double>> phase_eigenstate(int n_sum, int r, double vartheta) {
  if (n_sum < 0) throw std::invalid_argument("phase_eigenstate: n_sum must be nonnegative");
  if (r < 0 || r > n_sum) throw std::invalid_argument("phase_eigenstate: need 0 <= r <= n_sum");
  const double theta = vartheta + 2.0 * std::numbers::pi * r / (n_sum + 1);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n_sum) + 1.0);
  std::vector<std::complex<double>> coeffs(static_cast<size_t>(n_sum) + 1);
  for (int n = 0; n <= n_sum; ++n) {
    coeffs[static_cast<size_t>(n)] = std::polar(amp, n * theta);
  }
  return coeffs;
}

double outcome_probability(const PairCatParams& params, const TargetState& target,
                           int n_sum) {
  params.validate();
  target.validate();
  if (n_sum < 0) throw std::invalid_argument("outcome_probability: n_sum must be nonnegative");
  if (n_sum < params.q) return 0.0;
  const auto g = ladder_terms(params, n_sum - params.q);
  const auto ld = target_log_amps(target);
  const OutcomeWindow w = make_window(g, ld, params.q, n_sum);
  const ScaledReal norm_sq = sum_weights(w.bob);
  if (norm_sq.is_zero()) return 0.0;
  return std::exp(log_prefactor(params) + norm_sq.log());
}

std::vector<std::complex<double>> conditional_bob_state(const PairCatParams& params,
                                                        const TargetState& target,
                                                        const MeasurementOutcome& outcome) {
  params.validate();
  target.validate();
  if (outcome.n_sum < params.q) {
    throw ZeroProbabilityError("conditional_bob_state: n_sum below q has probability zero");
  }
  const int n_prime = outcome.n_sum - params.q;
  const auto g = ladder_terms(params, n_prime);
  const auto ld = target_log_amps(target);
  const OutcomeWindow w = make_window(g, ld, params.q, outcome.n_sum);

  const double peak = max_log_mag(w.bob);
  if (std::isinf(peak)) {
    throw ZeroProbabilityError("conditional_bob_state: outcome has probability zero");
  }
  std::vector<std::complex<double>> state(static_cast<size_t>(n_prime) + 1);
  long double norm = 0.0L;
  for (int n = 0; n <= n_prime; ++n) {
    const LogAmplitude& a = w.bob[static_cast<size_t>(n)];
    if (a.is_zero()) continue;
    const std::complex<double> z = std::polar(std::exp(a.log_mag - peak), a.phase);
    state[static_cast<size_t>(n_prime - n)] = z;  // amplified onto |N - q - n>
    norm += static_cast<long double>(std::norm(z));
  }
  const double scale = static_cast<double>(1.0L / std::sqrt(norm));
  for (auto& c : state) c *= scale;
  return state;
}

double conditional_fidelity(const PairCatParams& params, const TargetState& target,
                            int n_sum) {
  params.validate();
  target.validate();
  if (n_sum < params.q) {
    throw ZeroProbabilityError("conditional_fidelity: n_sum below q has probability zero");
  }
  const auto g = ladder_terms(params, n_sum - params.q);
  const auto ld = target_log_amps(target);
  const OutcomeWindow w = make_window(g, ld, params.q, n_sum);
  const ScaledReal norm_sq = sum_weights(w.bob);
  if (norm_sq.is_zero()) {
    throw ZeroProbabilityError("conditional_fidelity: outcome has probability zero");
  }
  const ScaledComplex num = sum_amplitudes(w.weighted);
  if (num.is_zero()) return 0.0;
  return std::exp(2.0 * num.log_abs() - norm_sq.log());
}

double average_fidelity(const PairCatParams& params, const TargetState& target) {
  return checked_average(params, target, 0.0, /*damped=*/false);
}

HermitianMatrix conditional_bob_state_damped(const PairCatParams& params,
                                             const TargetState& target, double gamma_t,
                                             int n_sum) {
  params.validate();
  target.validate();
  if (gamma_t < 0.0) {
    throw std::invalid_argument("conditional_bob_state_damped: gamma_t must be nonnegative");
  }
  if (n_sum < params.q) {
    throw ZeroProbabilityError("conditional_bob_state_damped: n_sum below q has probability zero");
  }
  const int n_prime = n_sum - params.q;
  const auto g = ladder_terms(params, n_prime);
  const auto ld = target_log_amps(target);
  const OutcomeWindow w = make_window(g, ld, params.q, n_sum);

  const double peak = max_log_mag(w.bob);
  if (std::isinf(peak)) {
    throw ZeroProbabilityError("conditional_bob_state_damped: outcome has probability zero");
  }
  const int dim = n_prime + 1;
  std::vector<std::complex<double>> u(static_cast<size_t>(dim));
  long double trace = 0.0L;
  for (int n = 0; n < dim; ++n) {
    const LogAmplitude& a = w.bob[static_cast<size_t>(n)];
    if (a.is_zero()) continue;
    u[static_cast<size_t>(n)] = std::polar(std::exp(a.log_mag - peak), a.phase);
    trace += static_cast<long double>(std::norm(u[static_cast<size_t>(n)]));
  }
  const double inv_trace = static_cast<double>(1.0L / trace);

  HermitianMatrix rho(dim);
  for (int n = 0; n < dim; ++n) {
    for (int m = n; m < dim; ++m) {
      const double delta = static_cast<double>(n - m);
      const double k = std::exp(-gamma_t * delta * delta);
      // Bob occupations run downward: slot n sits on |N - q - n>.
      rho.set_hermitian_pair(n_prime - n, n_prime - m,
                             u[static_cast<size_t>(n)] * std::conj(u[static_cast<size_t>(m)]) *
                                 k * inv_trace);
    }
  }
  return rho;
}

double conditional_fidelity_damped(const PairCatParams& params, const TargetState& target,
                                   double gamma_t, int n_sum) {
  params.validate();
  target.validate();
  if (gamma_t < 0.0) {
    throw std::invalid_argument("conditional_fidelity_damped: gamma_t must be nonnegative");
  }
  if (n_sum < params.q) {
    throw ZeroProbabilityError("conditional_fidelity_damped: n_sum below q has probability zero");
  }
  const auto g = ladder_terms(params, n_sum - params.q);
  const auto ld = target_log_amps(target);
  const OutcomeWindow w = make_window(g, ld, params.q, n_sum);
  const ScaledReal norm_sq = sum_weights(w.bob);
  if (norm_sq.is_zero()) {
    throw ZeroProbabilityError("conditional_fidelity_damped: outcome has probability zero");
  }
  const ScaledReal quad = dephased_quadratic_form(w.weighted, gamma_t);
  if (quad.is_zero()) return 0.0;
  return std::exp(quad.log() - norm_sq.log());
}

double average_fidelity_damped(const PairCatParams& params, const TargetState& target,
                               double gamma_t) {
  if (gamma_t < 0.0) {
    throw std::invalid_argument("average_fidelity_damped: gamma_t must be nonnegative");
  }
  return checked_average(params, target, gamma_t, /*damped=*/true);
}

double average_fidelity_coherent(const PairCatParams& params, std::complex<double> alpha,
                                 int k_max) {
  return coherent_closed_form(params, alpha, 0.0, /*damped=*/false, k_max);
}

double average_fidelity_damped_coherent(const PairCatParams& params,
                                        std::complex<double> alpha, double gamma_t,
                                        int k_max) {
  if (gamma_t < 0.0) {
    throw std::invalid_argument("average_fidelity_damped_coherent: gamma_t must be nonnegative");
  }
  return coherent_closed_form(params, alpha, gamma_t, /*damped=*/true, k_max);
}

}  // namespace paircat
