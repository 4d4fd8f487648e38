// Acceptance gate: every shipped property of the library gets one line of
// PASS/FAIL output, and the process exit code is the number of failures.
// Tolerances are pinned here, next to the checks that use them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "paircat/channel.hpp"
#include "paircat/entanglement.hpp"
#include "paircat/errors.hpp"
#include "paircat/states.hpp"
#include "paircat/sweep.hpp"
#include "paircat/teleport.hpp"

using namespace paircat;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Gate {
  int failures = 0;
  int next_id = 1;

  // Runs one criterion; `body` appends failure details to the stream and the
  // criterion passes when it appends nothing.
  void criterion(const std::string& label, const std::function<void(std::ostringstream&)>& body) {
    std::ostringstream detail;
    try {
      body(detail);
    } catch (const std::exception& e) {
      detail << "unexpected exception: " << e.what();
    }
    const std::string text = detail.str();
    if (text.empty()) {
      std::cout << "[PASS] criterion " << next_id << ": " << label << "\n";
    } else {
      std::cout << "[FAIL] criterion " << next_id << ": " << label << " -- " << text << "\n";
      ++failures;
    }
    ++next_id;
  }
};

double max_entry_diff(const CorrelatedMatrix& a, const CorrelatedMatrix& b) {
  double worst = 0.0;
  for (int n = 0; n < a.dim(); ++n)
    for (int m = 0; m < a.dim(); ++m) worst = std::max(worst, std::abs(a.c(n, m) - b.c(n, m)));
  return worst;
}

double phase_aligned_distance(const std::vector<std::complex<double>>& a,
                              const std::vector<std::complex<double>>& b) {
  size_t ref = 0;
  for (size_t m = 0; m < a.size(); ++m)
    if (std::abs(a[m]) > std::abs(a[ref])) ref = m;
  if (std::abs(a[ref]) == 0.0) return 0.0;
  std::complex<double> rot = b[ref] / a[ref];
  rot /= std::abs(rot);
  double worst = 0.0;
  for (size_t m = 0; m < a.size(); ++m) worst = std::max(worst, std::abs(a[m] * rot - b[m]));
  return worst;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::complex<long double>> widen(const TargetState& t) {
  std::vector<std::complex<long double>> out(t.d.size());
  for (size_t k = 0; k < t.d.size(); ++k) out[k] = {t.d[k].real(), t.d[k].imag()};
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli_path;
  std::string work_dir = ".";
  for (int i = 1; i + 1 < argc; i += 2) {
    std::string flag = argv[i];
    if (flag == "--cli") cli_path = argv[i + 1];
    if (flag == "--work-dir") work_dir = argv[i + 1];
  }

  Gate gate;

  gate.criterion("undamped relative entropy equals the entanglement entropy", [](std::ostringstream& out) {
    std::mt19937 rng(20260816u);
    std::uniform_real_distribution<double> uxi(0.5, 5.0);
    std::uniform_real_distribution<double> uphi(0.0, 2.0 * kPi);
    const int qs[3] = {0, 1, 5};
    for (int trial = 0; trial < 20; ++trial) {
      double r = uxi(rng);
      double phi = uphi(rng);
      int q = qs[trial % 3];
      PairCatParams params{{r, 0.0}, q, phi, 100};
      auto v = pair_cat_coeffs(params);
      double entropy = schmidt_entropy(v);
      double ree = relative_entropy_of_entanglement(evolve(v, DampingSchedule::from_degree(0.0)));
      if (std::abs(entropy - ree) > 1e-9)
        out << "xi=" << r << " q=" << q << " phi=" << phi << " |dE|=" << std::abs(entropy - ree)
            << " exceeds 1e-9; ";
    }
  });

  gate.criterion("closed-form damping matches direct integration", [](std::ostringstream& out) {
    auto v = pair_cat_coeffs({std::polar(0.7, 0.4), 1, 0.7, 8});
    std::vector<DampingSchedule> schedules = {
        DampingSchedule::from_degree(0.1), DampingSchedule::from_degree(0.5),
        DampingSchedule::from_degree(1.0), DampingSchedule{0.7, 1.3, 0.5}};
    for (const auto& sched : schedules) {
      double diff = max_entry_diff(evolve(v, sched), liouvillian_oracle(v, sched, 600));
      if (diff > 1e-6)
        out << "schedule (" << sched.gamma1 << "," << sched.gamma2 << "," << sched.t
            << ") diff=" << diff << " exceeds 1e-6; ";
    }
  });

  gate.criterion("relative entropy matches the explicit two-mode computation", [](std::ostringstream& out) {
    struct Point {
      double r, arg;
      int q;
      double phi, d;
      int n_max;
    };
    const std::vector<Point> points = {
        {1.0, 0.0, 0, 0.7, 0.3, 12}, {1.3, 0.9, 1, 2.1, 0.0, 12}, {0.9, 0.0, 3, kPi, 0.8, 12},
        {1.6, 0.0, 0, kPi / 2.0, 1.2, 13}, {2.0, 0.0, 1, 4.0, 0.5, 14}, {1.2, 2.0, 3, 1.0, 0.05, 12},
        {0.8, 0.0, 0, kPi, 1.5, 12}, {1.8, 0.0, 1, 5.5, 0.9, 14}, {1.5, 0.0, 3, 0.0, 0.25, 13},
        {1.1, 0.0, 0, 3.0, 0.6, 12}, {2.0, 0.0, 0, kPi, 0.5, 20}};
    for (const auto& p : points) {
      std::complex<double> xi = std::polar(p.r, p.arg);
      auto v = pair_cat_coeffs({xi, p.q, p.phi, p.n_max});
      double got = relative_entropy_of_entanglement(evolve(v, DampingSchedule::from_degree(p.d)));
      std::complex<long double> xil(p.r * std::cos((long double)p.arg),
                                    p.r * std::sin((long double)p.arg));
      double want = oracle::bruteforce_relative_entropy(xil, p.q, p.phi, p.d, p.n_max);
      if (std::abs(got - want) > 1e-8)
        out << "point (|xi|=" << p.r << ",q=" << p.q << ",phi=" << p.phi << ",d=" << p.d
            << ",n_max=" << p.n_max << ") |dE|=" << std::abs(got - want) << " exceeds 1e-8; ";
    }
  });

  gate.criterion("relative entropy is monotone in amplitude and damping", [](std::ostringstream& out) {
    double prev = -1.0;
    for (double r : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0}) {
      auto v = pair_cat_coeffs({{r, 0.0}, 0, kPi, 100});
      double e = relative_entropy_of_entanglement(evolve(v, DampingSchedule::from_degree(0.0)));
      if (e < prev - 1e-10) out << "E(|xi|=" << r << ")=" << e << " dropped below " << prev << "; ";
      prev = e;
      double prev_d = 1e300;
      for (double d = 0.0; d <= 2.0 + 1e-12; d += 0.25) {
        double ed = relative_entropy_of_entanglement(evolve(v, DampingSchedule::from_degree(d)));
        if (ed > prev_d + 1e-10)
          out << "E(|xi|=" << r << ", d=" << d << ")=" << ed << " rose above " << prev_d << "; ";
        prev_d = ed;
      }
    }
  });

  gate.criterion("witness identities hold and flag distillability everywhere", [](std::ostringstream& out) {
    for (double r : {1.0, 2.0, 30.0}) {
      for (double phi : {0.0, kPi / 2.0, kPi}) {
        for (int q : {0, 2}) {
          auto v = pair_cat_coeffs({{r, 0.0}, q, phi, 100});
          auto [i, j] = choose_witness_pair(v);
          for (double d : {0.0, 1.0, 5.0, 10.0}) {
            WitnessReport rep = reduction_witness(v, DampingSchedule::from_degree(d), i, j);
            std::complex<double> prod = v.coeffs[static_cast<size_t>(i)] *
                                        std::conj(v.coeffs[static_cast<size_t>(j)]);
            double decay = std::exp(-d * (i - j) * (i - j));
            double scale = std::max(decay * std::abs(prod), 1e-300);
            if (std::abs(rep.omega[0] + rep.omega[1]) > 1e-12 * scale ||
                std::abs(rep.omega[2] + rep.omega[3]) > 1e-12 * scale)
              out << "pair sums broke at xi=" << r << " phi=" << phi << " d=" << d << "; ";
            std::complex<double> recon(rep.omega[0], rep.omega[3]);
            if (std::abs(recon + decay * prod) > 1e-12 * scale && d < 500.0)
              out << "Omega reconstruction broke at xi=" << r << " phi=" << phi << " d=" << d
                  << "; ";
            if (!rep.distillable)
              out << "not distillable at xi=" << r << " phi=" << phi << " q=" << q << " d=" << d
                  << "; ";
          }
        }
      }
    }
  });

  gate.criterion("number states teleport with unit fidelity", [](std::ostringstream& out) {
    for (int k0 : {0, 1, 3}) {
      for (int q : {0, 2}) {
        for (double phi : {kPi / 2.0, 1.3}) {
          PairCatParams params{{2.0, 0.0}, q, phi, 80};
          TargetState target = number_target(k0, 8);
          for (double gt : {0.0, 0.5}) {
            for (int n_sum = q; n_sum <= 40; ++n_sum) {
              if (outcome_probability(params, target, n_sum) <= 0.0) continue;
              double f = gt == 0.0 ? conditional_fidelity(params, target, n_sum)
                                   : conditional_fidelity_damped(params, target, gt, n_sum);
              if (std::abs(f - 1.0) > 1e-9)
                out << "k0=" << k0 << " q=" << q << " N=" << n_sum << " gt=" << gt
                    << " |F-1|=" << std::abs(f - 1.0) << " exceeds 1e-9; ";
            }
          }
        }
      }
    }
  });

  gate.criterion("outcome probabilities are a distribution", [](std::ostringstream& out) {
    for (double a : {0.1, 0.5, 1.0}) {
      for (double r : {2.0, 30.0}) {
        for (int q : {0, 2}) {
          PairCatParams params{{r, 0.0}, q, kPi / 2.0, 100};
          TargetState target = coherent_target({a, 0.0}, 40);
          double total = 0.0;
          for (int n_sum = q; n_sum <= q + params.n_max + target.k_max(); ++n_sum)
            total += outcome_probability(params, target, n_sum);
          if (std::abs(total - 1.0) > 1e-9)
            out << "alpha=" << a << " xi=" << r << " q=" << q << " |sum-1|="
                << std::abs(total - 1.0) << " exceeds 1e-9; ";
        }
      }
    }
  });

  gate.criterion("closed coherent forms match the generic outcome sums", [](std::ostringstream& out) {
    for (double r : {5.0, 10.0, 15.0, 20.0, 25.0, 30.0}) {
      for (double a : {0.1, 0.5, 1.0}) {
        PairCatParams params{{r, 0.0}, 0, kPi / 2.0, 100};
        TargetState target = coherent_target({a, 0.0}, 40);
        double closed = average_fidelity_coherent(params, {a, 0.0}, 40);
        double generic = average_fidelity(params, target);
        if (std::abs(closed - generic) > 1e-9)
          out << "pure xi=" << r << " alpha=" << a << " diff=" << std::abs(closed - generic)
              << " exceeds 1e-9; ";
        double closed0 = average_fidelity_damped_coherent(params, {a, 0.0}, 0.0, 40);
        if (std::abs(closed0 - closed) > 1e-12)
          out << "gt=0 mismatch xi=" << r << " alpha=" << a << " diff="
              << std::abs(closed0 - closed) << " exceeds 1e-12; ";
      }
    }
    for (int q : {1, 2}) {
      PairCatParams params{{10.0, 0.0}, q, kPi / 2.0, 100};
      TargetState target = coherent_target({1.0, 0.0}, 40);
      double closed = average_fidelity_coherent(params, {1.0, 0.0}, 40);
      double generic = average_fidelity(params, target);
      if (std::abs(closed - generic) > 1e-9)
        out << "pure q=" << q << " diff=" << std::abs(closed - generic) << " exceeds 1e-9; ";
    }
    PairCatParams params{{30.0, 0.0}, 0, kPi / 2.0, 100};
    for (double a : {0.1, 0.5, 1.0}) {
      TargetState target = coherent_target({a, 0.0}, 40);
      for (double gt = 0.25; gt <= 2.0 + 1e-12; gt += 0.25) {
        double closed = average_fidelity_damped_coherent(params, {a, 0.0}, gt, 40);
        double generic = average_fidelity_damped(params, target, gt);
        if (std::abs(closed - generic) > 1e-9)
          out << "damped alpha=" << a << " gt=" << gt << " diff=" << std::abs(closed - generic)
              << " exceeds 1e-9; ";
      }
    }
  });

  gate.criterion("fidelity grows with resource amplitude and shrinks with target size",
                 [](std::ostringstream& out) {
    const double alphas[] = {0.1, 0.5, 1.0};
    double prev[] = {-1.0, -1.0, -1.0};
    for (double r : {5.0, 10.0, 15.0, 20.0, 25.0, 30.0}) {
      PairCatParams params{{r, 0.0}, 0, kPi / 2.0, 100};
      double f[3];
      for (int k = 0; k < 3; ++k) {
        f[k] = average_fidelity_coherent(params, {alphas[k], 0.0}, 40);
        if (f[k] < prev[k] - 1e-12)
          out << "F(xi=" << r << ", alpha=" << alphas[k] << ")=" << f[k] << " dropped below "
              << prev[k] << "; ";
        prev[k] = f[k];
      }
      if (!(f[0] > f[1] && f[1] > f[2]))
        out << "alpha ordering broke at xi=" << r << ": F(0.1)=" << f[0] << " F(0.5)=" << f[1]
            << " F(1)=" << f[2] << "; ";
    }
  });

  gate.criterion("damping never improves the averaged fidelity", [](std::ostringstream& out) {
    PairCatParams params{{30.0, 0.0}, 0, kPi / 2.0, 100};
    for (double a : {0.1, 0.5, 1.0}) {
      double prev = 2.0;
      for (double gt = 0.0; gt <= 2.0 + 1e-12; gt += 0.25) {
        double f = average_fidelity_damped_coherent(params, {a, 0.0}, gt, 40);
        if (f > prev + 1e-10)
          out << "F(alpha=" << a << ", gt=" << gt << ")=" << f << " rose above " << prev << "; ";
        prev = f;
      }
    }
  });

  gate.criterion("the measurement chain reproduces Bob's corrected state", [](std::ostringstream& out) {
    TargetState target = coherent_target({0.7, 0.0}, 12);
    auto wide = widen(target);
    std::complex<long double> xil(1.1L * std::cos(0.6L), 1.1L * std::sin(0.6L));
    for (int q : {0, 2}) {
      PairCatParams params{std::polar(1.1, 0.6), q, 1.2, 12};
      for (int step : {0, 3, 7}) {
        int n_sum = q + step;
        if (outcome_probability(params, target, n_sum) <= 0.0) continue;
        auto lib = conditional_bob_state(params, target, {n_sum, 0.0});
        auto ref0 = oracle::pipeline_bob_state(xil, q, 1.2L, wide, n_sum, 0.0L);
        auto ref1 = oracle::pipeline_bob_state(xil, q, 1.2L, wide, n_sum, 1.0L);
        auto ref2 = oracle::pipeline_bob_state(xil, q, 1.2L, wide, n_sum, 2.5L);
        if (phase_aligned_distance(ref0, lib) > 1e-10)
          out << "q=" << q << " N=" << n_sum << " chain distance "
              << phase_aligned_distance(ref0, lib) << " exceeds 1e-10; ";
        if (phase_aligned_distance(ref0, ref1) > 1e-12 || phase_aligned_distance(ref0, ref2) > 1e-12)
          out << "q=" << q << " N=" << n_sum << " theta dependence leaked; ";
      }
    }
  });

  gate.criterion("CLI output is byte-identical across thread counts", [&](std::ostringstream& out) {
    if (cli_path.empty()) {
      out << "no --cli path given";
      return;
    }
    struct Job {
      const char* name;
      std::string args;
    };
    const std::vector<Job> jobs = {
        {"entanglement",
         "entanglement --xi-range 0.5:2:4 --q 0 --q 1 --phi-range 0.4:2.8:3 --d-range 0:1:3 "
         "--n-max 40"},
        {"witness",
         "witness --xi-range 1:2:2 --q 0 --phi-range 0:3.141592653589793:2 --d-range 0:5:3 "
         "--n-max 60"},
        {"fidelity",
         "fidelity --xi-range 1:3:3 --alpha 0.5 --alpha 1 --gamma-t-range 0:1:3 --k-max 24 "
         "--n-max 60"}};
    for (const auto& job : jobs) {
      std::string f1 = work_dir + "/accept_" + job.name + "_t1.csv";
      std::string f4 = work_dir + "/accept_" + job.name + "_t4.csv";
      std::string c1 = "\"" + cli_path + "\" " + job.args + " --threads 1 --out \"" + f1 + "\"";
      std::string c4 = "\"" + cli_path + "\" " + job.args + " --threads 4 --out \"" + f4 + "\"";
      if (std::system(c1.c_str()) != 0 || std::system(c4.c_str()) != 0) {
        out << job.name << " run failed; ";
        continue;
      }
      std::string b1 = read_file(f1);
      std::string b4 = read_file(f4);
      if (b1.empty())
        out << job.name << " produced no output; ";
      else if (b1 != b4)
        out << job.name << " differs between 1 and 4 threads; ";
    }

    // The same run spelled as a config file (plus one overriding flag) must
    // reproduce the flag-only bytes.
    std::string ini_path = work_dir + "/accept_fidelity.ini";
    {
      std::ofstream ini(ini_path, std::ios::binary);
      ini << "[fidelity]\nxi-range = 9:9:1\nalpha = 0.5 1\ngamma-t-range = 0:1:3\n"
          << "k-max = 24\nn-max = 60\n";
    }
    std::string ff = work_dir + "/accept_fidelity_flags.csv";
    std::string fc = work_dir + "/accept_fidelity_config.csv";
    std::string cf = "\"" + cli_path +
                     "\" fidelity --xi-range 1:3:3 --alpha 0.5 --alpha 1 --gamma-t-range 0:1:3 "
                     "--k-max 24 --n-max 60 --out \"" + ff + "\"";
    std::string cc = "\"" + cli_path + "\" --config \"" + ini_path +
                     "\" fidelity --xi-range 1:3:3 --out \"" + fc + "\"";
    if (std::system(cf.c_str()) != 0 || std::system(cc.c_str()) != 0)
      out << "config-file run failed; ";
    else if (read_file(ff).empty() || read_file(ff) != read_file(fc))
      out << "config-file spelling differs from the flag spelling; ";
  });

  std::cout << (gate.failures == 0 ? "ACCEPTANCE: all criteria passed"
                                   : "ACCEPTANCE: failures detected")
            << " (" << (gate.next_id - 1 - gate.failures) << "/" << (gate.next_id - 1) << ")\n";
  return gate.failures;
}
