#include "paircat/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "paircat/channel.hpp"
#include "paircat/entanglement.hpp"
#include "paircat/errors.hpp"
#include "paircat/states.hpp"
#include "paircat/teleport.hpp"

namespace paircat {

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.11e", v);  // 12 significant digits
  return buf;
}

// Worker pool over row indices; each row is computed independently and stored
// by index, so the assembled text does not depend on the thread count.
void for_each_index(size_t count, int threads, const std::function<void(size_t)>& fn) {
  const int workers = std::max(1, threads);
  if (workers == 1 || count < 2) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

struct GridPoint {
  double xi;
  int q;
  double phi;
  double damping;
  double alpha;  // fidelity mode only
};

std::vector<GridPoint> build_grid(const SweepConfig& cfg) {
  const auto xis = cfg.xi.values();
  const auto phis = cfg.phi.values();
  const auto damps = cfg.damping.values();
  const bool with_alpha = cfg.mode == SweepMode::fidelity;
  const std::vector<double> alphas = with_alpha ? cfg.alpha : std::vector<double>{0.0};

  std::vector<GridPoint> grid;
  grid.reserve(xis.size() * cfg.q.size() * phis.size() * damps.size() * alphas.size());
  for (double xi : xis)
    for (int q : cfg.q)
      for (double phi : phis)
        for (double alpha : alphas)
          for (double damping : damps) grid.push_back({xi, q, phi, damping, alpha});
  return grid;
}

std::string entanglement_row(const SweepConfig& cfg, const GridPoint& p) {
  std::string row = format_value(p.xi) + "," + std::to_string(p.q) + "," +
                    format_value(p.phi) + "," + format_value(p.damping) + ",";
  try {
    const PairCatParams params{{p.xi, 0.0}, p.q, p.phi, cfg.n_max};
    const SchmidtVector v = pair_cat_coeffs(params);
    const CorrelatedMatrix m = evolve(v, DampingSchedule::from_degree(p.damping));
    row += format_value(relative_entropy_of_entanglement(m));
  } catch (const DegenerateStateError&) {
    row += "NA";
  }
  return row;
}

std::string witness_row(const SweepConfig& cfg, const GridPoint& p) {
  std::string row = format_value(p.xi) + "," + std::to_string(p.q) + "," +
                    format_value(p.phi) + "," + format_value(p.damping) + ",";
  try {
    const PairCatParams params{{p.xi, 0.0}, p.q, p.phi, cfg.n_max};
    const SchmidtVector v = pair_cat_coeffs(params);
    const auto [i, j] = choose_witness_pair(v);
    const WitnessReport rep =
        reduction_witness(v, DampingSchedule::from_degree(p.damping), i, j);
    row += std::to_string(rep.i) + "," + std::to_string(rep.j);
    for (int k = 0; k < 4; ++k) {
      row += "," + std::to_string(rep.sign[static_cast<size_t>(k)]) + "," +
             format_value(rep.log_abs[static_cast<size_t>(k)]);
    }
    row += "," + format_value(rep.omega[0] + rep.omega[1]);
    row += "," + format_value(rep.omega[2] + rep.omega[3]);
    row += "," + std::to_string(rep.min_index + 1);
    row += "," + format_value(rep.min_omega);
    row += rep.distillable ? ",true" : ",false";
  } catch (const DegenerateStateError&) {
    row += "NA,NA,NA,NA,NA,NA,NA,NA,NA,NA,NA,NA,NA,NA";
  } catch (const ZeroCoefficientError&) {
    row += "NA,NA,NA,NA,NA,NA,NA,NA,NA,NA,NA,NA,NA,NA";
  }
  return row;
}

std::string fidelity_row(const SweepConfig& cfg, const GridPoint& p) {
  std::string row = format_value(p.xi) + "," + std::to_string(p.q) + "," +
                    format_value(p.phi) + "," + format_value(p.alpha) + "," +
                    format_value(p.damping) + ",";
  try {
    const PairCatParams params{{p.xi, 0.0}, p.q, p.phi, cfg.n_max};
    const TargetState target = coherent_target(p.alpha, cfg.k_max);
    const double fbar = (p.damping == 0.0)
                            ? average_fidelity(params, target)
                            : average_fidelity_damped(params, target, p.damping);
    row += format_value(fbar);
  } catch (const DegenerateStateError&) {
    row += "NA";
  }
  return row;
}

}  // namespace

GridRange GridRange::parse(const std::string& text) {
  GridRange r;
  char trailing = '\0';
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &r.start, &r.stop, &r.steps, &trailing) != 3) {
    throw std::invalid_argument("range '" + text + "' is not of the form start:stop:steps");
  }
  if (r.steps < 1) {
    throw std::invalid_argument("range '" + text + "' must have at least one step");
  }
  if (r.steps > 1 && !(r.start < r.stop)) {
    throw std::invalid_argument("range '" + text + "' must have start < stop");
  }
  return r;
}

std::vector<double> GridRange::values() const {
  if (steps < 1) throw std::invalid_argument("GridRange: steps must be at least 1");
  if (steps == 1) return {start};
  std::vector<double> v(static_cast<size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    v[static_cast<size_t>(i)] = start + (stop - start) * i / (steps - 1);
  }
  return v;
}

std::string run_sweep(const SweepConfig& config) {
  if (config.n_max < 1) throw std::invalid_argument("run_sweep: n_max must be at least 1");
  if (config.k_max < 0) throw std::invalid_argument("run_sweep: k_max must be nonnegative");
  if (config.q.empty()) throw std::invalid_argument("run_sweep: q list must not be empty");
  if (config.mode == SweepMode::fidelity && config.alpha.empty()) {
    throw std::invalid_argument("run_sweep: alpha list must not be empty");
  }

  const auto grid = build_grid(config);
  std::vector<std::string> rows(grid.size());
  std::string header;
  std::function<std::string(const GridPoint&)> make_row;
  switch (config.mode) {
    case SweepMode::entanglement:
      header = "xi,q,phi,d,E";
      make_row = [&](const GridPoint& p) { return entanglement_row(config, p); };
      break;
    case SweepMode::witness:
      header =
          "xi,q,phi,d,i,j,omega1_sign,omega1_log_abs,omega2_sign,omega2_log_abs,"
          "omega3_sign,omega3_log_abs,omega4_sign,omega4_log_abs,omega12_sum,"
          "omega34_sum,min_index,min_omega,distillable";
      make_row = [&](const GridPoint& p) { return witness_row(config, p); };
      break;
    case SweepMode::fidelity:
      header = "xi,q,phi,alpha,gamma_t,F_bar";
      make_row = [&](const GridPoint& p) { return fidelity_row(config, p); };
      break;
  }

  for_each_index(grid.size(), config.threads,
                 [&](size_t i) { rows[i] = make_row(grid[i]); });

  std::ostringstream out;
  out << header << "\n";
  for (const auto& row : rows) out << row << "\n";
  if (config.mode == SweepMode::witness) {
    size_t distillable_count = 0;
    size_t degenerate_count = 0;
    for (const auto& row : rows) {
      if (row.find("NA") != std::string::npos) {
        ++degenerate_count;
      } else if (row.size() >= 4 && row.compare(row.size() - 4, 4, "true") == 0) {
        ++distillable_count;
      }
    }
    const bool everywhere =
        degenerate_count == 0 && distillable_count == rows.size() && !rows.empty();
    out << "# distillable_everywhere=" << (everywhere ? "true" : "false")
        << " points=" << rows.size() << " degenerate=" << degenerate_count << "\n";
  }
  return out.str();
}

}  // namespace paircat
