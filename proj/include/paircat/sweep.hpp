#pragma once

#include <string>
#include <vector>

namespace paircat {

enum class SweepMode { entanglement, witness, fidelity };

// Inclusive linear grid: steps points from start to stop. steps == 1 yields
// just {start}. Parsed from "start:stop:steps".
struct GridRange {
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;

  static GridRange single(double v) { return {v, v, 1}; }
  static GridRange parse(const std::string& text);  // throws std::invalid_argument
  std::vector<double> values() const;
};

struct SweepConfig {
  SweepMode mode = SweepMode::entanglement;
  GridRange xi = GridRange::single(2.0);
  std::vector<int> q = {0};
  GridRange phi = GridRange::single(1.5707963267948966);  // pi/2
  GridRange damping = GridRange::single(0.0);             // d or gamma_t grid
  std::vector<double> alpha = {1.0};                      // fidelity mode only
  int n_max = 100;
  int k_max = 64;
  int threads = 1;
};

// Runs the configured sweep and returns the full CSV text (LF line endings,
// trailing newline). Rows follow lexicographic grid order with xi outermost,
// then q, phi, and the damping grid (fidelity adds alpha between phi and
// gamma_t). Values print as 12-significant-digit scientific; degenerate
// parameter points yield literal NA fields. Output is byte-identical for any
// thread count.
std::string run_sweep(const SweepConfig& config);

}  // namespace paircat
