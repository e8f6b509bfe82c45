#pragma once

// The invariant suite behind `minhyp check`: every module's structural
// properties evaluated on a fixed sample of parameters.

#include <string>
#include <vector>

#include "minhyp/report.hpp"

namespace minhyp {

struct CheckResult {
  std::string module;
  std::string name;
  bool passed = false;
  double value = 0.0;      // the measured quantity (worst case over samples)
  double threshold = 0.0;  // what it was compared against
  std::string detail;
};

struct SuiteOptions {
  /// Added to f before the first-integral check; nonzero values must make
  /// that check fail.
  double perturb_f = 0.0;
  /// Mesh sizes for the spectral checks, coarsest first.
  std::vector<double> mesh{1e-2, 5e-3, 2.5e-3};
  /// Relative quadrature tolerance for catenoid construction.
  double quad_rel_tol = 1e-10;
};

std::vector<CheckResult> run_invariant_suite(const SuiteOptions& options = {});

/// Worst relative drift of sinh^{n-1}(f + perturb) (1 + f_t^2)^{-1/2} from
/// sinh^{n-1}(a) over ODE samples of [0, T(a)) up to the ODE switch height.
double first_integral_drift(int n, double a, double perturb = 0.0, int samples = 400);

report::Json suite_json(const std::vector<CheckResult>& results);

}  // namespace minhyp
