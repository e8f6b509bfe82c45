#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "minhyp/errors.hpp"

namespace minhyp {

/// Root of f in [lo, hi] given a sign change, to |hi - lo| <= xtol.
/// TOMS 748 keeps the bracket, so it degrades to bisection at worst.
template <typename F>
double find_root(F&& f, double lo, double hi, double xtol = 1e-12,
                 double flo = NAN, double fhi = NAN) {
  if (std::isnan(flo)) flo = f(lo);
  if (std::isnan(fhi)) fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw InternalError("find_root: no sign change on [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
  std::uintmax_t max_iter = 300;
  auto tol = [xtol](double x, double y) { return std::fabs(x - y) <= xtol; };
  const auto bracket =
      boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, max_iter);
  return 0.5 * (bracket.first + bracket.second);
}

/// Indices i with values[i] and values[i+1] of strictly opposite sign
/// (exact zeros count as a change on the side where they occur).
inline std::vector<std::size_t> sign_changes(const std::vector<double>& values) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double a = values[i];
    const double b = values[i + 1];
    if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0)) out.push_back(i);
  }
  return out;
}

}  // namespace minhyp
