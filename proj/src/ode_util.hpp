#pragma once

// Shared driver for the profile ODEs: integrate from 0 to every |x| of an
// arbitrary grid and hand each state back by grid index.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include <boost/numeric/odeint.hpp>

namespace minhyp::detail {

template <typename State, typename Rhs, typename Emit>
void integrate_symmetric(std::span<const double> grid, State y0, Rhs rhs, double abs_tol,
                         double rel_tol, Emit emit) {
  namespace odeint = boost::numeric::odeint;
  std::vector<std::size_t> order(grid.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return std::fabs(grid[i]) < std::fabs(grid[j]);
  });
  std::vector<double> times{0.0};
  for (std::size_t i : order)
    if (std::fabs(grid[i]) > times.back()) times.push_back(std::fabs(grid[i]));

  std::vector<State> states;
  states.reserve(times.size());
  if (times.size() > 1) {
    auto stepper =
        odeint::make_controlled(abs_tol, rel_tol, odeint::runge_kutta_fehlberg78<State>());
    const double dt0 = std::min(1e-3, 0.5 * times[1]);
    odeint::integrate_times(stepper, rhs, y0, times.begin(), times.end(), dt0,
                            [&states](const State& y, double) { states.push_back(y); });
  } else {
    states.push_back(y0);
  }

  std::size_t k = 0;
  for (std::size_t i : order) {
    while (times[k] < std::fabs(grid[i])) ++k;
    emit(i, states[k]);
  }
}

}  // namespace minhyp::detail
