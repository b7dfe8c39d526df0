#ifndef SUS_NELDER_MEAD_HPP
#define SUS_NELDER_MEAD_HPP

#include <functional>

#include "sus/problem.hpp"

namespace sus {

struct NelderMeadOptions {
  int max_iters = 500;
  // Stop when every vertex lies within this distance (max-norm) of the best.
  double spread_tol = 1e-6;
  // Initial simplex: x0 plus one vertex per coordinate, offset by
  // init_step_rel * |x0_i|, or init_step_abs where x0_i is 0.
  double init_step_rel = 0.10;
  double init_step_abs = 0.1;
};

struct NelderMeadResult {
  Vector x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;  // spread tolerance reached before max_iters
};

// Downhill simplex minimization with reflection 1.0, expansion 2.0,
// contraction 0.5, shrink 0.5. Noisy objectives are permitted: each vertex
// keeps the value recorded when it was evaluated, so the best vertex's value
// never increases. max_iters = 0 returns x0 evaluated once.
NelderMeadResult nelder_mead(
    const std::function<double(const Vector&)>& objective, const Vector& x0,
    const NelderMeadOptions& opts = {});

}  // namespace sus

#endif  // SUS_NELDER_MEAD_HPP
