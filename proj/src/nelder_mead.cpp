#include "sus/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace sus {

namespace {
constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;
}  // namespace

NelderMeadResult nelder_mead(
    const std::function<double(const Vector&)>& objective, const Vector& x0,
    const NelderMeadOptions& opts) {
  const int n = static_cast<int>(x0.size());
  if (n < 1) throw std::invalid_argument("empty parameter vector");
  if (opts.max_iters < 0) throw std::invalid_argument("max_iters must be >= 0");

  NelderMeadResult result;
  auto eval = [&](const Vector& x) {
    ++result.evaluations;
    return objective(x);
  };

  if (opts.max_iters == 0) {
    result.x = x0;
    result.value = eval(x0);
    return result;
  }

  std::vector<Vector> verts;
  std::vector<double> vals;
  verts.reserve(static_cast<std::size_t>(n) + 1);
  verts.push_back(x0);
  for (int i = 0; i < n; ++i) {
    Vector v = x0;
    v(i) += x0(i) != 0.0 ? opts.init_step_rel * std::abs(x0(i))
                         : opts.init_step_abs;
    verts.push_back(std::move(v));
  }
  vals.reserve(verts.size());
  for (const Vector& v : verts) vals.push_back(eval(v));

  std::vector<int> order(verts.size());
  auto sort_order = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return vals[a] < vals[b]; });
  };

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    sort_order();
    const int best = order.front();
    const int worst = order.back();
    const int second_worst = order[order.size() - 2];

    double spread = 0.0;
    for (const Vector& v : verts)
      spread = std::max(spread, (v - verts[best]).lpNorm<Eigen::Infinity>());
    if (spread < opts.spread_tol) {
      result.converged = true;
      break;
    }
    result.iterations = iter + 1;

    Vector centroid = Vector::Zero(n);
    for (int idx : order)
      if (idx != worst) centroid += verts[idx];
    centroid /= static_cast<double>(n);

    const Vector reflected = centroid + kReflect * (centroid - verts[worst]);
    const double f_reflected = eval(reflected);

    if (f_reflected < vals[best]) {
      const Vector expanded =
          centroid + kExpand * kReflect * (centroid - verts[worst]);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        verts[worst] = expanded;
        vals[worst] = f_expanded;
      } else {
        verts[worst] = reflected;
        vals[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < vals[second_worst]) {
      verts[worst] = reflected;
      vals[worst] = f_reflected;
      continue;
    }

    if (f_reflected < vals[worst]) {
      const Vector outside =
          centroid + kContract * kReflect * (centroid - verts[worst]);
      const double f_outside = eval(outside);
      if (f_outside <= f_reflected) {
        verts[worst] = outside;
        vals[worst] = f_outside;
        continue;
      }
    } else {
      const Vector inside = centroid - kContract * (centroid - verts[worst]);
      const double f_inside = eval(inside);
      if (f_inside < vals[worst]) {
        verts[worst] = inside;
        vals[worst] = f_inside;
        continue;
      }
    }

    for (std::size_t j = 0; j < verts.size(); ++j) {
      const int idx = order[static_cast<int>(j)];
      if (idx == best) continue;
      verts[idx] = verts[best] + kShrink * (verts[idx] - verts[best]);
      vals[idx] = eval(verts[idx]);
    }
  }

  sort_order();
  result.x = verts[order.front()];
  result.value = vals[order.front()];
  return result;
}

}  // namespace sus
