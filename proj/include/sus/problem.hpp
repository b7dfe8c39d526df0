#ifndef SUS_PROBLEM_HPP
#define SUS_PROBLEM_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "sus/rng.hpp"

namespace sus {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Condition number specification: a fixed value or Uniform[lo, hi].
struct KappaSpec {
  double lo = 1.0;
  double hi = 1.0;

  static KappaSpec fixed(double kappa) { return {kappa, kappa}; }
  static KappaSpec uniform(double lo, double hi) { return {lo, hi}; }

  bool is_fixed() const { return lo == hi; }
  double draw(Rng& rng) const;
  void validate() const;
};

// One instance of the random convex quadratic class
//   f(x) = 1/2 x^T A x - b^T x + c,   c = 1/2 b^T A^{-1} b,
// so f >= 0 everywhere with minimum 0 at the solution of A x = b.
// Instances are immutable after construction and safe to share across threads.
struct QuadraticProblem {
  int d = 0;
  Matrix A;
  Vector b;
  double c = 0.0;
  Vector x_star;            // cached solution of A x = b
  double lambda_min = 0.0;  // extreme eigenvalues of A
  double lambda_max = 0.0;  // also the gradient Lipschitz constant L
  double kappa = 1.0;       // lambda_max / lambda_min
  Vector x1;                // stored initial trial point, shared by all runs
};

// A = Q diag(lambda) Q^T with lambda log-uniformly spaced on [1, kappa]
// (extremes pinned, so the condition number is exactly the requested one)
// and Q a Haar-random orthogonal matrix. For d == 1 only kappa == 1 is
// representable.
Matrix make_spd_matrix(int d, double kappa, Rng& rng);

// Draws kappa from the spec, builds A, samples b and x1 with i.i.d. standard
// normal entries, and caches solution and spectrum.
QuadraticProblem make_problem(int d, const KappaSpec& spec, Rng& rng);

// Builds the dependent fields (c, x_star, spectrum) for explicit A, b, x1.
// A must be symmetric positive definite.
QuadraticProblem make_problem_from(Matrix A, Vector b, Vector x1);

double evaluate(const QuadraticProblem& p, const Vector& x);
Vector gradient(const QuadraticProblem& p, const Vector& x);

// One A*x product serves both outputs; the returned objective matches
// evaluate() bit for bit.
double evaluate_with_gradient(const QuadraticProblem& p, const Vector& x,
                              Vector& grad_out);

enum class SetRole : std::uint8_t { kTraining = 0, kTest = 1 };

struct ProblemSet {
  std::vector<QuadraticProblem> instances;
  int d = 0;
  KappaSpec kappa;
  std::uint64_t seed = 0;
  SetRole role = SetRole::kTraining;

  int size() const { return static_cast<int>(instances.size()); }
};

// n independent instances from one seed stream. Regenerating with the same
// (d, spec, n, seed) yields identical instances.
ProblemSet sample_problem_set(int d, const KappaSpec& spec, int n,
                              std::uint64_t seed,
                              SetRole role = SetRole::kTraining);

// Versioned little-endian binary container; doubles are stored bit-exactly.
void save_problem_set(const std::string& path, const ProblemSet& set);
ProblemSet load_problem_set(const std::string& path);

}  // namespace sus

#endif  // SUS_PROBLEM_HPP
