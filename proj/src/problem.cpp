#include "sus/problem.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <stdexcept>

#include "sus/io_util.hpp"

namespace sus {

double KappaSpec::draw(Rng& rng) const {
  validate();
  if (is_fixed()) return lo;
  return rng.uniform(lo, hi);
}

void KappaSpec::validate() const {
  if (!(lo >= 1.0)) throw std::invalid_argument("kappa must be >= 1");
  if (!(hi >= lo)) throw std::invalid_argument("kappa range must have hi >= lo");
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("kappa bounds must be finite");
}

namespace {

// Haar-random orthogonal factor: QR of a standard normal matrix with the
// R-diagonal sign absorbed into Q.
Matrix random_orthogonal(int d, Rng& rng) {
  Matrix G(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) G(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ();
  Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j)
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  return Q;
}

double eval_core(const QuadraticProblem& p, const Vector& x, const Vector& Ax) {
  return 0.5 * x.dot(Ax) - p.b.dot(x) + p.c;
}

}  // namespace

Matrix make_spd_matrix(int d, double kappa, Rng& rng) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(kappa >= 1.0) || !std::isfinite(kappa))
    throw std::invalid_argument("kappa must be finite and >= 1");
  if (d == 1) {
    if (kappa != 1.0)
      throw std::invalid_argument("a 1x1 matrix always has kappa == 1");
    return Matrix::Identity(1, 1);
  }

  Vector lambda(d);
  const double log_kappa = std::log(kappa);
  for (int i = 0; i < d; ++i)
    lambda(i) = std::exp(log_kappa * static_cast<double>(i) / (d - 1));
  lambda(0) = 1.0;
  lambda(d - 1) = kappa;

  Matrix Q = random_orthogonal(d, rng);
  Matrix A = Q * lambda.asDiagonal() * Q.transpose();
  return 0.5 * (A + A.transpose());  // exact symmetry despite rounding
}

QuadraticProblem make_problem(int d, const KappaSpec& spec, Rng& rng) {
  QuadraticProblem p;
  p.d = d;
  p.kappa = spec.draw(rng);
  p.A = make_spd_matrix(d, p.kappa, rng);
  p.lambda_min = 1.0;
  p.lambda_max = p.kappa;

  p.b = Vector(d);
  for (int i = 0; i < d; ++i) p.b(i) = rng.normal();

  Eigen::LLT<Matrix> llt(p.A);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("generated matrix failed Cholesky factorization");
  p.x_star = llt.solve(p.b);
  p.x_star += llt.solve(p.b - p.A * p.x_star);  // one refinement step
  const double residual = (p.A * p.x_star - p.b).norm();
  if (residual > 1e-8 * std::max(1.0, p.b.norm()))
    throw std::runtime_error("linear solve for the problem optimum is inaccurate");

  p.c = 0.5 * p.b.dot(p.x_star);

  p.x1 = Vector(d);
  for (int i = 0; i < d; ++i) p.x1(i) = rng.normal();
  return p;
}

QuadraticProblem make_problem_from(Matrix A, Vector b, Vector x1) {
  const int d = static_cast<int>(A.rows());
  if (A.cols() != d || b.size() != d || x1.size() != d)
    throw std::invalid_argument("A, b, x1 dimensions disagree");
  if (!A.isApprox(A.transpose(), 1e-12))
    throw std::invalid_argument("A must be symmetric");

  QuadraticProblem p;
  p.d = d;
  p.A = std::move(A);
  p.b = std::move(b);
  p.x1 = std::move(x1);

  Eigen::SelfAdjointEigenSolver<Matrix> es(p.A, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigenvalue computation failed");
  p.lambda_min = es.eigenvalues().minCoeff();
  p.lambda_max = es.eigenvalues().maxCoeff();
  if (!(p.lambda_min > 0.0))
    throw std::invalid_argument("A must be positive definite");
  p.kappa = p.lambda_max / p.lambda_min;

  Eigen::LLT<Matrix> llt(p.A);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("Cholesky factorization failed");
  p.x_star = llt.solve(p.b);
  p.x_star += llt.solve(p.b - p.A * p.x_star);
  p.c = 0.5 * p.b.dot(p.x_star);
  return p;
}

double evaluate(const QuadraticProblem& p, const Vector& x) {
  return eval_core(p, x, p.A * x);
}

Vector gradient(const QuadraticProblem& p, const Vector& x) {
  return p.A * x - p.b;
}

double evaluate_with_gradient(const QuadraticProblem& p, const Vector& x,
                              Vector& grad_out) {
  Vector Ax = p.A * x;
  const double y = eval_core(p, x, Ax);
  grad_out = std::move(Ax);
  grad_out -= p.b;
  return y;
}

ProblemSet sample_problem_set(int d, const KappaSpec& spec, int n,
                              std::uint64_t seed, SetRole role) {
  if (n < 0) throw std::invalid_argument("problem count must be >= 0");
  spec.validate();
  ProblemSet set;
  set.d = d;
  set.kappa = spec;
  set.seed = seed;
  set.role = role;
  set.instances.reserve(static_cast<std::size_t>(n));
  Rng rng(seed);
  for (int i = 0; i < n; ++i) set.instances.push_back(make_problem(d, spec, rng));
  return set;
}

namespace {
constexpr char kSetMagic[9] = "SUSPSET\0";
constexpr std::uint32_t kSetVersion = 1;
}  // namespace

void save_problem_set(const std::string& path, const ProblemSet& set) {
  io::BinaryWriter w(path);
  w.write_magic(kSetMagic);
  w.write_u32(kSetVersion);
  w.write_u32(static_cast<std::uint32_t>(set.d));
  w.write_u32(static_cast<std::uint32_t>(set.size()));
  w.write_u64(set.seed);
  w.write_u8(static_cast<std::uint8_t>(set.role));
  w.write_f64(set.kappa.lo);
  w.write_f64(set.kappa.hi);
  for (const QuadraticProblem& p : set.instances) {
    w.write_f64(p.kappa);
    w.write_f64(p.lambda_min);
    w.write_f64(p.lambda_max);
    w.write_f64(p.c);
    for (int i = 0; i < p.d; ++i)
      for (int j = 0; j < p.d; ++j) w.write_f64(p.A(i, j));
    for (int i = 0; i < p.d; ++i) w.write_f64(p.b(i));
    for (int i = 0; i < p.d; ++i) w.write_f64(p.x_star(i));
    for (int i = 0; i < p.d; ++i) w.write_f64(p.x1(i));
  }
}

ProblemSet load_problem_set(const std::string& path) {
  io::BinaryReader r(path);
  r.expect_magic(kSetMagic, "problem set");
  const std::uint32_t version = r.read_u32();
  if (version != kSetVersion)
    throw std::runtime_error(path + ": unsupported problem set version " +
                             std::to_string(version));
  ProblemSet set;
  set.d = static_cast<int>(r.read_u32());
  const int n = static_cast<int>(r.read_u32());
  set.seed = r.read_u64();
  set.role = static_cast<SetRole>(r.read_u8());
  set.kappa.lo = r.read_f64();
  set.kappa.hi = r.read_f64();
  set.instances.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    QuadraticProblem p;
    p.d = set.d;
    p.kappa = r.read_f64();
    p.lambda_min = r.read_f64();
    p.lambda_max = r.read_f64();
    p.c = r.read_f64();
    p.A = Matrix(set.d, set.d);
    for (int i = 0; i < set.d; ++i)
      for (int j = 0; j < set.d; ++j) p.A(i, j) = r.read_f64();
    p.b = Vector(set.d);
    for (int i = 0; i < set.d; ++i) p.b(i) = r.read_f64();
    p.x_star = Vector(set.d);
    for (int i = 0; i < set.d; ++i) p.x_star(i) = r.read_f64();
    p.x1 = Vector(set.d);
    for (int i = 0; i < set.d; ++i) p.x1(i) = r.read_f64();
    set.instances.push_back(std::move(p));
  }
  return set;
}

}  // namespace sus
