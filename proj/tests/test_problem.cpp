#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "sus/problem.hpp"
#include "sus/rng.hpp"
#include "test_util.hpp"

using namespace sus;

namespace {

double measured_kappa(const Matrix& A) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(A);
  return es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("kappa spec draws inside the range and validates its bounds") {
  Rng rng(1);
  const KappaSpec spec = KappaSpec::uniform(10.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const double k = spec.draw(rng);
    REQUIRE(k >= 10.0);
    REQUIRE(k <= 100.0);
  }
  CHECK(KappaSpec::fixed(5.0).is_fixed());
  CHECK(KappaSpec::fixed(5.0).draw(rng) == 5.0);
  CHECK_THROWS_AS(KappaSpec::uniform(0.5, 2.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(KappaSpec::uniform(10.0, 2.0).validate(), std::invalid_argument);
}

TEST_CASE("matrix generator hits the requested condition number exactly") {
  Rng rng(2024);
  for (double kappa : {1.0, 10.0, 1e3}) {
    const Matrix A = make_spd_matrix(10, kappa, rng);
    CHECK((A - A.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::abs(measured_kappa(A) - kappa) <= 1e-8 * kappa);
  }
}

TEST_CASE("identity-conditioned matrices reduce to the identity") {
  Rng rng(7);
  const Matrix A = make_spd_matrix(3, 1.0, rng);
  CHECK((A - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(make_spd_matrix(1, 1.0, rng)(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("degenerate matrix requests are rejected") {
  Rng rng(7);
  CHECK_THROWS_AS(make_spd_matrix(0, 10.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(make_spd_matrix(5, 0.5, rng), std::invalid_argument);
  // A 1x1 matrix has condition number 1; anything else is unrepresentable.
  CHECK_THROWS_AS(make_spd_matrix(1, 2.0, rng), std::invalid_argument);
}

TEST_CASE("hand-built 1-D instance matches closed-form values") {
  Matrix A(1, 1);
  A << 2.0;
  Vector b(1);
  b << 2.0;
  Vector x1(1);
  x1 << 0.0;
  const QuadraticProblem p = make_problem_from(A, b, x1);

  CHECK(p.c == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.x_star(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.lambda_min == doctest::Approx(2.0));
  CHECK(p.lambda_max == doctest::Approx(2.0));
  CHECK(p.kappa == doctest::Approx(1.0));
  CHECK(evaluate(p, x1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(evaluate(p, p.x_star) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(gradient(p, x1)(0) == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("sampled instances are nonnegative with a zero minimum") {
  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const QuadraticProblem p = make_problem(8, KappaSpec::uniform(1e1, 1e3), rng);
    const double y1 = evaluate(p, p.x1);
    CHECK(evaluate(p, p.x_star) <= 1e-10 * y1);
    Rng point_rng(derive_seed(77, static_cast<std::uint64_t>(trial)));
    for (int i = 0; i < 100; ++i) {
      Vector x(p.d);
      for (int j = 0; j < p.d; ++j) x(j) = 3.0 * point_rng.normal();
      CHECK(evaluate(p, x) >= -1e-12);
    }
  }
}

TEST_CASE("stored spectrum matches the construction") {
  Rng rng(6);
  const QuadraticProblem p = make_problem(12, KappaSpec::fixed(50.0), rng);
  CHECK(p.lambda_min == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(p.lambda_max == doctest::Approx(50.0).epsilon(1e-10));
  CHECK(p.kappa == doctest::Approx(50.0).epsilon(1e-10));
  CHECK(std::abs(measured_kappa(p.A) - 50.0) <= 1e-8 * 50.0);
}

TEST_CASE("analytic gradient agrees with central differences") {
  Rng rng(8);
  const QuadraticProblem p = make_problem(10, KappaSpec::uniform(1e1, 1e2), rng);
  Vector x(p.d);
  for (int j = 0; j < p.d; ++j) x(j) = rng.normal();
  const Vector g = gradient(p, x);
  const double h = 1e-6;
  double worst = 0.0;
  for (int j = 0; j < p.d; ++j) {
    Vector xp = x;
    Vector xm = x;
    xp(j) += h;
    xm(j) -= h;
    const double fd = (evaluate(p, xp) - evaluate(p, xm)) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - g(j)));
  }
  CHECK(worst <= 1e-6 * std::max(1.0, g.cwiseAbs().maxCoeff()));
}

TEST_CASE("fused evaluation matches the split one bit for bit") {
  Rng rng(9);
  const QuadraticProblem p = make_problem(6, KappaSpec::fixed(25.0), rng);
  Vector x(p.d);
  for (int j = 0; j < p.d; ++j) x(j) = rng.normal();
  Vector g;
  const double y = evaluate_with_gradient(p, x, g);
  CHECK(y == evaluate(p, x));
  CHECK((g - gradient(p, x)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("instance generation is a pure function of the seed") {
  Rng a(1234);
  Rng b(1234);
  const QuadraticProblem pa = make_problem(7, KappaSpec::uniform(2.0, 20.0), a);
  const QuadraticProblem pb = make_problem(7, KappaSpec::uniform(2.0, 20.0), b);
  CHECK((pa.A - pb.A).cwiseAbs().maxCoeff() == 0.0);
  CHECK((pa.b - pb.b).cwiseAbs().maxCoeff() == 0.0);
  CHECK((pa.x1 - pb.x1).cwiseAbs().maxCoeff() == 0.0);
  CHECK(pa.c == pb.c);
}

TEST_CASE("problem sets round-trip bit-exactly through the binary container") {
  const auto dir = testutil::scratch_dir("problem_roundtrip");
  const ProblemSet set =
      sample_problem_set(4, KappaSpec::uniform(5.0, 50.0), 6, 99, SetRole::kTest);
  const std::string path = (dir / "set.bin").string();
  save_problem_set(path, set);
  const ProblemSet loaded = load_problem_set(path);

  REQUIRE(loaded.size() == set.size());
  CHECK(loaded.d == set.d);
  CHECK(loaded.seed == set.seed);
  CHECK(loaded.role == set.role);
  CHECK(loaded.kappa.lo == set.kappa.lo);
  CHECK(loaded.kappa.hi == set.kappa.hi);
  for (int i = 0; i < set.size(); ++i) {
    const auto& p = set.instances[static_cast<std::size_t>(i)];
    const auto& q = loaded.instances[static_cast<std::size_t>(i)];
    CHECK((p.A - q.A).cwiseAbs().maxCoeff() == 0.0);
    CHECK((p.b - q.b).cwiseAbs().maxCoeff() == 0.0);
    CHECK((p.x_star - q.x_star).cwiseAbs().maxCoeff() == 0.0);
    CHECK((p.x1 - q.x1).cwiseAbs().maxCoeff() == 0.0);
    CHECK(p.c == q.c);
    CHECK(p.kappa == q.kappa);
  }

  // Saving the regenerated set must produce identical bytes.
  const ProblemSet again =
      sample_problem_set(4, KappaSpec::uniform(5.0, 50.0), 6, 99, SetRole::kTest);
  const std::string path2 = (dir / "set2.bin").string();
  save_problem_set(path2, again);
  CHECK(testutil::slurp(path) == testutil::slurp(path2));
}

TEST_CASE("foreign files are rejected as problem sets") {
  const auto dir = testutil::scratch_dir("problem_badmagic");
  const std::string path = (dir / "junk.bin").string();
  {
    std::ofstream out(path, std::ios::binary);
    out << "not a container at all";
  }
  CHECK_THROWS(load_problem_set(path));
  CHECK_THROWS(load_problem_set((dir / "missing.bin").string()));
}
