#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "sus/agent.hpp"
#include "sus/rng.hpp"
#include "test_util.hpp"

using namespace sus;

namespace {

QTable small_table() { return QTable::zeros(3, 4, 2, 1.0, 0xabcdef); }

}  // namespace

TEST_CASE("value tables start at zero with checked indexing") {
  QTable q = small_table();
  CHECK(q.values.size() == 3u * 4u * 2u);
  for (double v : q.values) CHECK(v == 0.0);
  q.at(3, 4, 2) = 1.5;
  CHECK(q.at(3, 4, 2) == 1.5);
  CHECK_THROWS_AS(q.at(0, 1, 1), std::out_of_range);
  CHECK_THROWS_AS(q.at(1, 5, 1), std::out_of_range);
  CHECK_THROWS_AS(q.at(1, 1, 3), std::out_of_range);
  CHECK_THROWS_AS(QTable::zeros(0, 1, 1, 1.0, 0), std::invalid_argument);
}

TEST_CASE("greedy selection takes the argmax with lowest-index ties") {
  QTable q = small_table();
  Rng rng(1);
  CHECK(select_action(q, 1, 1, 0.0, rng) == 1);  // all zero: tie on index 1
  q.at(1, 1, 2) = 0.9;
  q.at(1, 1, 1) = 0.1;
  CHECK(select_action(q, 1, 1, 0.0, rng) == 2);
  q.at(2, 2, 1) = 5.0;
  q.at(2, 2, 2) = 5.0;
  CHECK(select_action(q, 2, 2, 0.0, rng) == 1);
}

TEST_CASE("greedy selection consumes no randomness") {
  QTable q = small_table();
  Rng used(42);
  Rng untouched(42);
  select_action(q, 1, 1, 0.0, used);
  select_action(q, 2, 3, 0.0, used);
  CHECK(used.next_u64() == untouched.next_u64());
}

TEST_CASE("fully random selection is uniform over the actions") {
  QTable q = QTable::zeros(1, 1, 4, 1.0, 0);
  q.at(1, 1, 3) = 100.0;  // values must not matter at eps = 1
  Rng rng(2025);
  std::vector<int> counts(4, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(
      select_action(q, 1, 1, 1.0, rng) - 1)];
  for (int c : counts)
    CHECK(std::abs(static_cast<double>(c) / n - 0.25) <= 0.01);
}

TEST_CASE("selection validates the exploration rate") {
  QTable q = small_table();
  Rng rng(1);
  CHECK_THROWS_AS(select_action(q, 1, 1, -0.1, rng), std::invalid_argument);
  CHECK_THROWS_AS(select_action(q, 1, 1, 1.1, rng), std::invalid_argument);
}

TEST_CASE("one learning step from zero moves 30% toward a target of 3") {
  QTable q = small_table();
  // Successor value is zero, so the target is just the reward.
  sarsa_update(q, 1, 1, 1, 3.0, 2, 2, 2, 0.3, 1.0);
  CHECK(q.at(1, 1, 1) == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("learning steps form a convex combination of old value and target") {
  QTable q = small_table();
  q.at(1, 1, 1) = 2.0;
  q.at(2, 2, 2) = 10.0;
  sarsa_update(q, 1, 1, 1, 1.0, 2, 2, 2, 0.5, 0.5);
  // target = 1 + 0.5 * 10 = 6; new value = 0.5*2 + 0.5*6 = 4.
  CHECK(q.at(1, 1, 1) == doctest::Approx(4.0).epsilon(1e-12));

  // alpha = 1 overwrites, alpha -> 0 freezes.
  sarsa_update(q, 1, 1, 1, -1.0, 2, 2, 2, 1.0, 0.0);
  CHECK(q.at(1, 1, 1) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("terminal updates use a zero successor value") {
  QTable q = small_table();
  q.at(3, 1, 2) = 1.0;
  sarsa_update_terminal(q, 3, 1, 2, 0.0, 0.5);
  CHECK(q.at(3, 1, 2) == doctest::Approx(0.5).epsilon(1e-12));
  sarsa_update_terminal(q, 3, 1, 2, 7.0, 1.0);
  CHECK(q.at(3, 1, 2) == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("decay schedule hits its endpoints and decreases in between") {
  // 0.5% of the initial value at the final episode.
  CHECK(schedule_value(0.99, 0, 1000, 0.005) == doctest::Approx(0.99).epsilon(1e-12));
  CHECK(schedule_value(0.99, 1000, 1000, 0.005) ==
        doctest::Approx(0.99 * 0.005).epsilon(1e-12));
  CHECK(schedule_value(1.0, 500, 1000, 0.005) ==
        doctest::Approx(std::sqrt(0.005)).epsilon(1e-12));
  double prev = schedule_value(0.5, 0, 100, 0.005);
  for (int n = 1; n <= 100; ++n) {
    const double cur = schedule_value(0.5, n, 100, 0.005);
    CHECK(cur < prev);
    prev = cur;
  }
  // No episodes: the schedule stays at its initial value.
  CHECK(schedule_value(0.7, 0, 0, 0.005) == 0.7);
  // final_fraction = 1 keeps the value constant.
  CHECK(schedule_value(0.3, 50, 100, 1.0) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("agent configuration validation") {
  AgentConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.N = 0;
  CHECK_NOTHROW(cfg.validate());  // "no training" is a valid request
  cfg.N = -1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = AgentConfig{};
  cfg.eps0 = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = AgentConfig{};
  cfg.alpha0 = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = AgentConfig{};
  cfg.final_fraction = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("greedy policy extraction matches per-state argmax") {
  QTable q = small_table();
  q.at(1, 1, 2) = 1.0;
  q.at(2, 3, 1) = 4.0;
  q.at(2, 3, 2) = 2.0;
  const PolicyTable policy = greedy_policy(q);
  CHECK(policy.at(1, 1) == 2);
  CHECK(policy.at(2, 3) == 1);
  CHECK(policy.at(3, 4) == 1);  // untouched state: tie resolved to index 1
  CHECK(policy.fp == q.fp);
}

TEST_CASE("value tables round-trip bit-exactly") {
  const auto dir = testutil::scratch_dir("agent_qtable");
  QTable q = QTable::zeros(4, 5, 3, 0.97, 0x1122334455667788ULL);
  Rng rng(8);
  for (double& v : q.values) v = rng.normal() * 1e3;

  const std::string path = (dir / "q.bin").string();
  save_qtable(path, q);
  const QTable loaded = load_qtable(path);
  CHECK(loaded.fp == q.fp);
  REQUIRE(loaded.values.size() == q.values.size());
  for (std::size_t i = 0; i < q.values.size(); ++i)
    CHECK(loaded.values[i] == q.values[i]);

  save_qtable((dir / "q2.bin").string(), loaded);
  CHECK(testutil::slurp(dir / "q.bin") == testutil::slurp(dir / "q2.bin"));
}

TEST_CASE("fingerprint mismatches are refused with a diagnostic") {
  const auto dir = testutil::scratch_dir("agent_fingerprint");
  const QTable q = QTable::zeros(4, 5, 3, 0.97, 77);
  const std::string path = (dir / "q.bin").string();
  save_qtable(path, q);

  QTableFingerprint other = q.fp;
  other.gamma = 0.5;
  bool thrown = false;
  try {
    load_qtable(path, other);
  } catch (const std::runtime_error& e) {
    thrown = true;
    CHECK(std::string(e.what()).find("fingerprint") != std::string::npos);
  }
  CHECK(thrown);
  CHECK_NOTHROW(load_qtable(path, q.fp));
}

TEST_CASE("foreign files are rejected as value tables") {
  const auto dir = testutil::scratch_dir("agent_badfile");
  const std::string path = (dir / "junk.bin").string();
  {
    std::ofstream out(path, std::ios::binary);
    const char bytes[] = "SUSPSET\0extra";  // wrong container type
    out.write(bytes, sizeof bytes - 1);
  }
  CHECK_THROWS(load_qtable(path));
}

TEST_CASE("policies round-trip and reject corrupted entries") {
  const auto dir = testutil::scratch_dir("agent_policy");
  QTable q = small_table();
  q.at(2, 2, 2) = 1.0;
  const PolicyTable policy = greedy_policy(q);
  const std::string path = (dir / "p.bin").string();
  save_policy(path, policy);
  const PolicyTable loaded = load_policy(path);
  CHECK(loaded.fp == policy.fp);
  CHECK(loaded.actions == policy.actions);

  PolicyTable bad = policy;
  bad.actions[0] = 99;
  CHECK_THROWS_AS(save_policy((dir / "bad.bin").string(), bad),
                  std::invalid_argument);
}

TEST_CASE("policy CSV lists every state in row-major order") {
  const auto dir = testutil::scratch_dir("agent_policy_csv");
  const QTable q = QTable::zeros(2, 2, 2, 1.0, 0);
  const PolicyTable policy = greedy_policy(q);
  const std::string path = (dir / "p.csv").string();
  write_policy_csv(path, policy);
  CHECK(testutil::slurp(path) ==
        "s1,s2,action\n1,1,1\n1,2,1\n2,1,1\n2,2,1\n");
}
