#ifndef SUS_AGENT_HPP
#define SUS_AGENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sus/rng.hpp"

namespace sus {

// Shape and context a value table was trained under. Tables only load
// against a matching fingerprint.
struct QTableFingerprint {
  int m1 = 0;
  int m2 = 0;
  int J = 0;
  double gamma = 1.0;
  std::uint64_t action_hash = 0;

  bool operator==(const QTableFingerprint&) const = default;
};

// Tabular estimates of expected return, indexed by (s1, s2, a), all 1-based.
struct QTable {
  QTableFingerprint fp;
  std::vector<double> values;  // row-major over (s1, s2, a)

  static QTable zeros(int m1, int m2, int J, double gamma,
                      std::uint64_t action_hash);

  double& at(int s1, int s2, int a);
  double at(int s1, int s2, int a) const;
};

// Greedy action per state, extracted from a QTable.
struct PolicyTable {
  QTableFingerprint fp;
  std::vector<int> actions;  // row-major over (s1, s2), entries in [1, J]

  int at(int s1, int s2) const;
};

struct AgentConfig {
  double eps0 = 0.99;
  double alpha0 = 0.3;
  double gamma = 1.0;
  int N = 1;  // training episodes; 0 means no training
  double final_fraction = 0.005;

  void validate() const;
};

// eps-greedy draw: with probability eps a uniform action, otherwise the
// argmax of q at (s1, s2) with ties broken by lowest index. eps = 0 consumes
// no randomness.
int select_action(const QTable& q, int s1, int s2, double eps, Rng& rng);

// Q(s,a) <- (1-alpha) Q(s,a) + alpha (r_next + gamma Q(s',a')).
void sarsa_update(QTable& q, int s1, int s2, int a, double r_next, int next_s1,
                  int next_s2, int next_a, double alpha, double gamma);

// Terminal transition: the successor value is 0.
void sarsa_update_terminal(QTable& q, int s1, int s2, int a, double r_next,
                           double alpha);

// v0 * exp(-(n/N) ln(1/final_fraction)): exponential decay from v0 at n = 0
// to final_fraction * v0 at n = N. N = 0 returns v0.
double schedule_value(double v0, int n, int N, double final_fraction);

PolicyTable greedy_policy(const QTable& q);

// Versioned binary containers; values round-trip bit-exactly and loads
// against a mismatched fingerprint are refused.
void save_qtable(const std::string& path, const QTable& q);
QTable load_qtable(const std::string& path);
QTable load_qtable(const std::string& path, const QTableFingerprint& expected);

void save_policy(const std::string& path, const PolicyTable& policy);
PolicyTable load_policy(const std::string& path);

// Long-format CSV (s1, s2, action), plot-ready.
void write_policy_csv(const std::string& path, const PolicyTable& policy);

}  // namespace sus

#endif  // SUS_AGENT_HPP
