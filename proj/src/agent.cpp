#include "sus/agent.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sus/io_util.hpp"

namespace sus {

namespace {

void check_dims(int m1, int m2, int J) {
  if (m1 < 1 || m2 < 1 || J < 1)
    throw std::invalid_argument("table dimensions must be >= 1");
}

std::size_t q_index(const QTableFingerprint& fp, int s1, int s2, int a) {
  if (s1 < 1 || s1 > fp.m1 || s2 < 1 || s2 > fp.m2 || a < 1 || a > fp.J)
    throw std::out_of_range("state or action index out of range");
  return (static_cast<std::size_t>(s1 - 1) * fp.m2 +
          static_cast<std::size_t>(s2 - 1)) *
             fp.J +
         static_cast<std::size_t>(a - 1);
}

std::string fingerprint_text(const QTableFingerprint& fp) {
  std::ostringstream out;
  out << "(m1=" << fp.m1 << ", m2=" << fp.m2 << ", J=" << fp.J
      << ", gamma=" << io::format_double(fp.gamma) << ", actions=0x"
      << io::hex_u64(fp.action_hash) << ")";
  return out.str();
}

}  // namespace

QTable QTable::zeros(int m1, int m2, int J, double gamma,
                     std::uint64_t action_hash) {
  check_dims(m1, m2, J);
  QTable q;
  q.fp = {m1, m2, J, gamma, action_hash};
  q.values.assign(static_cast<std::size_t>(m1) * m2 * J, 0.0);
  return q;
}

double& QTable::at(int s1, int s2, int a) {
  return values[q_index(fp, s1, s2, a)];
}

double QTable::at(int s1, int s2, int a) const {
  return values[q_index(fp, s1, s2, a)];
}

int PolicyTable::at(int s1, int s2) const {
  if (s1 < 1 || s1 > fp.m1 || s2 < 1 || s2 > fp.m2)
    throw std::out_of_range("state index out of range");
  return actions[static_cast<std::size_t>(s1 - 1) * fp.m2 +
                 static_cast<std::size_t>(s2 - 1)];
}

void AgentConfig::validate() const {
  if (!(eps0 >= 0.0 && eps0 <= 1.0))
    throw std::invalid_argument("eps0 must lie in [0, 1]");
  if (!(alpha0 > 0.0 && alpha0 <= 1.0))
    throw std::invalid_argument("alpha0 must lie in (0, 1]");
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("gamma must lie in [0, 1]");
  if (N < 0) throw std::invalid_argument("episode count must be >= 0");
  if (!(final_fraction > 0.0 && final_fraction <= 1.0))
    throw std::invalid_argument("final_fraction must lie in (0, 1]");
}

int select_action(const QTable& q, int s1, int s2, double eps, Rng& rng) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw std::invalid_argument("eps must lie in [0, 1]");
  if (eps > 0.0 && rng.uniform01() < eps) return 1 + rng.uniform_int(q.fp.J);
  int best = 1;
  double best_value = q.at(s1, s2, 1);
  for (int a = 2; a <= q.fp.J; ++a) {
    const double v = q.at(s1, s2, a);
    if (v > best_value) {
      best_value = v;
      best = a;
    }
  }
  return best;
}

void sarsa_update(QTable& q, int s1, int s2, int a, double r_next, int next_s1,
                  int next_s2, int next_a, double alpha, double gamma) {
  const double target = r_next + gamma * q.at(next_s1, next_s2, next_a);
  double& cell = q.at(s1, s2, a);
  cell = (1.0 - alpha) * cell + alpha * target;
}

void sarsa_update_terminal(QTable& q, int s1, int s2, int a, double r_next,
                           double alpha) {
  double& cell = q.at(s1, s2, a);
  cell = (1.0 - alpha) * cell + alpha * r_next;
}

double schedule_value(double v0, int n, int N, double final_fraction) {
  if (N <= 0) return v0;
  const double rate = std::log(1.0 / final_fraction);
  return v0 * std::exp(-(static_cast<double>(n) / N) * rate);
}

PolicyTable greedy_policy(const QTable& q) {
  PolicyTable policy;
  policy.fp = q.fp;
  policy.actions.resize(static_cast<std::size_t>(q.fp.m1) * q.fp.m2);
  for (int s1 = 1; s1 <= q.fp.m1; ++s1)
    for (int s2 = 1; s2 <= q.fp.m2; ++s2) {
      int best = 1;
      double best_value = q.at(s1, s2, 1);
      for (int a = 2; a <= q.fp.J; ++a) {
        const double v = q.at(s1, s2, a);
        if (v > best_value) {
          best_value = v;
          best = a;
        }
      }
      policy.actions[static_cast<std::size_t>(s1 - 1) * q.fp.m2 + (s2 - 1)] =
          best;
    }
  return policy;
}

namespace {
constexpr char kQTableMagic[9] = "SUSQTAB\0";
constexpr char kPolicyMagic[9] = "SUSPOLI\0";
constexpr std::uint32_t kTableVersion = 1;

void write_fingerprint(io::BinaryWriter& w, const QTableFingerprint& fp) {
  w.write_u32(static_cast<std::uint32_t>(fp.m1));
  w.write_u32(static_cast<std::uint32_t>(fp.m2));
  w.write_u32(static_cast<std::uint32_t>(fp.J));
  w.write_f64(fp.gamma);
  w.write_u64(fp.action_hash);
}

QTableFingerprint read_fingerprint(io::BinaryReader& r) {
  QTableFingerprint fp;
  fp.m1 = static_cast<int>(r.read_u32());
  fp.m2 = static_cast<int>(r.read_u32());
  fp.J = static_cast<int>(r.read_u32());
  fp.gamma = r.read_f64();
  fp.action_hash = r.read_u64();
  check_dims(fp.m1, fp.m2, fp.J);
  return fp;
}

}  // namespace

void save_qtable(const std::string& path, const QTable& q) {
  const std::size_t expect =
      static_cast<std::size_t>(q.fp.m1) * q.fp.m2 * q.fp.J;
  if (q.values.size() != expect)
    throw std::invalid_argument("value table shape disagrees with fingerprint");
  io::BinaryWriter w(path);
  w.write_magic(kQTableMagic);
  w.write_u32(kTableVersion);
  write_fingerprint(w, q.fp);
  for (double v : q.values) w.write_f64(v);
}

QTable load_qtable(const std::string& path) {
  io::BinaryReader r(path);
  r.expect_magic(kQTableMagic, "Q-table");
  const std::uint32_t version = r.read_u32();
  if (version != kTableVersion)
    throw std::runtime_error(path + ": unsupported Q-table version " +
                             std::to_string(version));
  QTable q;
  q.fp = read_fingerprint(r);
  const std::size_t n = static_cast<std::size_t>(q.fp.m1) * q.fp.m2 * q.fp.J;
  q.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) q.values[i] = r.read_f64();
  return q;
}

QTable load_qtable(const std::string& path, const QTableFingerprint& expected) {
  QTable q = load_qtable(path);
  if (!(q.fp == expected))
    throw std::runtime_error(path + ": fingerprint mismatch, file has " +
                             fingerprint_text(q.fp) + " but run expects " +
                             fingerprint_text(expected));
  return q;
}

void save_policy(const std::string& path, const PolicyTable& policy) {
  const std::size_t expect = static_cast<std::size_t>(policy.fp.m1) * policy.fp.m2;
  if (policy.actions.size() != expect)
    throw std::invalid_argument("policy shape disagrees with fingerprint");
  io::BinaryWriter w(path);
  w.write_magic(kPolicyMagic);
  w.write_u32(kTableVersion);
  write_fingerprint(w, policy.fp);
  for (int a : policy.actions) {
    if (a < 1 || a > policy.fp.J)
      throw std::invalid_argument("policy entry out of range");
    w.write_u32(static_cast<std::uint32_t>(a));
  }
}

PolicyTable load_policy(const std::string& path) {
  io::BinaryReader r(path);
  r.expect_magic(kPolicyMagic, "policy");
  const std::uint32_t version = r.read_u32();
  if (version != kTableVersion)
    throw std::runtime_error(path + ": unsupported policy version " +
                             std::to_string(version));
  PolicyTable policy;
  policy.fp = read_fingerprint(r);
  const std::size_t n = static_cast<std::size_t>(policy.fp.m1) * policy.fp.m2;
  policy.actions.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int a = static_cast<int>(r.read_u32());
    if (a < 1 || a > policy.fp.J)
      throw std::runtime_error(path + ": policy entry out of range");
    policy.actions[i] = a;
  }
  return policy;
}

void write_policy_csv(const std::string& path, const PolicyTable& policy) {
  std::ostringstream out;
  out << "s1,s2,action\n";
  for (int s1 = 1; s1 <= policy.fp.m1; ++s1)
    for (int s2 = 1; s2 <= policy.fp.m2; ++s2)
      out << s1 << ',' << s2 << ',' << policy.at(s1, s2) << '\n';
  io::write_text_file(path, out.str());
}

}  // namespace sus
