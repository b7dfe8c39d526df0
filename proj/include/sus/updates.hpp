#ifndef SUS_UPDATES_HPP
#define SUS_UPDATES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sus/problem.hpp"
#include "sus/rng.hpp"

namespace sus {

enum class UpdateKind : std::uint8_t { kGd = 0, kNag = 1, kGuru = 2 };

std::string update_kind_name(UpdateKind kind);
UpdateKind parse_update_kind(const std::string& name);

// Parameter tuple of one update operator. Fields unused by a kind stay 0:
// GD uses (eta, delta), NAG uses (eta, mu, delta), GURU uses (lb, ub).
struct UpdateParams {
  double eta = 0.0;
  double mu = 0.0;
  double delta = 0.0;
  double lb = 0.0;
  double ub = 0.0;
};

// eta * exp(-delta * k). The iteration counter k starts at 1 on the first
// update of a run.
double step_size(double eta, double delta, int k);

// Mutable per-(episode, action-set-entry) state of the momentum scheme:
// the persistent position (distinct from the interim point handed to the
// caller) and the velocity.
struct UpdateMemory {
  bool initialized = false;
  Vector v;
  Vector x_pos;
};

void reset_memory(UpdateMemory& mem);

// x - eta_k * g. Stateless.
Vector gd_update(const Vector& x, const Vector& g, int k,
                 const UpdateParams& params);

// One momentum step with lookahead:
//   v <- mu*v - eta_k*g,  x_pos <- x_pos + v,  return x_pos + mu*v.
// g must be the gradient at x_tilde. On the first call the memory seeds as
// x_pos = x_tilde, v = 0. With literal_interim the returned point
// extrapolates from the pre-update position instead of the new one,
// matching a common transcription of the scheme.
Vector nag_update(UpdateMemory& mem, const Vector& x_tilde, const Vector& g,
                  int k, const UpdateParams& params,
                  bool literal_interim = false);

// Uniform random point in [lb, ub]^d; consumes exactly d draws. The greedy
// revert safeguard lives in the environment.
Vector guru_update(int d, const UpdateParams& params, Rng& rng);

struct ActionEntry {
  UpdateKind kind = UpdateKind::kGd;
  UpdateParams params;

  static ActionEntry gd(double eta, double delta = 0.0);
  static ActionEntry nag(double eta, double mu, double delta);
  static ActionEntry guru(double lb, double ub);
};

// Ordered action set; an action is a 1-based index into entries.
struct ActionSet {
  std::string name;
  std::vector<ActionEntry> entries;

  int size() const { return static_cast<int>(entries.size()); }
  void validate() const;
};

enum class ActionSetVariant { kH1, kH2, kH3 };

ActionSetVariant parse_action_set_variant(const std::string& name);
std::string action_set_variant_name(ActionSetVariant v);

// The three benchmark sets, built around tuned baseline hyperparameters
// (eta_star, mu_star, delta_star; ignored by H3):
//   H1: NAG at eta_star/2 and eta_star, shared (mu_star, delta_star)
//   H2: NAG at eta_star/4, eta_star/2, eta_star, 2*eta_star
//   H3: GURU[-1,1]; GD(0.003); GD(0.001); NAG(0.0006, 0.6, 1e-4)
ActionSet make_action_set(ActionSetVariant variant, double eta_star,
                          double mu_star, double delta_star);

// Stable structural hash pairing value tables with the action set they were
// trained on.
std::uint64_t action_set_hash(const ActionSet& set);

}  // namespace sus

#endif  // SUS_UPDATES_HPP
