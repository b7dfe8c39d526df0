#include "sus/updates.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace sus {

std::string update_kind_name(UpdateKind kind) {
  switch (kind) {
    case UpdateKind::kGd: return "GD";
    case UpdateKind::kNag: return "NAG";
    case UpdateKind::kGuru: return "GURU";
  }
  throw std::logic_error("unknown update kind");
}

UpdateKind parse_update_kind(const std::string& name) {
  if (name == "GD") return UpdateKind::kGd;
  if (name == "NAG") return UpdateKind::kNag;
  if (name == "GURU") return UpdateKind::kGuru;
  throw std::invalid_argument("unknown update kind: " + name);
}

double step_size(double eta, double delta, int k) {
  return eta * std::exp(-delta * static_cast<double>(k));
}

void reset_memory(UpdateMemory& mem) {
  mem.initialized = false;
  mem.v.resize(0);
  mem.x_pos.resize(0);
}

Vector gd_update(const Vector& x, const Vector& g, int k,
                 const UpdateParams& params) {
  return x - step_size(params.eta, params.delta, k) * g;
}

Vector nag_update(UpdateMemory& mem, const Vector& x_tilde, const Vector& g,
                  int k, const UpdateParams& params, bool literal_interim) {
  if (!mem.initialized) {
    mem.initialized = true;
    mem.v = Vector::Zero(x_tilde.size());
    mem.x_pos = x_tilde;
  }
  const double eta_k = step_size(params.eta, params.delta, k);
  if (literal_interim) {
    const Vector x_prev = mem.x_pos;
    mem.v = params.mu * mem.v - eta_k * g;
    mem.x_pos += mem.v;
    return x_prev + params.mu * mem.v;
  }
  mem.v = params.mu * mem.v - eta_k * g;
  mem.x_pos += mem.v;
  return mem.x_pos + params.mu * mem.v;
}

Vector guru_update(int d, const UpdateParams& params, Rng& rng) {
  if (!(params.ub > params.lb))
    throw std::invalid_argument("random restart box is empty");
  Vector x(d);
  for (int i = 0; i < d; ++i) x(i) = rng.uniform(params.lb, params.ub);
  return x;
}

ActionEntry ActionEntry::gd(double eta, double delta) {
  ActionEntry e;
  e.kind = UpdateKind::kGd;
  e.params.eta = eta;
  e.params.delta = delta;
  return e;
}

ActionEntry ActionEntry::nag(double eta, double mu, double delta) {
  ActionEntry e;
  e.kind = UpdateKind::kNag;
  e.params.eta = eta;
  e.params.mu = mu;
  e.params.delta = delta;
  return e;
}

ActionEntry ActionEntry::guru(double lb, double ub) {
  ActionEntry e;
  e.kind = UpdateKind::kGuru;
  e.params.lb = lb;
  e.params.ub = ub;
  return e;
}

void ActionSet::validate() const {
  if (entries.empty()) throw std::invalid_argument("action set is empty");
  for (const ActionEntry& e : entries) {
    switch (e.kind) {
      case UpdateKind::kGd:
      case UpdateKind::kNag:
        if (!(e.params.eta > 0.0))
          throw std::invalid_argument("gradient step entries need eta > 0");
        break;
      case UpdateKind::kGuru:
        if (!(e.params.ub > e.params.lb))
          throw std::invalid_argument("random restart entries need lb < ub");
        break;
    }
  }
}

ActionSetVariant parse_action_set_variant(const std::string& name) {
  if (name == "H1") return ActionSetVariant::kH1;
  if (name == "H2") return ActionSetVariant::kH2;
  if (name == "H3") return ActionSetVariant::kH3;
  throw std::invalid_argument("unknown action set variant: " + name);
}

std::string action_set_variant_name(ActionSetVariant v) {
  switch (v) {
    case ActionSetVariant::kH1: return "H1";
    case ActionSetVariant::kH2: return "H2";
    case ActionSetVariant::kH3: return "H3";
  }
  throw std::logic_error("unknown action set variant");
}

ActionSet make_action_set(ActionSetVariant variant, double eta_star,
                          double mu_star, double delta_star) {
  ActionSet set;
  switch (variant) {
    case ActionSetVariant::kH1:
      set.name = "H1";
      set.entries = {
          ActionEntry::nag(0.5 * eta_star, mu_star, delta_star),
          ActionEntry::nag(eta_star, mu_star, delta_star),
      };
      break;
    case ActionSetVariant::kH2:
      set.name = "H2";
      set.entries = {
          ActionEntry::nag(0.25 * eta_star, mu_star, delta_star),
          ActionEntry::nag(0.5 * eta_star, mu_star, delta_star),
          ActionEntry::nag(eta_star, mu_star, delta_star),
          ActionEntry::nag(2.0 * eta_star, mu_star, delta_star),
      };
      break;
    case ActionSetVariant::kH3:
      set.name = "H3";
      set.entries = {
          ActionEntry::guru(-1.0, 1.0),
          ActionEntry::gd(0.003),
          ActionEntry::gd(0.001),
          ActionEntry::nag(0.0006, 0.6, 1e-4),
      };
      break;
  }
  set.validate();
  return set;
}

std::uint64_t action_set_hash(const ActionSet& set) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix_bytes = [&h](const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ULL;
    }
  };
  auto mix_f64 = [&](double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    mix_bytes(&bits, sizeof bits);
  };
  for (const ActionEntry& e : set.entries) {
    const auto kind = static_cast<std::uint8_t>(e.kind);
    mix_bytes(&kind, 1);
    mix_f64(e.params.eta);
    mix_f64(e.params.mu);
    mix_f64(e.params.delta);
    mix_f64(e.params.lb);
    mix_f64(e.params.ub);
  }
  return h;
}

}  // namespace sus
