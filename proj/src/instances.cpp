#include "contractlab/instances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "contractlab/model.hpp"
#include "contractlab/rng.hpp"

namespace contractlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBoundaryGuard = 1e-9;

std::string tuple_name(std::span<const std::size_t> t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += "_";
    s += std::to_string(t[i]);
  }
  return s;
}

// Per-coordinate agent-indifference margins around a discounted cell b.
// A cost bonus of size `bonus` on coordinate value b enlarges the cell
// [b eps, (b+1) eps) on both sides; the tie with b-1 (resp. b+1) moves by
// 2 m bonus (1-b eps)(1-(b-/+1) eps) / eps.
double margin_lo(std::size_t b, double bonus, double eps, std::size_t m) {
  return 2.0 * static_cast<double>(m) * bonus * (1.0 - static_cast<double>(b) * eps) *
         (1.0 - (static_cast<double>(b) - 1.0) * eps) / eps;
}

double margin_hi(std::size_t b, double bonus, double eps, std::size_t m) {
  return 2.0 * static_cast<double>(m) * bonus * (1.0 - static_cast<double>(b) * eps) *
         (1.0 - (static_cast<double>(b) + 1.0) * eps) / eps;
}

struct CoordBonus {
  std::size_t at = 0;   // discounted index value
  double bonus = 0.0;   // per-coordinate cost reduction
};

// Cost bonuses active on one coordinate of one family instance.
std::vector<CoordBonus> coord_bonuses(const LowerBoundFamily& fam,
                                      const PerturbedInstance* which,
                                      std::size_t coord) {
  std::vector<CoordBonus> out;
  if (!which) return out;
  const double m = static_cast<double>(fam.m_free);
  const double e2 = fam.eps * fam.eps;
  if (!which->is_sentinel) out.push_back({which->l[coord], e2 / (10.0 * m)});
  out.push_back({fam.sentinel_index, e2 / (20.0 * m)});
  return out;
}

}  // namespace

bool RegionBox::contains(std::span<const double> x) const {
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (!(x[i] >= lo[i] && x[i] < hi[i])) return false;
  return true;
}

std::size_t LowerBoundFamily::action_id(std::span<const std::size_t> tuple) const {
  std::size_t id = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i)
    id = id * actions_per_coord + tuple[i];
  return id + 1;  // 0 is the null action
}

std::vector<std::size_t> LowerBoundFamily::action_tuple(std::size_t id) const {
  if (id == 0) throw std::invalid_argument("action_tuple: null action has no tuple");
  std::size_t rest = id - 1;
  std::vector<std::size_t> t(m_free);
  for (std::size_t i = m_free; i-- > 0;) {
    t[i] = rest % actions_per_coord;
    rest /= actions_per_coord;
  }
  return t;
}

namespace {

LowerBoundFamily make_lb_family(std::size_t m_free, double eps, bool linear) {
  if (!(eps > 0.0) || eps > 0.1 + 1e-12)
    throw std::invalid_argument("lower-bound family requires 0 < eps <= 0.1");
  if (m_free == 0) throw std::invalid_argument("lower-bound family: m_free >= 1");
  const auto eighth = static_cast<std::size_t>(std::floor(1.0 / (8.0 * eps) + 1e-9));
  if (eighth < 1)
    throw std::invalid_argument("lower-bound family: floor(1/(8 eps)) must be >= 1");

  LowerBoundFamily fam;
  fam.m_free = m_free;
  fam.eps = eps;
  fam.linear = linear;
  fam.actions_per_coord = static_cast<std::size_t>(std::floor(1.0 / (2.0 * eps) + 1e-9));
  fam.sentinel_index = 2 * eighth + 2;
  if (fam.sentinel_index > fam.actions_per_coord - 1)
    throw std::invalid_argument(
        "lower-bound family: sentinel index " + std::to_string(fam.sentinel_index) +
        " exceeds the largest action index " + std::to_string(fam.actions_per_coord - 1) +
        " at eps=" + std::to_string(eps));

  const std::size_t m_out = m_free + 1;
  const double md = static_cast<double>(m_free);
  const std::size_t K = fam.actions_per_coord;

  // Base instance: single type, v = (0, 1, ..., 1), one action per tuple.
  Instance base;
  base.outcomes.values.assign(m_out, 1.0);
  base.outcomes.values[0] = 0.0;

  AgentType ty;
  ty.weight = 1.0;
  ActionSpec null_action;
  null_action.prob.assign(m_out, 0.0);
  null_action.prob[0] = 1.0;
  ty.actions.push_back(null_action);

  // Per-coordinate pieces of p and c for index value k.
  std::vector<double> coord_prob(K), coord_cost(K);
  for (std::size_t k = 0; k < K; ++k) {
    double ke = static_cast<double>(k) * eps;
    coord_prob[k] = 1.0 / (2.0 * (1.0 - ke) * md);
    double tail = 0.0;
    for (std::size_t j = 0; j < k; ++j) tail += eps / (1.0 - static_cast<double>(j) * eps);
    coord_cost[k] = (ke / (1.0 - ke) - tail) / (2.0 * md);
  }

  std::vector<std::size_t> tuple(m_free, 0);
  while (true) {
    ActionSpec act;
    act.prob.assign(m_out, 0.0);
    double mass = 0.0;
    for (std::size_t i = 0; i < m_free; ++i) {
      act.prob[i + 1] = coord_prob[tuple[i]];
      mass += coord_prob[tuple[i]];
      act.cost += coord_cost[tuple[i]];
    }
    act.prob[0] = 1.0 - mass;
    ty.actions.push_back(std::move(act));

    std::size_t axis = m_free;
    bool done = false;
    while (axis > 0) {
      --axis;
      if (++tuple[axis] < K) break;
      tuple[axis] = 0;
      if (axis == 0) done = true;
    }
    if (done) break;
  }
  base.types.push_back(std::move(ty));
  const std::string prefix = std::string(linear ? "linear-lower-bound" : "lower-bound") +
                             "-m" + std::to_string(m_free) + "-eps" + std::to_string(eps);
  base.name = prefix + "-base";
  fam.base = std::move(base);

  const std::size_t s = fam.sentinel_index;
  const double e2 = eps * eps;

  // Apply per-coordinate cost reductions to a copy of the base instance.
  auto perturb = [&](std::span<const std::size_t> l, bool sentinel_only) {
    Instance inst = fam.base;
    AgentType& t0 = inst.types[0];
    for (std::size_t id = 1; id < t0.actions.size(); ++id) {
      auto kt = fam.action_tuple(id);
      double cut = 0.0;
      for (std::size_t i = 0; i < m_free; ++i) {
        if (!sentinel_only && kt[i] == l[i]) cut += e2 / (10.0 * md);
        if (kt[i] == s) cut += e2 / (20.0 * md);
      }
      t0.actions[id].cost -= cut;
    }
    return inst;
  };

  auto region_for = [&](std::span<const std::size_t> l, double lo_scale, double hi_scale) {
    RegionBox box;
    for (std::size_t i = 0; i < m_free; ++i) {
      double le = static_cast<double>(l[i]) * eps;
      box.lo.push_back(le - lo_scale * (1.0 - le) * (1.0 - le + eps));
      if (l[i] + 1 > K - 1)
        box.hi.push_back(kInf);
      else
        box.hi.push_back(le + eps + hi_scale * (1.0 - le) * (1.0 - le - eps));
    }
    return box;
  };

  // Even index tuples l_i in {2, 4, ..., 2*floor(1/(8 eps))}.
  std::vector<std::size_t> even(eighth);
  for (std::size_t j = 0; j < eighth; ++j) even[j] = 2 * (j + 1);

  std::vector<std::size_t> pick(m_free, 0);
  while (true) {
    std::vector<std::size_t> l(m_free);
    for (std::size_t i = 0; i < m_free; ++i) l[i] = even[pick[i]];

    PerturbedInstance p;
    p.l = l;
    p.instance = perturb(l, false);
    p.instance.name = prefix + "-l" + tuple_name(l);
    p.region = region_for(l, eps / 5.0, eps / 5.0);
    p.optimum = 0.5;
    for (std::size_t i = 0; i < m_free; ++i) {
      double le = static_cast<double>(l[i]) * eps;
      p.optimizer_x.push_back(le - (1.0 - le) * (1.0 - le + eps) * eps / 5.0);
      p.optimum += (1.0 - le + eps) * eps / (10.0 * md);
    }
    fam.perturbed.push_back(std::move(p));

    std::size_t axis = m_free;
    bool done = false;
    while (axis > 0) {
      --axis;
      if (++pick[axis] < eighth) break;
      pick[axis] = 0;
      if (axis == 0) done = true;
    }
    if (done) break;
  }

  // Sentinel instance: only the eps^2/(20 m) reduction at coordinate value s.
  {
    std::vector<std::size_t> l(m_free, s);
    PerturbedInstance p;
    p.l = l;
    p.is_sentinel = true;
    p.instance = perturb(l, true);
    p.instance.name = prefix + "-sentinel";
    p.region = region_for(l, eps / 20.0, eps / 20.0);
    p.optimum = 0.5;
    double se = static_cast<double>(s) * eps;
    for (std::size_t i = 0; i < m_free; ++i) {
      p.optimizer_x.push_back(se - (1.0 - se) * (1.0 - se + eps) * eps / 10.0);
      p.optimum += (1.0 - se + eps) * eps / (20.0 * md);
    }
    fam.sentinel = std::move(p);
  }
  return fam;
}

}  // namespace

LowerBoundFamily gen_lower_bound_family(std::size_t m_free, double eps) {
  return make_lb_family(m_free, eps, false);
}

LowerBoundFamily gen_linear_lower_bound_family(double eps) {
  return make_lb_family(1, eps, true);
}

Instance gen_dynamic_pricing(std::span<const double> costs,
                             std::span<const double> weights) {
  if (costs.empty()) throw std::invalid_argument("gen_dynamic_pricing: no costs");
  if (!weights.empty() && weights.size() != costs.size())
    throw std::invalid_argument("gen_dynamic_pricing: weights/costs size mismatch");

  Instance inst;
  inst.name = "pricing";
  inst.outcomes.values = {0.0, 1.0};
  const double uniform = 1.0 / static_cast<double>(costs.size());
  for (std::size_t i = 0; i < costs.size(); ++i) {
    if (costs[i] < 0.0 || costs[i] > 1.0)
      throw std::invalid_argument("gen_dynamic_pricing: cost outside [0,1]");
    AgentType ty;
    ty.weight = weights.empty() ? uniform : weights[i];
    ActionSpec null_action{{1.0, 0.0}, 0.0};
    ActionSpec sell{{0.0, 1.0}, costs[i]};
    ty.actions = {null_action, sell};
    inst.types.push_back(std::move(ty));
  }
  return inst;
}

Instance gen_random_instance(std::size_t m, std::size_t n_types,
                             std::size_t n_actions, std::uint64_t seed) {
  if (m < 2) throw std::invalid_argument("gen_random_instance: m >= 2");
  if (n_types == 0 || n_actions == 0)
    throw std::invalid_argument("gen_random_instance: empty types/actions");
  Rng rng(seed);

  Instance inst;
  inst.name = "random-m" + std::to_string(m) + "-seed" + std::to_string(seed);
  inst.outcomes.values.assign(m, 0.0);
  for (std::size_t o = 1; o < m; ++o) inst.outcomes.values[o] = rng.uniform01();
  std::sort(inst.outcomes.values.begin() + 1, inst.outcomes.values.end());

  std::vector<double> w(n_types);
  double wsum = 0.0;
  for (double& x : w) {
    x = -std::log(1.0 - rng.uniform01());
    wsum += x;
  }

  for (std::size_t i = 0; i < n_types; ++i) {
    AgentType ty;
    ty.weight = w[i] / wsum;
    ActionSpec null_action;
    null_action.prob.assign(m, 0.0);
    null_action.prob[0] = 1.0;
    ty.actions.push_back(std::move(null_action));
    for (std::size_t a = 1; a < n_actions; ++a) {
      ActionSpec act;
      act.prob.assign(m, 0.0);
      double psum = 0.0;
      for (double& p : act.prob) {
        p = -std::log(1.0 - rng.uniform01());
        psum += p;
      }
      for (double& p : act.prob) p /= psum;
      act.cost = rng.uniform01();
      ty.actions.push_back(std::move(act));
    }
    inst.types.push_back(std::move(ty));
  }
  return inst;
}

Instance gen_fosd_instance(std::size_t m, std::size_t n_actions,
                           std::uint64_t seed) {
  if (m < 2) throw std::invalid_argument("gen_fosd_instance: m >= 2");
  if (n_actions < 1) throw std::invalid_argument("gen_fosd_instance: n_actions >= 1");
  Rng rng(seed);

  Instance inst;
  inst.name = "fosd-m" + std::to_string(m) + "-seed" + std::to_string(seed);
  inst.outcomes.values.assign(m, 0.0);
  for (std::size_t o = 1; o < m; ++o) inst.outcomes.values[o] = rng.uniform01();
  std::sort(inst.outcomes.values.begin() + 1, inst.outcomes.values.end());

  const std::size_t extra = n_actions - 1;
  // Survival matrix S[a][o] = P(X >= o+1), one row per non-null action.
  std::vector<std::vector<double>> survival(extra, std::vector<double>(m - 1));
  for (auto& row : survival) {
    std::vector<double> p(m);
    double psum = 0.0;
    for (double& x : p) {
      x = -std::log(1.0 - rng.uniform01());
      psum += x;
    }
    for (double& x : p) x /= psum;
    double tail = 0.0;
    for (std::size_t o = m; o-- > 1;) {
      tail += p[o];
      row[o - 1] = tail;
    }
  }
  // Sorting each threshold column across actions yields totally ordered
  // survival rows while keeping each row non-increasing.
  for (std::size_t o = 0; o + 1 < m; ++o) {
    std::vector<double> col(extra);
    for (std::size_t a = 0; a < extra; ++a) col[a] = survival[a][o];
    std::sort(col.begin(), col.end());
    for (std::size_t a = 0; a < extra; ++a) survival[a][o] = col[a];
  }

  std::vector<double> costs(extra);
  for (double& c : costs) c = rng.uniform01();
  std::sort(costs.begin(), costs.end());

  AgentType ty;
  ty.weight = 1.0;
  ActionSpec null_action;
  null_action.prob.assign(m, 0.0);
  null_action.prob[0] = 1.0;
  ty.actions.push_back(std::move(null_action));
  for (std::size_t a = 0; a < extra; ++a) {
    ActionSpec act;
    act.prob.assign(m, 0.0);
    act.prob[0] = 1.0 - survival[a][0];
    for (std::size_t o = 1; o < m; ++o) {
      double next = o < m - 1 ? survival[a][o] : 0.0;
      act.prob[o] = survival[a][o - 1] - next;
    }
    act.cost = costs[a];
    ty.actions.push_back(std::move(act));
  }
  inst.types.push_back(std::move(ty));
  return inst;
}

FosdReport verify_fosd(const Instance& inst) {
  FosdReport report;
  const std::size_t m = inst.num_outcomes();
  for (std::size_t i = 0; i < inst.types.size(); ++i) {
    const auto& actions = inst.types[i].actions;
    std::vector<std::vector<double>> survival(actions.size(),
                                              std::vector<double>(m, 0.0));
    for (std::size_t a = 0; a < actions.size(); ++a) {
      double tail = 0.0;
      for (std::size_t o = m; o-- > 0;) {
        tail += actions[a].prob[o];
        survival[a][o] = tail;
      }
    }
    for (std::size_t a = 0; a < actions.size(); ++a)
      for (std::size_t b = a + 1; b < actions.size(); ++b) {
        bool a_dom = true, b_dom = true;
        for (std::size_t o = 0; o < m; ++o) {
          if (survival[a][o] < survival[b][o] - kTieTol) a_dom = false;
          if (survival[b][o] < survival[a][o] - kTieTol) b_dom = false;
        }
        if (!a_dom && !b_dom) report.failures.push_back({i, a, b});
      }
  }
  return report;
}

std::size_t predict_lb_action(const LowerBoundFamily& fam,
                              const PerturbedInstance* which,
                              std::span<const double> x, double guard) {
  const double eps = fam.eps;
  const std::size_t K = fam.actions_per_coord;
  std::vector<std::size_t> tuple(fam.m_free);

  for (std::size_t i = 0; i < fam.m_free; ++i) {
    if (x[i] < 0.0) return SIZE_MAX;  // outside the stated tiling
    // Plain cell, clamped at the top (the top cell is unbounded above).
    auto k = static_cast<std::size_t>(std::floor(x[i] / eps));
    k = std::min(k, K - 1);
    // Within guard of a plain cell edge? Edges above (K-1) eps do not exist.
    auto edge = static_cast<std::size_t>(std::llround(x[i] / eps));
    bool near_boundary =
        edge <= K - 1 && std::abs(x[i] - static_cast<double>(edge) * eps) < guard;

    // Bonused cells stretch over their neighbors.
    for (const CoordBonus& cb : coord_bonuses(fam, which, i)) {
      double be = static_cast<double>(cb.at) * eps;
      double lo = be - margin_lo(cb.at, cb.bonus, eps, fam.m_free);
      double hi = cb.at + 1 > K - 1
                      ? kInf
                      : be + eps + margin_hi(cb.at, cb.bonus, eps, fam.m_free);
      if (x[i] >= lo && x[i] < hi) {
        k = cb.at;
        near_boundary = std::abs(x[i] - lo) < guard ||
                        (hi != kInf && std::abs(x[i] - hi) < guard);
      } else if (std::abs(x[i] - lo) < guard ||
                 (hi != kInf && std::abs(x[i] - hi) < guard)) {
        near_boundary = true;
      }
    }
    if (near_boundary) return SIZE_MAX;
    tuple[i] = k;
  }
  return fam.action_id(tuple);
}

RegionReport verify_regions(const LowerBoundFamily& fam, std::size_t n_samples,
                            std::uint64_t seed) {
  RegionReport report;
  Rng rng(seed);
  const std::size_t m_free = fam.m_free;

  std::vector<const PerturbedInstance*> variants;
  variants.push_back(nullptr);  // base
  for (const auto& p : fam.perturbed) variants.push_back(&p);
  variants.push_back(&fam.sentinel);

  std::vector<double> x(m_free);
  for (const PerturbedInstance* which : variants) {
    const Instance& inst = which ? which->instance : fam.base;
    std::size_t accepted = 0;
    while (accepted < n_samples) {
      // Uniform over contracts with f_i >= f_0, the domain the cells tile.
      double f0 = rng.uniform01();
      bool ok = true;
      for (std::size_t i = 0; i < m_free; ++i) {
        double fi = rng.uniform01();
        x[i] = fi - f0;
        if (x[i] < 0.0) ok = false;
      }
      if (!ok) continue;
      ++accepted;

      std::size_t predicted = predict_lb_action(fam, which, x, kBoundaryGuard);
      if (predicted == SIZE_MAX) {
        ++report.skipped;
        continue;
      }
      Contract f;
      f.payments.assign(m_free + 1, f0);
      for (std::size_t i = 0; i < m_free; ++i) f.payments[i + 1] = f0 + x[i];

      std::size_t actual = best_response(inst, 0, f);
      ++report.samples_checked;
      if (actual != predicted)
        report.mismatches.push_back({inst.name, f, predicted, actual});

      // Disjointness of the perturbed boxes, checked on the same samples.
      std::size_t overlap = 0;
      for (const auto& p : fam.perturbed)
        if (p.region.contains(x)) ++overlap;
      if (fam.sentinel.region.contains(x)) ++overlap;
      report.max_region_overlap = std::max(report.max_region_overlap, overlap);
    }
  }
  return report;
}

}  // namespace contractlab
