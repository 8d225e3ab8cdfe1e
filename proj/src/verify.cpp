#include "contractlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "contractlab/instances.hpp"
#include "contractlab/model.hpp"
#include "contractlab/rng.hpp"

namespace contractlab {

namespace {

constexpr double kLemmaTol = 1e-9;

Instance random_instance_for(std::size_t i, Rng& rng) {
  std::size_t m = 2 + i % 3;
  std::size_t n_types = 1 + i % 2;
  std::size_t n_actions = 2 + i % 4;
  return gen_random_instance(m, n_types, n_actions, rng.raw());
}

double linf(const std::vector<double>& x) {
  double n = 0.0;
  for (double v : x) n = std::max(n, std::abs(v));
  return n;
}

std::string describe(const Instance& inst, const Contract& f) {
  std::string s = inst.name + " f=(";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(f.payments[i]);
  }
  return s + ")";
}

SuiteReport continuity_suite(std::size_t samples, std::uint64_t seed) {
  SuiteReport report{"continuity", 0, {}};
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    Instance inst = random_instance_for(i, rng);
    const std::size_t m = inst.num_outcomes();
    const auto& v = inst.outcomes.values;
    for (int probe = 0; probe < 10; ++probe) {
      Contract f;
      f.payments.resize(m);
      for (double& x : f.payments) x = rng.uniform01();

      double alpha = 0.0;
      std::vector<double> r(m), gamma(m);
      Contract g;
      g.payments.resize(m);
      // gamma = alpha (v - f) + r with f + gamma staying inside the cube;
      // r = 0 is always feasible, so rejection terminates.
      for (int attempt = 0; attempt < 64; ++attempt) {
        alpha = 1.0 - rng.uniform01() * (1.0 - 1e-6);  // (0, 1]
        double scale = attempt < 48 ? 0.2 * alpha * rng.uniform01() : 0.0;
        bool inside = true;
        for (std::size_t o = 0; o < m; ++o) {
          r[o] = scale * (2.0 * rng.uniform01() - 1.0);
          gamma[o] = alpha * (v[o] - f.payments[o]) + r[o];
          double y = f.payments[o] + gamma[o];
          g.payments[o] = y;
          if (y < 0.0 || y > 1.0) inside = false;
        }
        if (inside) break;
      }

      double lhs = expected_utility(inst, f) - expected_utility(inst, g);
      double rhs = 2.0 * (linf(gamma) + linf(r) / alpha);
      ++report.checked;
      if (lhs > rhs + kLemmaTol)
        report.violations.push_back(describe(inst, f) + " lhs=" + std::to_string(lhs) +
                                    " rhs=" + std::to_string(rhs));
    }
  }
  return report;
}

SuiteReport geometry_suite(std::size_t samples, std::uint64_t seed) {
  SuiteReport report{"geometry", 0, {}};
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    Instance inst = random_instance_for(i, rng);
    const std::size_t m = inst.num_outcomes();
    for (int probe = 0; probe < 10; ++probe) {
      Contract f, g;
      f.payments.resize(m);
      g.payments.resize(m);
      for (std::size_t o = 0; o < m; ++o) {
        f.payments[o] = rng.uniform01();
        g.payments[o] = rng.uniform01();
      }
      for (std::size_t ty = 0; ty < inst.types.size(); ++ty) {
        const auto& pf = inst.types[ty].actions[best_response(inst, ty, f)].prob;
        const auto& pg = inst.types[ty].actions[best_response(inst, ty, g)].prob;
        double s = 0.0;
        for (std::size_t o = 0; o < m; ++o)
          s += (pg[o] - pf[o]) * (g.payments[o] - f.payments[o]);
        ++report.checked;
        if (s < -kLemmaTol)
          report.violations.push_back(describe(inst, f) + " type=" + std::to_string(ty) +
                                      " sum=" + std::to_string(s));
      }
    }
  }
  return report;
}

SuiteReport linear_monotone_suite(std::size_t samples, std::uint64_t seed) {
  SuiteReport report{"linear-monotone", 0, {}};
  Rng rng(seed);
  auto u_at = [](const Instance& inst, double alpha) {
    Contract f;
    f.payments.resize(inst.num_outcomes());
    for (std::size_t o = 0; o < f.size(); ++o)
      f.payments[o] = alpha * inst.outcomes.values[o];
    return expected_utility(inst, f);
  };

  for (std::size_t i = 0; i < samples; ++i) {
    Instance inst = random_instance_for(i, rng);
    // u(alpha)/(1-alpha) non-decreasing over a 200-point grid.
    double prev = -1e300;
    for (int k = 0; k < 200; ++k) {
      double alpha = static_cast<double>(k) / 200.0;
      double ratio = u_at(inst, alpha) / (1.0 - alpha);
      ++report.checked;
      if (ratio < prev - kLemmaTol)
        report.violations.push_back(inst.name + " ratio drops at alpha=" +
                                    std::to_string(alpha));
      prev = std::max(prev, ratio);
    }
    // Right-continuity bound u(alpha) - u(alpha+eps) <= eps.
    for (int probe = 0; probe < 10; ++probe) {
      double alpha = rng.uniform01();
      double step = rng.uniform01() * (1.0 - alpha);
      double drop = u_at(inst, alpha) - u_at(inst, alpha + step);
      ++report.checked;
      if (drop > step + kLemmaTol)
        report.violations.push_back(inst.name + " drop " + std::to_string(drop) +
                                    " > eps " + std::to_string(step) + " at alpha=" +
                                    std::to_string(alpha));
    }
  }
  return report;
}

SuiteReport regions_suite(std::size_t samples, std::uint64_t seed) {
  SuiteReport report{"regions", 0, {}};
  std::vector<LowerBoundFamily> families;
  for (std::size_t m_free : {1, 2})
    for (double eps : {0.05, 0.1}) families.push_back(gen_lower_bound_family(m_free, eps));
  families.push_back(gen_linear_lower_bound_family(0.05));
  families.push_back(gen_linear_lower_bound_family(0.1));

  std::uint64_t sub = 0;
  for (const LowerBoundFamily& fam : families) {
    RegionReport rr = verify_regions(fam, samples, seed + sub++);
    report.checked += rr.samples_checked;
    for (const auto& mm : rr.mismatches)
      report.violations.push_back(mm.instance_name + " predicted action " +
                                  std::to_string(mm.predicted_action) + " got " +
                                  std::to_string(mm.actual_action));
    if (rr.max_region_overlap > 1)
      report.violations.push_back(fam.base.name + " perturbed regions overlap");
  }
  return report;
}

SuiteReport fosd_suite(std::size_t samples, std::uint64_t seed) {
  SuiteReport report{"fosd", 0, {}};
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    std::size_t m = 2 + i % 4;
    std::size_t n_actions = 2 + i % 6;
    Instance inst = gen_fosd_instance(m, n_actions, rng.raw());
    ++report.checked;
    if (!verify_fosd(inst).ok())
      report.violations.push_back(inst.name + " failed the dominance check");
    if (!validate_instance(inst).empty())
      report.violations.push_back(inst.name + " failed instance validation");
  }
  // Crossing CDFs must be flagged with the offending pair.
  Instance crossing;
  crossing.name = "crossing";
  crossing.outcomes.values = {0.0, 0.5, 1.0};
  AgentType ty;
  ty.weight = 1.0;
  ty.actions.push_back({{1.0, 0.0, 0.0}, 0.0});
  ty.actions.push_back({{0.2, 0.8, 0.0}, 0.1});
  ty.actions.push_back({{0.5, 0.0, 0.5}, 0.2});
  crossing.types.push_back(ty);
  FosdReport fr = verify_fosd(crossing);
  ++report.checked;
  if (fr.ok() || fr.failures.front().action_a != 1 || fr.failures.front().action_b != 2)
    report.violations.push_back("crossing-CDF counterexample not flagged as (1,2)");
  return report;
}

SuiteReport payoffs_suite(std::size_t samples, std::uint64_t seed) {
  SuiteReport report{"payoffs", 0, {}};
  Rng rng(seed);
  const std::size_t m_frees[] = {1, 2};
  const double eps_values[] = {0.05, 0.1};
  for (std::size_t m_free : m_frees)
    for (double eps : eps_values) {
      LowerBoundFamily fam = gen_lower_bound_family(m_free, eps);
      const std::size_t K = fam.actions_per_coord;

      // Base payoff identity: u = 1/2 at f_0 = 0, f_i = k_i eps.
      std::size_t tuples = 1;
      for (std::size_t i = 0; i < m_free; ++i) tuples *= K;
      std::size_t n_check = std::min<std::size_t>(tuples, std::max<std::size_t>(samples, 8));
      for (std::size_t c = 0; c < n_check; ++c) {
        std::size_t flat = tuples <= n_check ? c : rng.below(tuples);
        Contract f;
        f.payments.assign(m_free + 1, 0.0);
        std::size_t rest = flat;
        for (std::size_t i = m_free; i-- > 0;) {
          f.payments[i + 1] = static_cast<double>(rest % K) * eps;
          rest /= K;
        }
        double u = expected_utility(fam.base, f);
        ++report.checked;
        if (std::abs(u - 0.5) > kLemmaTol)
          report.violations.push_back(fam.base.name + " u=" + std::to_string(u) +
                                      " != 1/2 at a cell corner");
      }

      // Perturbed optima: closed form matches a local eps/50 grid around the
      // optimizer, and clears 1/2 + eps/20.
      for (const PerturbedInstance& p : fam.perturbed) {
        double local_best = -1.0;
        double step = eps / 50.0;
        std::vector<double> x(m_free);
        std::vector<int> off(m_free, -2);
        while (true) {
          Contract f;
          f.payments.assign(m_free + 1, 0.0);
          for (std::size_t i = 0; i < m_free; ++i)
            f.payments[i + 1] =
                std::clamp(p.optimizer_x[i] + off[i] * step, 0.0, 1.0);
          local_best = std::max(local_best, expected_utility(p.instance, f));
          std::size_t axis = m_free;
          bool done = false;
          while (axis > 0) {
            --axis;
            if (++off[axis] <= 2) break;
            off[axis] = -2;
            if (axis == 0) done = true;
          }
          if (done) break;
        }
        ++report.checked;
        if (std::abs(local_best - p.optimum) > static_cast<double>(m_free) * step + kLemmaTol)
          report.violations.push_back(p.instance.name + " local grid best " +
                                      std::to_string(local_best) + " vs closed form " +
                                      std::to_string(p.optimum));
        if (p.optimum < 0.5 + eps / 20.0 - kLemmaTol)
          report.violations.push_back(p.instance.name + " optimum below 1/2 + eps/20");
      }

      // Sentinel optimum bracket [1/2 + eps/30, 1/2 + eps/25].
      ++report.checked;
      if (fam.sentinel.optimum < 0.5 + eps / 30.0 - kLemmaTol ||
          fam.sentinel.optimum > 0.5 + eps / 25.0 + kLemmaTol)
        report.violations.push_back(fam.sentinel.instance.name +
                                    " optimum outside [1/2+eps/30, 1/2+eps/25]");
    }

  // Two-outcome flavor: p(0) = (1/2, 1/2), c(0) = 0, and utility 1/2 on the
  // alpha = k eps grid of the base instance.
  {
    LowerBoundFamily lin = gen_linear_lower_bound_family(0.1);
    const ActionSpec& a0 = lin.base.types[0].actions[1];
    ++report.checked;
    if (std::abs(a0.prob[0] - 0.5) > kLemmaTol || std::abs(a0.prob[1] - 0.5) > kLemmaTol ||
        std::abs(a0.cost) > kLemmaTol)
      report.violations.push_back("linear family k=0 action mismatch");
    for (std::size_t k = 0; k < lin.actions_per_coord; ++k) {
      Contract f{{0.0, static_cast<double>(k) * lin.eps}};
      ++report.checked;
      if (std::abs(expected_utility(lin.base, f) - 0.5) > kLemmaTol)
        report.violations.push_back("linear base utility != 1/2 at alpha=k eps");
    }
  }
  return report;
}

}  // namespace

SuiteReport run_verify_suite(const std::string& name, std::size_t samples,
                             std::uint64_t seed) {
  if (name == "continuity") return continuity_suite(samples, seed);
  if (name == "geometry") return geometry_suite(samples, seed);
  if (name == "linear-monotone") return linear_monotone_suite(samples, seed);
  if (name == "regions") return regions_suite(samples, seed);
  if (name == "fosd") return fosd_suite(samples, seed);
  if (name == "payoffs") return payoffs_suite(samples, seed);
  throw std::invalid_argument("unknown verify suite: " + name);
}

std::vector<std::string> verify_suite_names() {
  return {"continuity", "geometry", "linear-monotone", "regions", "fosd", "payoffs"};
}

}  // namespace contractlab
