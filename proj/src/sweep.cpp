#include "contractlab/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "contractlab/discretize.hpp"
#include "contractlab/learners.hpp"
#include "contractlab/oracle.hpp"
#include "contractlab/trace.hpp"

namespace contractlab {

LearnerKind learner_kind_from_name(const std::string& name) {
  if (name == "general") return LearnerKind::General;
  if (name == "linear") return LearnerKind::Linear;
  if (name == "fosd") return LearnerKind::Fosd;
  throw std::invalid_argument("unknown learner: " + name);
}

SlopeFit estimate_slope(std::span<const SweepRow> rows) {
  std::map<std::size_t, std::pair<double, std::size_t>> by_T;  // sum, count
  for (const SweepRow& r : rows) {
    auto& [sum, count] = by_T[r.horizon];
    sum += r.final_regret;
    count += 1;
  }

  SlopeFit fit;
  std::vector<double> xs, ys;
  for (const auto& [T, agg] : by_T) {
    double mean = agg.first / static_cast<double>(agg.second);
    if (mean <= 0.0) {
      fit.warnings.push_back("T=" + std::to_string(T) +
                             " excluded: non-positive mean regret");
      continue;
    }
    xs.push_back(std::log(static_cast<double>(T)));
    ys.push_back(std::log(mean));
  }
  const std::size_t n = xs.size();
  if (n < 2)
    throw std::invalid_argument("estimate_slope: need >= 2 horizons with positive regret");

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  if (n > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double resid = ys[i] - my - fit.slope * (xs[i] - mx);
      rss += resid * resid;
    }
    fit.stderr_ = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  }
  return fit;
}

SweepResult run_sweep(LearnerKind learner, const Instance& inst,
                      std::span<const std::size_t> horizons, std::size_t reps,
                      std::uint64_t seed) {
  if (horizons.empty() || reps == 0)
    throw std::invalid_argument("run_sweep: empty horizons or reps");

  struct Task {
    std::size_t T;
    std::uint64_t seed;
    const DiscretizedContractSet* arms = nullptr;
  };

  // The general learner's dimension estimate, cover, and oracle depend only
  // on (instance, T); build them once per horizon instead of per rep.
  std::map<std::size_t, DiscretizedContractSet> general_arms;
  std::optional<double> general_best;
  if (learner == LearnerKind::General) {
    ContractFamily fam = ContractFamily::full_cube(inst.outcomes.values);
    const double eps_grid[] = {0.05, 0.08};
    DimensionEstimate est = estimate_intrinsic_dimension(fam, eps_grid);
    for (std::size_t T : horizons) {
      double eps = std::pow(static_cast<double>(T), -1.0 / (2.0 * est.d_hat + 3.0));
      eps = std::min(eps, 1.0 - 1e-9);
      general_arms.emplace(T, build_S_eps(fam, eps));
    }
    std::size_t dim = fam.dim();
    double res = dim <= 1 ? 1e-4 : dim == 2 ? 1e-3 : dim == 3 ? 1e-2 : 0.05;
    general_best = grid_optimal_contract(inst, fam, res).best_utility;
  }

  std::vector<Task> tasks;
  for (std::size_t T : horizons)
    for (std::size_t rep = 0; rep < reps; ++rep) {
      const DiscretizedContractSet* arms =
          learner == LearnerKind::General ? &general_arms.at(T) : nullptr;
      tasks.push_back({T, seed + rep, arms});
    }

  SweepResult result;
  result.rows.resize(tasks.size());

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      try {
        auto start = std::chrono::steady_clock::now();
        RegretTrace trace;
        switch (learner) {
          case LearnerKind::General: {
            ContractFamily fam = ContractFamily::full_cube(inst.outcomes.values);
            GeneralLearnerOptions opts;
            opts.arms = tasks[i].arms;
            opts.known_best_utility = general_best;
            trace = run_general_learner(inst, fam, tasks[i].T, tasks[i].seed, opts);
            break;
          }
          case LearnerKind::Linear:
            trace = run_linear_learner(inst, tasks[i].T, tasks[i].seed);
            break;
          case LearnerKind::Fosd:
            trace = run_fosd_learner(inst, tasks[i].T, tasks[i].seed);
            break;
        }
        auto stop = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(stop - start).count();
        result.rows[i] = {tasks[i].T, tasks[i].seed, trace.final_regret(), ms};
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(tasks.size());
        break;
      }
    }
  };

  std::size_t n_threads = std::min<std::size_t>(
      tasks.size(), std::max<std::size_t>(1, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);

  result.fit = estimate_slope(result.rows);
  return result;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  os << "T,seed,final_regret,wall_ms\n";
  for (const SweepRow& r : result.rows)
    os << r.horizon << ',' << r.seed << ',' << format_double(r.final_regret) << ','
       << format_double(r.wall_ms) << '\n';
}

}  // namespace contractlab
