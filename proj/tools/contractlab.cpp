// contractlab — generate principal-agent instances, run online contract
// learners, sweep horizons for regret slopes, and verify the library's
// structural properties. All outputs are deterministic given --seed.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "contractlab/discretize.hpp"
#include "contractlab/family.hpp"
#include "contractlab/instances.hpp"
#include "contractlab/io.hpp"
#include "contractlab/learners.hpp"
#include "contractlab/model.hpp"
#include "contractlab/sweep.hpp"
#include "contractlab/verify.hpp"

namespace cl = contractlab;

namespace {

std::vector<std::size_t> parse_horizons(const std::string& csv) {
  std::vector<std::size_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(static_cast<std::size_t>(std::stoull(item)));
  }
  if (out.empty()) throw std::runtime_error("--T: no horizons given");
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
  os << text;
}

// Default instance per family name, used by gen and sweep.
cl::Instance make_family_instance(const std::string& family, std::size_t m,
                                  double eps, std::uint64_t seed) {
  if (family == "pricing") {
    std::vector<double> costs = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    return cl::gen_dynamic_pricing(costs, {});
  }
  if (family == "random") return cl::gen_random_instance(m, 2, 4, seed);
  if (family == "fosd") return cl::gen_fosd_instance(m, 5, seed);
  if (family == "lower-bound")
    return cl::gen_lower_bound_family(m, eps).perturbed.front().instance;
  if (family == "linear-lower-bound")
    return cl::gen_linear_lower_bound_family(eps).perturbed.front().instance;
  throw std::runtime_error("unknown family: " + family);
}

int cmd_gen(const std::string& family, std::size_t m, double eps,
            std::uint64_t seed, const std::string& out) {
  if (family == "lower-bound" || family == "linear-lower-bound") {
    cl::LowerBoundFamily fam = family == "lower-bound"
                                   ? cl::gen_lower_bound_family(m, eps)
                                   : cl::gen_linear_lower_bound_family(eps);
    auto manifest = cl::write_family_manifest(out, fam);
    std::cout << "wrote manifest " << manifest.string() << " ("
              << fam.perturbed.size() + 2 << " instances)\n";
    return 0;
  }
  cl::Instance inst = make_family_instance(family, m, eps, seed);
  cl::save_instance(out, inst);
  std::cout << "wrote " << out << "\n";
  return 0;
}

int cmd_run(const std::string& learner, const std::string& instance_path,
            std::size_t T, std::uint64_t seed, const std::string& out,
            std::optional<double> exponent) {
  cl::Instance inst = cl::load_instance(instance_path);
  cl::RegretTrace trace;
  if (learner == "general") {
    cl::ContractFamily fam = cl::ContractFamily::full_cube(inst.outcomes.values);
    cl::GeneralLearnerOptions opts;
    opts.exponent = exponent;
    trace = cl::run_general_learner(inst, fam, T, seed, opts);
  } else if (learner == "linear") {
    trace = cl::run_linear_learner(inst, T, seed);
  } else if (learner == "fosd") {
    trace = cl::run_fosd_learner(inst, T, seed);
  } else {
    throw std::runtime_error("unknown learner: " + learner);
  }
  write_file(out, cl::trace_to_csv(trace));
  std::cout << "learner=" << trace.learner << " eps=" << trace.eps
            << " arms=" << trace.arms.size() << " best_utility=" << trace.best_utility
            << " final_regret=" << trace.final_regret() << "\n";
  if (trace.d_hat) std::cout << "d_hat=" << *trace.d_hat << "\n";
  for (const auto& w : trace.warnings) std::cout << "warning: " << w << "\n";
  return 0;
}

int cmd_sweep(const std::string& learner, const std::string& family, std::size_t m,
              double eps, const std::string& horizons_csv, std::size_t reps,
              std::uint64_t seed, const std::string& out) {
  cl::Instance inst = make_family_instance(family, m, eps, seed);
  auto horizons = parse_horizons(horizons_csv);
  cl::SweepResult result =
      cl::run_sweep(cl::learner_kind_from_name(learner), inst, horizons, reps, seed);
  std::ostringstream oss;
  cl::write_sweep_csv(oss, result);
  write_file(out, oss.str());
  std::cout << "slope=" << result.fit.slope << " stderr=" << result.fit.stderr_ << "\n";
  for (const auto& w : result.fit.warnings) std::cout << "warning: " << w << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, std::size_t samples, std::uint64_t seed) {
  cl::SuiteReport report = cl::run_verify_suite(suite, samples, seed);
  std::cout << "suite=" << report.suite << " checked=" << report.checked
            << " violations=" << report.violations.size() << "\n";
  std::size_t shown = 0;
  for (const auto& v : report.violations) {
    if (++shown > 10) {
      std::cout << "  ... " << report.violations.size() - 10 << " more\n";
      break;
    }
    std::cout << "  " << v << "\n";
  }
  return report.ok() ? 0 : 1;
}

int cmd_cover(const std::string& family, std::size_t m, double eps,
              const std::string& out) {
  // Anchor v = (0, 1, ..., 1), the hard-family value vector.
  std::vector<double> v(m, 1.0);
  if (!v.empty()) v[0] = 0.0;
  cl::ContractFamily fam;
  if (family == "full-cube")
    fam = cl::ContractFamily::full_cube(v);
  else if (family == "linear")
    fam = cl::ContractFamily::linear(v);
  else
    throw std::runtime_error("unknown cover family: " + family);
  cl::DiscretizedContractSet set = cl::build_S_eps(fam, eps);
  cl::write_cover_json(out, set);
  std::cout << "directions=" << set.code.size() << " arms=" << set.arms.size() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"online contract design laboratory"};
  app.require_subcommand(1);

  std::string family = "lower-bound", learner = "linear", instance_path, out,
              horizons_csv = "1000,10000,100000", suite = "continuity";
  std::size_t m = 2, T = 1000, reps = 10, samples = 1000;
  std::uint64_t seed = 0;
  double eps = 0.05;
  std::optional<double> exponent;

  auto* gen = app.add_subcommand("gen", "generate an instance or instance family");
  gen->add_option("--family", family,
                  "lower-bound|linear-lower-bound|pricing|random|fosd")
      ->required();
  gen->add_option("--m", m, "free coordinates (lower-bound) or outcomes (random/fosd)");
  gen->add_option("--eps", eps, "cell width for the lower-bound families");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--out", out, "output path (family manifests write siblings)")
      ->required();

  auto* run = app.add_subcommand("run", "run one learner and write the trace CSV");
  run->add_option("--learner", learner, "general|linear|fosd")->required();
  run->add_option("--instance", instance_path, "instance JSON")->required();
  run->add_option("--T", T, "horizon")->required();
  run->add_option("--seed", seed, "run seed");
  run->add_option("--out", out, "trace CSV path")->required();
  run->add_option("--exponent", exponent,
                  "override: eps = T^exponent for the general learner");

  auto* sweep = app.add_subcommand("sweep", "sweep horizons and fit the regret slope");
  sweep->add_option("--learner", learner, "general|linear|fosd")->required();
  sweep->add_option("--family", family,
                    "pricing|lower-bound|linear-lower-bound|random|fosd")
      ->required();
  sweep->add_option("--m", m, "family dimension parameter");
  sweep->add_option("--eps", eps, "family eps parameter");
  sweep->add_option("--T", horizons_csv, "comma-separated horizons");
  sweep->add_option("--reps", reps, "repetitions per horizon");
  sweep->add_option("--seed", seed, "base seed; rep r uses seed + r");
  sweep->add_option("--out", out, "sweep CSV path")->required();

  auto* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("--suite", suite,
                     "continuity|geometry|linear-monotone|regions|fosd|payoffs")
      ->required();
  verify->add_option("--samples", samples, "sampling effort");
  verify->add_option("--seed", seed, "suite seed");

  auto* cover = app.add_subcommand("cover", "emit a direction code and arm set");
  cover->add_option("--family", family, "full-cube|linear")->required();
  cover->add_option("--m", m, "contract dimension")->required();
  cover->add_option("--eps", eps, "discretization eps")->required();
  cover->add_option("--out", out, "JSON output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(family, m, eps, seed, out);
    if (run->parsed()) return cmd_run(learner, instance_path, T, seed, out, exponent);
    if (sweep->parsed())
      return cmd_sweep(learner, family, m, eps, horizons_csv, reps, seed, out);
    if (verify->parsed()) return cmd_verify(suite, samples, seed);
    if (cover->parsed()) return cmd_cover(family, m, eps, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
