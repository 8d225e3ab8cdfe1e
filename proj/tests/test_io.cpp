#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "contractlab/discretize.hpp"
#include "contractlab/instances.hpp"
#include "contractlab/io.hpp"

#include <json.hpp>

using namespace contractlab;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  fs::path dir = fs::temp_directory_path() / "contractlab_io_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("instance JSON round trip") {
  Instance inst = gen_random_instance(3, 2, 4, 555);
  fs::path p = temp_dir() / "roundtrip.json";
  save_instance(p, inst);
  Instance loaded = load_instance(p);
  CHECK(instance_to_json_text(inst) == instance_to_json_text(loaded));
}

TEST_CASE("loader rejects invalid instances with the violation report") {
  fs::path p = temp_dir() / "bad.json";
  {
    std::ofstream os(p);
    os << R"({"name":"bad","values":[0,1],
         "types":[{"weight":1.0,
           "actions":[{"prob":[1,0],"cost":0},{"prob":[0.1,0.8],"cost":0.2}]}]})";
  }
  CHECK_THROWS_WITH_AS(load_instance(p), doctest::Contains("prob"),
                       std::runtime_error);
  CHECK_THROWS_AS(load_instance(temp_dir() / "missing.json"), std::runtime_error);
}

TEST_CASE("family manifest writes instances and closed-form optima") {
  LowerBoundFamily fam = gen_lower_bound_family(1, 0.1);
  fs::path manifest_path = temp_dir() / "fam.json";
  write_family_manifest(manifest_path, fam);

  nlohmann::json manifest;
  std::ifstream(manifest_path) >> manifest;
  CHECK(manifest["family"] == "lower-bound");
  CHECK(manifest["perturbed"].size() == 1);
  CHECK(manifest["perturbed"][0]["optimum"].get<double>() ==
        doctest::Approx(0.509).epsilon(1e-12));

  // The referenced files load back as valid instances.
  for (const auto& entry : manifest["perturbed"]) {
    Instance inst =
        load_instance(manifest_path.parent_path() / entry["file"].get<std::string>());
    CHECK(!inst.types.empty());
  }
  Instance base = load_instance(manifest_path.parent_path() /
                                manifest["base"]["file"].get<std::string>());
  CHECK(base.types[0].actions.size() == 6);
}

TEST_CASE("cover JSON has eps, directions, and arms") {
  ContractFamily fam = ContractFamily::linear({0.0, 1.0});
  DiscretizedContractSet set = build_S_eps(fam, 0.25);
  fs::path p = temp_dir() / "cover.json";
  write_cover_json(p, set);
  nlohmann::json j;
  std::ifstream(p) >> j;
  CHECK(j["eps"].get<double>() == 0.25);
  CHECK(j["directions"].size() == set.code.size());
  CHECK(j["arms"].size() == set.arms.size());
}
