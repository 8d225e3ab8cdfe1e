#include "contractlab/io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "contractlab/model.hpp"

namespace contractlab {

using nlohmann::json;

namespace {

json instance_to_json(const Instance& inst) {
  json j;
  j["name"] = inst.name;
  j["values"] = inst.outcomes.values;
  j["types"] = json::array();
  for (const AgentType& ty : inst.types) {
    json jt;
    jt["weight"] = ty.weight;
    jt["actions"] = json::array();
    for (const ActionSpec& act : ty.actions)
      jt["actions"].push_back({{"prob", act.prob}, {"cost", act.cost}});
    j["types"].push_back(std::move(jt));
  }
  return j;
}

Instance instance_from_json(const json& j) {
  Instance inst;
  inst.name = j.at("name").get<std::string>();
  inst.outcomes.values = j.at("values").get<std::vector<double>>();
  for (const json& jt : j.at("types")) {
    AgentType ty;
    ty.weight = jt.at("weight").get<double>();
    for (const json& ja : jt.at("actions")) {
      ActionSpec act;
      act.prob = ja.at("prob").get<std::vector<double>>();
      act.cost = ja.at("cost").get<double>();
      ty.actions.push_back(std::move(act));
    }
    inst.types.push_back(std::move(ty));
  }
  return inst;
}

void reject_if_invalid(const Instance& inst, const std::string& origin) {
  auto violations = validate_instance(inst);
  if (violations.empty()) return;
  std::string msg = origin + ": invalid instance:";
  for (const Violation& v : violations) msg += "\n  " + v.path + ": " + v.message;
  throw std::runtime_error(msg);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
  os << text;
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

std::string instance_to_json_text(const Instance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

Instance instance_from_json_text(const std::string& text) {
  json j = json::parse(text);
  Instance inst = instance_from_json(j);
  reject_if_invalid(inst, "instance JSON");
  return inst;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open instance file: " + path.string());
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("cannot parse " + path.string() + ": " + e.what());
  }
  Instance inst = instance_from_json(j);
  reject_if_invalid(inst, path.string());
  return inst;
}

void save_instance(const std::filesystem::path& path, const Instance& inst) {
  write_text(path, instance_to_json_text(inst));
}

std::filesystem::path write_family_manifest(const std::filesystem::path& manifest_path,
                                            const LowerBoundFamily& fam) {
  std::filesystem::path dir = manifest_path.parent_path();
  std::string stem = manifest_path.stem().string();

  auto instance_file = [&](const Instance& inst, const std::string& suffix) {
    std::filesystem::path p = dir / (stem + "_" + suffix + ".json");
    save_instance(p, inst);
    return p.filename().string();
  };

  auto region_json = [](const RegionBox& box) {
    json lo = box.lo;
    json hi = json::array();
    for (double h : box.hi) {
      if (std::isfinite(h))
        hi.push_back(h);
      else
        hi.push_back(nullptr);  // unbounded top cell
    }
    return json{{"lo", std::move(lo)}, {"hi", std::move(hi)}};
  };

  json manifest;
  manifest["family"] = fam.linear ? "linear-lower-bound" : "lower-bound";
  manifest["m_free"] = fam.m_free;
  manifest["eps"] = fam.eps;
  manifest["actions_per_coord"] = fam.actions_per_coord;
  manifest["sentinel_index"] = fam.sentinel_index;
  manifest["base"] = {{"file", instance_file(fam.base, "base")}, {"optimum", 0.5}};

  manifest["perturbed"] = json::array();
  for (const PerturbedInstance& p : fam.perturbed) {
    std::string suffix = "l";
    for (std::size_t i = 0; i < p.l.size(); ++i)
      suffix += (i ? "_" : "") + std::to_string(p.l[i]);
    manifest["perturbed"].push_back({{"l", p.l},
                                     {"file", instance_file(p.instance, suffix)},
                                     {"optimum", p.optimum},
                                     {"optimizer_x", p.optimizer_x},
                                     {"region", region_json(p.region)}});
  }
  manifest["sentinel"] = {{"l", fam.sentinel.l},
                          {"file", instance_file(fam.sentinel.instance, "sentinel")},
                          {"optimum", fam.sentinel.optimum},
                          {"optimizer_x", fam.sentinel.optimizer_x},
                          {"region", region_json(fam.sentinel.region)}};

  write_text(manifest_path, manifest.dump(2) + "\n");
  return manifest_path;
}

void write_cover_json(const std::filesystem::path& path,
                      const DiscretizedContractSet& set) {
  json j;
  j["eps"] = set.eps;
  j["provenance"] = set.provenance;
  j["directions"] = json::array();
  for (const auto& d : set.code.directions) j["directions"].push_back(d);
  j["arms"] = json::array();
  for (const Contract& arm : set.arms) j["arms"].push_back(arm.payments);
  write_text(path, j.dump(2) + "\n");
}

}  // namespace contractlab
