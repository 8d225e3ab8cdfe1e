#pragma once

#include <filesystem>
#include <string>

#include "contractlab/discretize.hpp"
#include "contractlab/instances.hpp"
#include "contractlab/types.hpp"

namespace contractlab {

// Instance file format (JSON, UTF-8):
// { "name": str, "values": [v_0,...], "types": [ { "weight": w,
//   "actions": [ { "prob": [...], "cost": c } ] } ] }
// Loading validates; invalid files are rejected with the violation report.
Instance load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const Instance& inst);

std::string instance_to_json_text(const Instance& inst);
Instance instance_from_json_text(const std::string& text);

// Writes the base/perturbed/sentinel instance files next to `manifest_path`
// plus a manifest JSON listing the files, closed-form optima, optimizers, and
// best-response region boxes. Returns the manifest path.
std::filesystem::path write_family_manifest(const std::filesystem::path& manifest_path,
                                            const LowerBoundFamily& fam);

// { "eps": eps, "directions": [[...]], "arms": [[...]] }
void write_cover_json(const std::filesystem::path& path,
                      const DiscretizedContractSet& set);

}  // namespace contractlab
