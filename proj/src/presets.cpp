#include "hk/presets.hpp"

#include <nlohmann/json.hpp>

namespace hk {

SpaceConfig preset_config(const std::string& name, int grid_size) {
  SpaceConfig cfg;
  cfg.preset_name = name;
  if (name == "s3" || name == "s5" || name == "s7") {
    cfg.family = Family::SphereOdd;
    cfg.m = name == "s3" ? 1 : (name == "s5" ? 2 : 3);
    cfg.rank = 1;
    cfg.grid_size = 512;
  } else if (name == "su2" || name == "su3") {
    cfg.family = Family::ComplexGroup;
    cfg.m = 1;
    cfg.root_type = RootType::A;
    cfg.rank = name == "su2" ? 1 : 2;
    cfg.grid_size = 128;
  } else {
    throw ConfigError("unknown preset '" + name + "' (expected s3, s5, s7, su2, su3)");
  }
  if (grid_size > 0) cfg.grid_size = grid_size;
  return cfg;
}

SpaceConfig parse_config_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON config: ") + e.what());
  }
  SpaceConfig cfg;
  if (j.contains("preset")) return preset_config(j["preset"].get<std::string>(),
                                                 j.value("grid_size", 0));
  const std::string family = j.value("family", "");
  if (family == "sphere_odd")
    cfg.family = Family::SphereOdd;
  else if (family == "complex_group")
    cfg.family = Family::ComplexGroup;
  else
    throw ConfigError("config field 'family' must be 'sphere_odd' or 'complex_group'");
  cfg.m = j.value("m", 1);
  if (j.contains("root_type")) {
    const std::string rt = j["root_type"].get<std::string>();
    if (rt == "A")
      cfg.root_type = RootType::A;
    else if (rt == "B")
      cfg.root_type = RootType::B;
    else if (rt == "C")
      cfg.root_type = RootType::C;
    else if (rt == "D")
      cfg.root_type = RootType::D;
    else
      throw ConfigError("config field 'root_type' must be one of A, B, C, D");
  }
  cfg.rank = j.value("rank", 1);
  cfg.grid_size = j.value("grid_size", cfg.family == Family::SphereOdd ? 512 : 128);
  return cfg;
}

std::string family_name(Family f) { return f == Family::SphereOdd ? "sphere_odd" : "complex_group"; }

std::string root_type_name(RootType t) {
  switch (t) {
    case RootType::A: return "A";
    case RootType::B: return "B";
    case RootType::C: return "C";
    case RootType::D: return "D";
  }
  return "?";
}

}  // namespace hk
