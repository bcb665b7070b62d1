#pragma once

#include <string>

#include "hk/rootsys.hpp"

namespace hk {

// Fixed preset configurations: s3, s5, s7 (odd spheres) and su2, su3
// (complex groups A1, A2).  grid_size <= 0 keeps the preset default.
SpaceConfig preset_config(const std::string& name, int grid_size = 0);

// Parse a SpaceConfig from a JSON object string:
// {"family":"sphere_odd"|"complex_group","m":int,"root_type":"A".."D",
//  "rank":int,"grid_size":int}
SpaceConfig parse_config_json(const std::string& json_text);

std::string family_name(Family f);
std::string root_type_name(RootType t);

}  // namespace hk
