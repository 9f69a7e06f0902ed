#include "verne/config_io.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "verne/errors.hpp"

namespace verne {

namespace {

double number_field(const nlohmann::json& doc, const std::string& key) {
  if (!doc.contains(key)) throw ConfigError("missing key '" + key + "'");
  const auto& v = doc.at(key);
  if (!v.is_number()) throw ConfigError("key '" + key + "' must be a number (mm)");
  return v.get<double>();
}

}  // namespace

MachineGeometry parse_geometry(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("top level must be a JSON object");

  static const std::set<std::string> known = {"D1", "d1", "D2", "d2", "R1", "r1",
                                              "R2", "r4", "L1", "L2", "L3", "rho_limits"};
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (known.find(key) == known.end()) throw ConfigError("unknown key '" + key + "'");
  }

  MachineGeometry g;
  g.D1 = number_field(doc, "D1");
  g.d1 = number_field(doc, "d1");
  g.D2 = number_field(doc, "D2");
  g.d2 = number_field(doc, "d2");
  g.R1 = number_field(doc, "R1");
  g.r1 = number_field(doc, "r1");
  g.R2 = number_field(doc, "R2");
  g.r4 = number_field(doc, "r4");
  g.L1 = number_field(doc, "L1");
  g.L2 = number_field(doc, "L2");
  g.L3 = number_field(doc, "L3");

  if (!doc.contains("rho_limits")) throw ConfigError("missing key 'rho_limits'");
  const auto& lim = doc.at("rho_limits");
  if (!lim.is_array() || lim.size() != 3)
    throw ConfigError("key 'rho_limits' must be an array of three [min, max] pairs");
  for (int i = 0; i < 3; ++i) {
    const auto& pair = lim.at(i);
    if (!pair.is_array() || pair.size() != 2 || !pair.at(0).is_number() ||
        !pair.at(1).is_number())
      throw ConfigError("key 'rho_limits[" + std::to_string(i) + "]' must be [min, max]");
    g.rho_limits[i][0] = pair.at(0).get<double>();
    g.rho_limits[i][1] = pair.at(1).get<double>();
  }

  validate_geometry(g);
  return g;
}

MachineGeometry load_geometry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open geometry file '" + path + "'");
  return parse_geometry(in);
}

}  // namespace verne
