#include "qfh/crystal.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qfh/errors.hpp"

namespace qfh {

namespace fs = std::filesystem;
using nlohmann::json;

const SellmeierForm& CrystalModel::axis(const std::string& key) const {
  auto it = axes.find(key);
  if (it == axes.end())
    throw InvalidGeometry("crystal " + name + " has no axis '" + key + "'");
  return it->second;
}

double CrystalModel::validity_lo_um() const {
  double lo = 0.0;
  for (const auto& [k, f] : axes) lo = std::max(lo, f.validity_lo_um);
  return lo;
}

double CrystalModel::validity_hi_um() const {
  double hi = 1e9;
  for (const auto& [k, f] : axes) hi = std::min(hi, f.validity_hi_um);
  return hi;
}

Polarization polarization_from_string(const std::string& s) {
  if (s == "o" || s == "ordinary") return Polarization::Ordinary;
  if (s == "e" || s == "extraordinary") return Polarization::Extraordinary;
  throw ConfigInvalid("unknown polarization: " + s);
}

std::string to_string(Polarization p) {
  return p == Polarization::Ordinary ? "o" : "e";
}

PrincipalPlane plane_from_string(const std::string& s) {
  if (s == "XY") return PrincipalPlane::XY;
  if (s == "XZ") return PrincipalPlane::XZ;
  if (s == "YZ") return PrincipalPlane::YZ;
  throw ConfigInvalid("unknown principal plane: " + s);
}

std::string to_string(PrincipalPlane p) {
  switch (p) {
    case PrincipalPlane::XY: return "XY";
    case PrincipalPlane::XZ: return "XZ";
    case PrincipalPlane::YZ: return "YZ";
  }
  return "?";
}

CrystalModel parse_crystal_json(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigInvalid(origin + ": " + e.what());
  }
  CrystalModel m;
  try {
    m.name = j.at("name").get<std::string>();
    const std::string sym = j.at("symmetry").get<std::string>();
    if (sym == "uniaxial")
      m.symmetry = Symmetry::Uniaxial;
    else if (sym == "biaxial")
      m.symmetry = Symmetry::Biaxial;
    else
      throw ConfigInvalid(origin + ": symmetry must be uniaxial or biaxial");
    m.citation = j.value("citation", "");
    for (const auto& [key, jf] : j.at("axes").items()) {
      SellmeierForm f;
      f.variant = variant_from_string(jf.at("variant").get<std::string>());
      f.coefficients = jf.at("coefficients").get<std::vector<double>>();
      const auto v = jf.at("validity").get<std::vector<double>>();
      if (v.size() != 2 || v[0] <= 0 || v[1] <= v[0])
        throw ConfigInvalid(origin + ": bad validity interval for axis " + key);
      f.validity_lo_um = v[0];
      f.validity_hi_um = v[1];
      f.finalize();
      m.axes.emplace(key, std::move(f));
    }
  } catch (const json::exception& e) {
    throw ConfigInvalid(origin + ": " + e.what());
  }

  const bool uni = m.symmetry == Symmetry::Uniaxial;
  const std::vector<std::string> want = uni ? std::vector<std::string>{"o", "e"}
                                            : std::vector<std::string>{"X", "Y", "Z"};
  for (const auto& k : want)
    if (!m.axes.count(k))
      throw ConfigInvalid(origin + ": " + (uni ? "uniaxial" : "biaxial") +
                          " crystal needs axis '" + k + "'");
  return m;
}

CrystalModel load_crystal_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open crystal file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_crystal_json(ss.str(), path);
}

std::string crystal_database_dir(const std::string& override_dir) {
  if (!override_dir.empty()) return override_dir;
  if (const char* env = std::getenv("QFH_CRYSTAL_DIR"); env && *env) return env;
#ifdef QFH_DEFAULT_CRYSTAL_DIR
  return QFH_DEFAULT_CRYSTAL_DIR;
#else
  return "data/crystals";
#endif
}

CrystalModel load_crystal_by_name(const std::string& name, const std::string& dir) {
  if (name.find('/') != std::string::npos || name.ends_with(".json"))
    return load_crystal_file(name);
  const fs::path p = fs::path(crystal_database_dir(dir)) / (name + ".json");
  return load_crystal_file(p.string());
}

std::vector<std::string> list_crystal_names(const std::string& dir) {
  std::vector<std::string> names;
  const fs::path d = crystal_database_dir(dir);
  if (!fs::is_directory(d)) return names;
  for (const auto& e : fs::directory_iterator(d))
    if (e.is_regular_file() && e.path().extension() == ".json")
      names.push_back(e.path().stem().string());
  std::sort(names.begin(), names.end());
  return names;
}

CrystalModel make_constant_crystal(double n0, Symmetry sym) {
  CrystalModel m;
  m.name = "constant";
  m.symmetry = sym;
  m.citation = "test model";
  if (sym == Symmetry::Uniaxial) {
    m.axes.emplace("o", make_constant_form(n0));
    m.axes.emplace("e", make_constant_form(n0));
  } else {
    m.axes.emplace("X", make_constant_form(n0));
    m.axes.emplace("Y", make_constant_form(n0));
    m.axes.emplace("Z", make_constant_form(n0));
  }
  return m;
}

}  // namespace qfh
