#ifndef QFH_CRYSTAL_HPP
#define QFH_CRYSTAL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qfh/sellmeier.hpp"

namespace qfh {

enum class Symmetry { Uniaxial, Biaxial };
enum class Polarization { Ordinary, Extraordinary };
enum class PrincipalPlane { XY, XZ, YZ };

// Principal-axis key: "o"/"e" for uniaxial crystals, "X"/"Y"/"Z" for biaxial
// (axis convention n_X < n_Y < n_Z).
struct CrystalModel {
  std::string name;
  Symmetry symmetry = Symmetry::Uniaxial;
  std::map<std::string, SellmeierForm> axes;
  std::string citation;

  const SellmeierForm& axis(const std::string& key) const;
  // intersection of per-axis validity ranges
  double validity_lo_um() const;
  double validity_hi_um() const;
};

Polarization polarization_from_string(const std::string& s);
std::string to_string(Polarization p);
PrincipalPlane plane_from_string(const std::string& s);
std::string to_string(PrincipalPlane p);

// Propagation direction and polarization for one interacting field.
// theta is measured from the crystal Z axis, phi from the X axis (degrees).
// principal_plane is required for biaxial crystals and must be absent for
// uniaxial ones; the in-plane angle is theta for XZ/YZ and phi for XY.
struct OpticalAxisSpec {
  Polarization polarization = Polarization::Ordinary;
  double theta_deg = 0.0;
  double phi_deg = 0.0;
  std::optional<PrincipalPlane> principal_plane;
};

CrystalModel load_crystal_file(const std::string& path);
CrystalModel parse_crystal_json(const std::string& json_text, const std::string& origin);

// Crystal database directory resolution: explicit argument beats the
// QFH_CRYSTAL_DIR environment variable beats the compiled-in default.
std::string crystal_database_dir(const std::string& override_dir = "");
CrystalModel load_crystal_by_name(const std::string& name, const std::string& dir = "");
std::vector<std::string> list_crystal_names(const std::string& dir = "");

// Vacuum stand-in used by tests (n = 1 on both axes).
CrystalModel make_constant_crystal(double n0, Symmetry sym = Symmetry::Uniaxial);

}  // namespace qfh

#endif
