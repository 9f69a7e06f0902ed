#ifndef VERNE_CONFIG_IO_HPP
#define VERNE_CONFIG_IO_HPP

#include <istream>
#include <string>

#include "verne/geometry.hpp"

namespace verne {

// Parses the geometry configuration document: a JSON object with exactly the
// keys D1, d1, D2, d2, R1, r1, R2, r4, L1, L2, L3 (numbers, mm) and
// rho_limits (array of three [min, max] pairs, mm). Unknown keys are
// rejected. Throws ConfigError naming the offending key; the result is
// validated against the geometry invariants.
MachineGeometry parse_geometry(std::istream& in);

MachineGeometry load_geometry(const std::string& path);

}  // namespace verne

#endif  // VERNE_CONFIG_IO_HPP
