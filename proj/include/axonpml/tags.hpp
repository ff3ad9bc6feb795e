#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace axonpml {

/// Material region of a triangle.
enum class Region : std::uint8_t {
  Axon,      // D1
  Myelin,    // D2
  Exterior,  // fluid D^c inside r <= R
  Pml,       // absorbing layer R < r < rho
};

/// Boundary segment of the rectangular (r, z) domain.
enum class BoundaryTag : std::uint8_t {
  AxisOrInner,    // r = 0 axis, or the inner radius of an annular domain
  Left,           // z = 0
  RightAxon,      // z = Z, r < axon radius (Neumann)
  RightExterior,  // z = Z, remaining part
  Outer,          // r = rho
};

inline constexpr Region kAllRegions[] = {Region::Axon, Region::Myelin, Region::Exterior,
                                         Region::Pml};

std::string_view to_string(Region region);
std::string_view to_string(BoundaryTag tag);
std::optional<Region> region_from_string(std::string_view name);
std::optional<BoundaryTag> boundary_tag_from_string(std::string_view name);

}  // namespace axonpml
