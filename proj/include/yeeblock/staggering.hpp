#pragma once

#include <array>
#include <cstdint>

#include "yeeblock/array3.hpp"

namespace yeeblock {

/// The six staggered field components of the Yee cell.
enum class Comp : std::uint8_t { Ex = 0, Ey, Ez, Hx, Hy, Hz };

constexpr std::array<Comp, 3> kEComps = {Comp::Ex, Comp::Ey, Comp::Ez};
constexpr std::array<Comp, 3> kHComps = {Comp::Hx, Comp::Hy, Comp::Hz};
constexpr std::array<Comp, 6> kAllComps = {Comp::Ex, Comp::Ey, Comp::Ez,
                                           Comp::Hx, Comp::Hy, Comp::Hz};

constexpr bool is_electric(Comp c) { return c <= Comp::Ez; }
constexpr int comp_index(Comp c) { return static_cast<int>(c); }

inline const char* comp_name(Comp c) {
  static const char* names[6] = {"ex", "ey", "ez", "hx", "hy", "hz"};
  return names[comp_index(c)];
}

/// Axis along which a component points (0=x, 1=y, 2=z).
constexpr int comp_axis(Comp c) { return comp_index(c) % 3; }

// Staggering of the fields on an nx*ny*nz cell grid, fixed once here and
// reused by every module. Index (i,j,k) of each array maps to the physical
// half/integer position below; "h" marks a half-offset (cell-centred) axis
// and "n" a node (integer) axis.
//
//   ex(i,j,k) -> (i+1/2, j,     k    )   extents  nx   x ny+1 x nz+1   (h,n,n)
//   ey(i,j,k) -> (i,     j+1/2, k    )   extents  nx+1 x ny   x nz+1   (n,h,n)
//   ez(i,j,k) -> (i,     j,     k+1/2)   extents  nx+1 x ny+1 x nz     (n,n,h)
//   hx(i,j,k) -> (i,     j+1/2, k+1/2)   extents  nx+1 x ny   x nz     (n,h,h)
//   hy(i,j,k) -> (i+1/2, j,     k+1/2)   extents  nx   x ny+1 x nz     (h,n,h)
//   hz(i,j,k) -> (i+1/2, j+1/2, k    )   extents  nx   x ny   x nz+1   (h,h,n)
//
// E components live on cell edges, H components on cell faces. A node axis
// has extent n+1 and its planes 0 and n lie on the domain boundary.

/// True if `axis` of component `c` is at integer (node) positions.
constexpr bool is_node_axis(Comp c, int axis) {
  return is_electric(c) ? (axis != comp_axis(c)) : (axis == comp_axis(c));
}

struct GridDims {
  int nx = 0, ny = 0, nz = 0;

  int cells(int axis) const { return axis == 0 ? nx : (axis == 1 ? ny : nz); }
  long long cell_count() const {
    return static_cast<long long>(nx) * ny * nz;
  }
  bool operator==(const GridDims&) const = default;
};

inline IndexBox comp_extents(const GridDims& g, Comp c) {
  IndexBox b;
  for (int a = 0; a < 3; ++a)
    b.axis(a) = {0, g.cells(a) + (is_node_axis(c, a) ? 1 : 0)};
  return b;
}

/// DoFs of an E component whose full curl stencil lies inside the grid.
/// The complement (node-axis planes 0 and n) is exactly the tangential-E
/// set pinned to zero by the PEC boundary. H components are updatable on
/// their full extents.
inline IndexBox curl_updatable_box(const GridDims& g, Comp c) {
  IndexBox b = comp_extents(g, c);
  if (is_electric(c)) {
    for (int a = 0; a < 3; ++a)
      if (is_node_axis(c, a)) b.axis(a) = {1, g.cells(a)};
  }
  return b;
}

/// Disjoint boxes covering the PEC-forced DoFs of an E component (the
/// tangential-E planes of the six outer faces). Empty for H components.
inline void pec_boxes(const GridDims& g, Comp c,
                      std::vector<IndexBox>& out) {
  if (!is_electric(c)) return;
  box_difference(comp_extents(g, c), curl_updatable_box(g, c),
                 [&](const IndexBox& b) { out.push_back(b); });
}

}  // namespace yeeblock
