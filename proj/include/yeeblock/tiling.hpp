#pragma once

#include <algorithm>
#include <array>
#include <stdexcept>
#include <vector>

#include "yeeblock/staggering.hpp"

namespace yeeblock {

struct Split {
  int sx = 1, sy = 1, sz = 1;

  int axis(int a) const { return a == 0 ? sx : (a == 1 ? sy : sz); }
  int count() const { return sx * sy * sz; }
  bool operator==(const Split&) const = default;
};

/// One box-shaped tile of the cell grid.
struct Tile {
  int id = 0;
  IndexBox cells;                    // half-open cell index ranges
  std::array<int, 6> neighbor = {};  // -x,+x,-y,+y,-z,+z; -1 at domain faces
};

/// Which volume pass a tile box belongs to. `Owned` is the plain ownership
/// box (tile-private DoFs); `Fused` shrinks the magnetic box to faces whose
/// stencil stays on tile-private edges, enabling the Ampere+Faraday fused
/// pass; the two `Second*` kinds shrink one more cell so a second time
/// level can be advanced before any interface work completes.
enum class VolKind { Owned, Fused, SecondAmpere, SecondFaraday };

namespace detail {

/// Per-axis DoF interval of a tile volume pass. `Owned` keeps every DoF
/// touching only this tile's cells, so node planes at the domain boundary
/// stay with the boundary tile and internal shared planes go to the
/// interface sets. The fused and second-step kinds shrink further by the
/// stencil dependency rule.
inline Interval vol_interval(Interval cells, int n, bool node, VolKind k) {
  const int lo = cells.lo, hi = cells.hi;
  switch (k) {
    case VolKind::Owned:
      return node ? Interval{lo == 0 ? 0 : lo + 1, hi == n ? n + 1 : hi}
                  : Interval{lo, hi};
    case VolKind::Fused:
      return node ? Interval{lo + 1, hi} : Interval{lo + 1, hi - 1};
    case VolKind::SecondAmpere:
      return node ? Interval{lo + 2, hi - 1} : Interval{lo + 1, hi - 1};
    default:  // SecondFaraday
      return node ? Interval{lo + 2, hi - 1} : Interval{lo + 2, hi - 2};
  }
}

}  // namespace detail

/// Volume box of `comp` for a tile cell box under pass kind `kind`: the
/// DoFs the pass may update reading only data already final inside the
/// tile (electric boxes additionally exclude the PEC-pinned shell).
inline IndexBox tile_volume_box(const IndexBox& cells, const GridDims& dims,
                                Comp comp, VolKind kind) {
  IndexBox b;
  for (int a = 0; a < 3; ++a)
    b.axis(a) = detail::vol_interval(cells.axis(a), dims.cells(a),
                                     is_node_axis(comp, a), kind);
  if (is_electric(comp)) b = intersect(b, curl_updatable_box(dims, comp));
  return b;
}

/// Decomposition of the global cell index space into box tiles, plus the
/// interface DoF bookkeeping per scheduling family. Tiles are global index
/// ranges into the shared field arrays -- there is no per-tile storage, so
/// interface passes read neighbours directly and cross-variant bitwise
/// equality is structural.
struct TileLayout {
  GridDims dims;
  Split split;
  std::array<std::vector<int>, 3> breaks;  // per-axis cell breakpoints
  std::vector<Tile> tiles;

  // Interface sets, stored as disjoint boxes in deterministic order.
  // Ampere interfaces are shared by the tiled and fused families (the
  // electric ownership boxes coincide); Faraday interfaces differ.
  std::array<std::vector<IndexBox>, 6> iface_ampere;
  std::array<std::vector<IndexBox>, 6> iface_faraday_owned;
  std::array<std::vector<IndexBox>, 6> iface_faraday_fused;
  std::array<std::vector<IndexBox>, 6> pec;

  const std::vector<IndexBox>& ampere_interface(Comp c) const {
    return iface_ampere[comp_index(c)];
  }
  const std::vector<IndexBox>& faraday_interface(Comp c, bool fused) const {
    return fused ? iface_faraday_fused[comp_index(c)]
                 : iface_faraday_owned[comp_index(c)];
  }
  const std::vector<IndexBox>& pec_slabs(Comp c) const {
    return pec[comp_index(c)];
  }

  int tile_id(int a, int b, int c) const {
    return (c * split.sy + b) * split.sx + a;
  }
  const Tile& tile_at(int a, int b, int c) const {
    return tiles[tile_id(a, b, c)];
  }
  /// Cell box of the tile grown by `cells` on every side, clamped to the
  /// grid (the halo a tile's update chain can reach).
  IndexBox grown_cells(const Tile& t, int cells) const {
    IndexBox b = t.cells;
    for (int a = 0; a < 3; ++a) {
      b.axis(a).lo = std::max(0, b.axis(a).lo - cells);
      b.axis(a).hi = std::min(dims.cells(a), b.axis(a).hi + cells);
    }
    return b;
  }
};

namespace detail {

inline std::vector<int> axis_breaks(int cells, int parts) {
  // near-equal tiles; the remainder goes to the leading tiles
  std::vector<int> b(parts + 1, 0);
  const int base = cells / parts;
  const int rem = cells % parts;
  for (int t = 0; t < parts; ++t) b[t + 1] = b[t] + base + (t < rem ? 1 : 0);
  return b;
}

/// Maximal in-intervals of one axis for a pass kind: the per-slot volume
/// intervals, merged where adjacent intervals touch, clipped to `range`.
inline std::vector<Interval> axis_in_runs(const std::vector<int>& breaks,
                                          int n, bool node, VolKind kind,
                                          Interval range) {
  std::vector<Interval> runs;
  for (std::size_t t = 0; t + 1 < breaks.size(); ++t) {
    Interval r = intersect(
        vol_interval({breaks[t], breaks[t + 1]}, n, node, kind), range);
    if (r.empty()) continue;
    if (!runs.empty() && runs.back().hi == r.lo)
      runs.back().hi = r.hi;
    else
      runs.push_back(r);
  }
  return runs;
}

inline std::vector<Interval> axis_out_runs(const std::vector<Interval>& in,
                                           Interval range) {
  std::vector<Interval> out;
  int cur = range.lo;
  for (const Interval& r : in) {
    if (cur < r.lo) out.push_back({cur, r.lo});
    cur = r.hi;
  }
  if (cur < range.hi) out.push_back({cur, range.hi});
  return out;
}

/// Disjoint boxes covering range minus the product of the in-runs:
/// (out_x * range_y * range_z) then (in_x * out_y * range_z) then
/// (in_x * in_y * out_z).
inline void complement_boxes(const std::array<std::vector<Interval>, 3>& in,
                             const IndexBox& range,
                             std::vector<IndexBox>& out) {
  std::array<std::vector<Interval>, 3> comp;
  for (int a = 0; a < 3; ++a) comp[a] = axis_out_runs(in[a], range.axis(a));
  for (const Interval& x : comp[0])
    out.push_back({x, range.y, range.z});
  for (const Interval& x : in[0])
    for (const Interval& y : comp[1]) out.push_back({x, y, range.z});
  for (const Interval& x : in[0])
    for (const Interval& y : in[1])
      for (const Interval& z : comp[2]) out.push_back({x, y, z});
}

inline void build_interfaces(TileLayout& L) {
  for (Comp c : kAllComps) {
    const int ci = comp_index(c);
    const bool electric = is_electric(c);
    const IndexBox range =
        electric ? curl_updatable_box(L.dims, c) : comp_extents(L.dims, c);
    auto runs = [&](VolKind kind) {
      std::array<std::vector<Interval>, 3> in;
      for (int a = 0; a < 3; ++a)
        in[a] = axis_in_runs(L.breaks[a], L.dims.cells(a), is_node_axis(c, a),
                             kind, range.axis(a));
      return in;
    };
    if (electric) {
      auto in = runs(VolKind::Owned);
      complement_boxes(in, range, L.iface_ampere[ci]);
      pec_boxes(L.dims, c, L.pec[ci]);
    } else {
      auto owned = runs(VolKind::Owned);
      complement_boxes(owned, range, L.iface_faraday_owned[ci]);
      auto fused = runs(VolKind::Fused);
      complement_boxes(fused, range, L.iface_faraday_fused[ci]);
    }
  }
}

}  // namespace detail

/// Splits the grid into split.sx * sy * sz box tiles of near-equal size and
/// computes the interface DoF sets for both the tiled and the fused
/// scheduling families.
inline TileLayout make_layout(const GridDims& dims, const Split& split) {
  for (int a = 0; a < 3; ++a) {
    if (split.axis(a) < 1 || split.axis(a) > dims.cells(a))
      throw std::invalid_argument("make_layout: invalid split for grid");
  }
  TileLayout L;
  L.dims = dims;
  L.split = split;
  for (int a = 0; a < 3; ++a)
    L.breaks[a] = detail::axis_breaks(dims.cells(a), split.axis(a));

  L.tiles.resize(static_cast<std::size_t>(split.count()));
  for (int c = 0; c < split.sz; ++c)
    for (int b = 0; b < split.sy; ++b)
      for (int a = 0; a < split.sx; ++a) {
        Tile t;
        t.id = L.tile_id(a, b, c);
        t.cells = {{L.breaks[0][a], L.breaks[0][a + 1]},
                   {L.breaks[1][b], L.breaks[1][b + 1]},
                   {L.breaks[2][c], L.breaks[2][c + 1]}};
        t.neighbor = {a > 0 ? L.tile_id(a - 1, b, c) : -1,
                      a + 1 < split.sx ? L.tile_id(a + 1, b, c) : -1,
                      b > 0 ? L.tile_id(a, b - 1, c) : -1,
                      b + 1 < split.sy ? L.tile_id(a, b + 1, c) : -1,
                      c > 0 ? L.tile_id(a, b, c - 1) : -1,
                      c + 1 < split.sz ? L.tile_id(a, b, c + 1) : -1};
        L.tiles[static_cast<std::size_t>(t.id)] = t;
      }

  detail::build_interfaces(L);
  return L;
}

/// Picks a split whose per-tile footprint (6 fields * precision bytes *
/// cells) fits the per-core cache share, preferring tiles elongated along
/// the unit-stride x axis with transverse sides near the empirically
/// optimal tile edge (about 27 cells in single precision, 22 in double).
/// Degenerates towards the finest split when the cache is tiny.
inline Split auto_split(const GridDims& dims, long long cache_bytes,
                        int precision_bytes, int cores) {
  if (cache_bytes <= 0) throw std::invalid_argument("auto_split: cache <= 0");
  if (cores < 1) cores = 1;
  const long long budget_cells =
      cache_bytes / cores / (6LL * precision_bytes);
  auto tile_cells = [&](const Split& s) {
    long long v = 1;
    for (int a = 0; a < 3; ++a)
      v *= (dims.cells(a) + s.axis(a) - 1) / s.axis(a);
    return v;
  };

  Split s{1, 1, 1};
  if (tile_cells(s) <= budget_cells) return s;

  const int opt_side = precision_bytes <= 4 ? 27 : 22;
  auto transverse = [&](int n) {
    int parts = (n + opt_side - 1) / opt_side;
    return std::min(std::max(parts, 1), n);
  };
  s.sy = transverse(dims.ny);
  s.sz = transverse(dims.nz);
  while (s.sx < dims.nx && tile_cells(s) > budget_cells) ++s.sx;
  // x alone cannot satisfy a tiny budget; tighten transverse splits next
  int a = 1;
  while (tile_cells(s) > budget_cells &&
         (s.sy < dims.ny || s.sz < dims.nz)) {
    if (a == 1 && s.sy < dims.ny) ++s.sy;
    if (a == 2 && s.sz < dims.nz) ++s.sz;
    a = a == 1 ? 2 : 1;
  }
  return s;
}

}  // namespace yeeblock
