#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "yeeblock/source.hpp"
#include "yeeblock/tiling.hpp"

namespace yeeblock {

/// The five update orderings. All of them delegate the per-DoF arithmetic
/// to the kernels and produce bitwise-identical fields; they differ only in
/// traversal order, synchronization structure and memory-access count.
enum class Variant { Standard, Tiled, Interleaved, Planewise, TwoStep };

constexpr std::array<Variant, 5> kAllVariants = {
    Variant::Standard, Variant::Tiled, Variant::Interleaved,
    Variant::Planewise, Variant::TwoStep};

inline const char* variant_name(Variant v) {
  static const char* names[5] = {"standard", "tiled", "interleaved",
                                 "planewise", "twostep"};
  return names[static_cast<int>(v)];
}

inline std::optional<Variant> parse_variant(const std::string& s) {
  for (Variant v : kAllVariants)
    if (s == variant_name(v)) return v;
  return std::nullopt;
}

/// Time levels advanced per scheduler invocation (two for TwoStep).
constexpr int variant_substeps(Variant v) {
  return v == Variant::TwoStep ? 2 : 1;
}

enum class PhasePass { Ampere, Faraday, SecondAmpere, SecondFaraday };

/// Index box a tile volume pass may update for `comp` without reading data
/// that is not yet final under the given variant's phase structure.
inline IndexBox interior_dof_box(const Tile& t, const GridDims& dims,
                                 Variant v, Comp comp, PhasePass pass) {
  VolKind kind = VolKind::Owned;
  switch (pass) {
    case PhasePass::Ampere:
      kind = VolKind::Owned;
      break;
    case PhasePass::Faraday:
      kind = (v == Variant::Standard || v == Variant::Tiled) ? VolKind::Owned
                                                             : VolKind::Fused;
      break;
    case PhasePass::SecondAmpere:
      kind = VolKind::SecondAmpere;
      break;
    case PhasePass::SecondFaraday:
      kind = VolKind::SecondFaraday;
      break;
  }
  return tile_volume_box(t.cells, dims, comp, kind);
}

// ---------------------------------------------------------------------------
// Step plans. A plan is the full description of one scheduler invocation:
// an ordered list of phases, each holding mutually independent tasks, each
// task an ordered list of box-granular work items. The executor applies
// plans either sequentially or on a worker pool; phases are the only
// synchronization points.

struct WorkItem {
  enum class Op { UpdateE, UpdateH, Pec, Inject };
  Op op = Op::UpdateE;
  Comp comp = Comp::Ex;
  IndexBox box;
  int substep = 0;   // 0 or 1: time level offset within the invocation
  int source = -1;   // index into the source list for Inject
};

struct Task {
  int tile = -1;  // >= 0: volume task of this tile, skippable when quiescent
  std::vector<WorkItem> items;  // executed in order
};

struct Phase {
  std::string name;
  bool volume = false;      // counts toward volume (in-tile) time
  bool splittable = false;  // single-item tasks may be split across workers
  std::vector<Task> tasks;
};

struct StepPlan {
  Variant variant = Variant::Standard;
  int substeps = 1;
  bool needs_vacuum_tiles = false;  // true when sources must be inactive
  std::vector<Phase> phases;
};

namespace detail {

inline IndexBox plane_of(const IndexBox& b, int k) {
  return {b.x, b.y, intersect(b.z, {k, k + 1})};
}

inline void push_update(std::vector<WorkItem>& items, WorkItem::Op op,
                        Comp comp, const IndexBox& box, int substep = 0) {
  if (box.empty()) return;
  items.push_back({op, comp, box, substep, -1});
}

/// True when the source DoF lies inside some tile's electric ownership box
/// (as opposed to the interface set updated by the surf passes).
inline int owning_tile(const TileLayout& L, const SourceSpec& s) {
  for (const Tile& t : L.tiles)
    if (tile_volume_box(t.cells, L.dims, s.component, VolKind::Owned)
            .contains(s.i, s.j, s.k))
      return t.id;
  return -1;
}

inline void add_interface_ampere(const TileLayout& L, StepPlan& plan,
                                 int substep, const char* name) {
  Phase ph;
  ph.name = name;
  ph.splittable = true;
  for (Comp c : kEComps) {
    for (const IndexBox& b : L.ampere_interface(c)) {
      Task t;
      push_update(t.items, WorkItem::Op::UpdateE, c, b, substep);
      if (!t.items.empty()) ph.tasks.push_back(std::move(t));
    }
    for (const IndexBox& b : L.pec_slabs(c)) {
      Task t;
      push_update(t.items, WorkItem::Op::Pec, c, b, substep);
      if (!t.items.empty()) ph.tasks.push_back(std::move(t));
    }
  }
  plan.phases.push_back(std::move(ph));
}

inline void add_interface_faraday(const TileLayout& L, StepPlan& plan,
                                  bool fused, int substep, const char* name) {
  Phase ph;
  ph.name = name;
  ph.splittable = true;
  for (Comp c : kHComps)
    for (const IndexBox& b : L.faraday_interface(c, fused)) {
      Task t;
      push_update(t.items, WorkItem::Op::UpdateH, c, b, substep);
      if (!t.items.empty()) ph.tasks.push_back(std::move(t));
    }
  plan.phases.push_back(std::move(ph));
}

inline void add_source_phase(StepPlan& plan, const std::vector<int>& sources,
                             int substep, const char* name) {
  if (sources.empty()) return;
  Phase ph;
  ph.name = name;
  for (int s : sources) {
    Task t;
    t.items.push_back({WorkItem::Op::Inject, Comp::Ex, {}, substep, s});
    ph.tasks.push_back(std::move(t));
  }
  plan.phases.push_back(std::move(ph));
}

}  // namespace detail

/// Whole-domain Ampere pass, PEC, sources, whole-domain Faraday pass.
inline StepPlan plan_standard(const GridDims& dims, int n_sources) {
  StepPlan plan;
  plan.variant = Variant::Standard;

  Phase ampere{"ampere", true, true, {}};
  for (Comp c : kEComps) {
    Task t;
    detail::push_update(t.items, WorkItem::Op::UpdateE, c,
                        curl_updatable_box(dims, c));
    ampere.tasks.push_back(std::move(t));
  }
  plan.phases.push_back(std::move(ampere));

  Phase bc{"pec", false, true, {}};
  std::vector<IndexBox> slabs;
  for (Comp c : kEComps) {
    slabs.clear();
    pec_boxes(dims, c, slabs);
    for (const IndexBox& b : slabs) {
      Task t;
      detail::push_update(t.items, WorkItem::Op::Pec, c, b);
      bc.tasks.push_back(std::move(t));
    }
  }
  plan.phases.push_back(std::move(bc));

  std::vector<int> all_sources(static_cast<std::size_t>(n_sources));
  for (int s = 0; s < n_sources; ++s) all_sources[static_cast<std::size_t>(s)] = s;
  detail::add_source_phase(plan, all_sources, 0, "source");

  Phase faraday{"faraday", true, true, {}};
  for (Comp c : kHComps) {
    Task t;
    detail::push_update(t.items, WorkItem::Op::UpdateH, c,
                        comp_extents(dims, c));
    faraday.tasks.push_back(std::move(t));
  }
  plan.phases.push_back(std::move(faraday));
  return plan;
}

/// Per-tile volume Ampere, interface Ampere (with PEC), sources, per-tile
/// volume Faraday, interface Faraday. Four synchronization points.
inline StepPlan plan_tiled(const TileLayout& L,
                           const std::vector<SourceSpec>& sources) {
  StepPlan plan;
  plan.variant = Variant::Tiled;

  Phase volA{"vol-ampere", true, false, {}};
  for (const Tile& t : L.tiles) {
    Task task;
    task.tile = t.id;
    for (Comp c : kEComps)
      detail::push_update(task.items, WorkItem::Op::UpdateE, c,
                          tile_volume_box(t.cells, L.dims, c, VolKind::Owned));
    volA.tasks.push_back(std::move(task));
  }
  plan.phases.push_back(std::move(volA));

  detail::add_interface_ampere(L, plan, 0, "surf-ampere");

  std::vector<int> all_sources;
  for (std::size_t s = 0; s < sources.size(); ++s)
    all_sources.push_back(static_cast<int>(s));
  detail::add_source_phase(plan, all_sources, 0, "source");

  Phase volF{"vol-faraday", true, false, {}};
  for (const Tile& t : L.tiles) {
    Task task;
    task.tile = t.id;
    for (Comp c : kHComps)
      detail::push_update(task.items, WorkItem::Op::UpdateH, c,
                          tile_volume_box(t.cells, L.dims, c, VolKind::Owned));
    volF.tasks.push_back(std::move(task));
  }
  plan.phases.push_back(std::move(volF));

  detail::add_interface_faraday(L, plan, false, 0, "surf-faraday");
  return plan;
}

namespace detail {

/// Fused per-tile task: Ampere ownership boxes, tile-owned injections, then
/// the Faraday boxes restricted to faces reading tile-private edges only.
inline Task fused_tile_task(const TileLayout& L, const Tile& t,
                            const std::vector<SourceSpec>& sources) {
  Task task;
  task.tile = t.id;
  for (Comp c : kEComps)
    push_update(task.items, WorkItem::Op::UpdateE, c,
                tile_volume_box(t.cells, L.dims, c, VolKind::Owned));
  for (std::size_t s = 0; s < sources.size(); ++s)
    if (owning_tile(L, sources[s]) == t.id)
      task.items.push_back(
          {WorkItem::Op::Inject, Comp::Ex, {}, 0, static_cast<int>(s)});
  for (Comp c : kHComps)
    push_update(task.items, WorkItem::Op::UpdateH, c,
                tile_volume_box(t.cells, L.dims, c, VolKind::Fused));
  return task;
}

/// Pipelined k-plane sweep over the same boxes as the fused task: after the
/// electric plane k is complete, the magnetic plane k-1 only reads final
/// data. Valid only for tiles with no source cell (vacuum tiles).
inline Task planewise_tile_task(const GridDims& dims, const Tile& t) {
  Task task;
  task.tile = t.id;
  IndexBox eb[3], hb[3];
  for (int c = 0; c < 3; ++c) {
    eb[c] = tile_volume_box(t.cells, dims,
                            kEComps[static_cast<std::size_t>(c)],
                            VolKind::Owned);
    hb[c] = tile_volume_box(t.cells, dims,
                            kHComps[static_cast<std::size_t>(c)],
                            VolKind::Fused);
  }
  for (int p = t.cells.z.lo; p < t.cells.z.hi; ++p) {
    for (int c = 0; c < 3; ++c)
      push_update(task.items, WorkItem::Op::UpdateE,
                  kEComps[static_cast<std::size_t>(c)], plane_of(eb[c], p));
    for (int c = 0; c < 3; ++c)
      push_update(task.items, WorkItem::Op::UpdateH,
                  kHComps[static_cast<std::size_t>(c)], plane_of(hb[c], p - 1));
  }
  return task;
}

}  // namespace detail

/// Fused Ampere+Faraday volume pass per tile (one cross-tile
/// synchronization point), then interface Ampere, interface sources,
/// interface Faraday.
inline StepPlan plan_interleaved(const TileLayout& L,
                                 const std::vector<SourceSpec>& sources) {
  StepPlan plan;
  plan.variant = Variant::Interleaved;

  Phase vol{"vol-fused", true, false, {}};
  for (const Tile& t : L.tiles)
    vol.tasks.push_back(detail::fused_tile_task(L, t, sources));
  plan.phases.push_back(std::move(vol));

  detail::add_interface_ampere(L, plan, 0, "surf-ampere");

  std::vector<int> iface_sources;
  for (std::size_t s = 0; s < sources.size(); ++s)
    if (detail::owning_tile(L, sources[s]) < 0)
      iface_sources.push_back(static_cast<int>(s));
  detail::add_source_phase(plan, iface_sources, 0, "source");

  detail::add_interface_faraday(L, plan, true, 0, "surf-faraday");
  return plan;
}

/// Like the interleaved plan but each vacuum tile runs its volume work as a
/// pipelined k-plane sweep, keeping only a few planes hot per tile. Tiles
/// holding a source cell fall back to the fused ordering; `fallback_tiles`
/// (when given) receives their count.
inline StepPlan plan_planewise(const TileLayout& L,
                               const std::vector<SourceSpec>& sources,
                               int* fallback_tiles = nullptr) {
  StepPlan plan;
  plan.variant = Variant::Planewise;

  int fallbacks = 0;
  Phase vol{"vol-planes", true, false, {}};
  for (const Tile& t : L.tiles) {
    bool vacuum = true;
    for (const SourceSpec& s : sources)
      if (detail::owning_tile(L, s) == t.id) vacuum = false;
    if (vacuum) {
      vol.tasks.push_back(detail::planewise_tile_task(L.dims, t));
    } else {
      vol.tasks.push_back(detail::fused_tile_task(L, t, sources));
      ++fallbacks;
    }
  }
  plan.phases.push_back(std::move(vol));
  if (fallback_tiles) *fallback_tiles = fallbacks;

  detail::add_interface_ampere(L, plan, 0, "surf-ampere");

  std::vector<int> iface_sources;
  for (std::size_t s = 0; s < sources.size(); ++s)
    if (detail::owning_tile(L, sources[s]) < 0)
      iface_sources.push_back(static_cast<int>(s));
  detail::add_source_phase(plan, iface_sources, 0, "source");

  detail::add_interface_faraday(L, plan, true, 0, "surf-faraday");
  return plan;
}

/// Two time levels per invocation. Per tile, a four-call pipelined sweep
/// advances the deep-interior DoFs two levels while the data is hot; the
/// first step is then completed at the interfaces, the one-cell-wide
/// intermediate layer of each tile is advanced, and the second step's
/// interfaces are completed. Sources and probes must not fire inside the
/// gathered pair (the runner suspends gathering around them).
inline StepPlan plan_twostep(const TileLayout& L) {
  StepPlan plan;
  plan.variant = Variant::TwoStep;
  plan.substeps = 2;
  plan.needs_vacuum_tiles = true;

  Phase vol{"vol-twostep", true, false, {}};
  for (const Tile& t : L.tiles) {
    Task task;
    task.tile = t.id;
    IndexBox a1[3], f1[3], a2[3], f2[3];
    for (int c = 0; c < 3; ++c) {
      const Comp e = kEComps[static_cast<std::size_t>(c)];
      const Comp h = kHComps[static_cast<std::size_t>(c)];
      a1[c] = tile_volume_box(t.cells, L.dims, e, VolKind::Owned);
      f1[c] = tile_volume_box(t.cells, L.dims, h, VolKind::Fused);
      a2[c] = tile_volume_box(t.cells, L.dims, e, VolKind::SecondAmpere);
      f2[c] = tile_volume_box(t.cells, L.dims, h, VolKind::SecondFaraday);
    }
    for (int p = t.cells.z.lo; p < t.cells.z.hi; ++p) {
      for (int c = 0; c < 3; ++c)
        detail::push_update(task.items, WorkItem::Op::UpdateE,
                            kEComps[static_cast<std::size_t>(c)],
                            detail::plane_of(a1[c], p), 0);
      for (int c = 0; c < 3; ++c)
        detail::push_update(task.items, WorkItem::Op::UpdateH,
                            kHComps[static_cast<std::size_t>(c)],
                            detail::plane_of(f1[c], p - 1), 0);
      for (int c = 0; c < 3; ++c)
        detail::push_update(task.items, WorkItem::Op::UpdateE,
                            kEComps[static_cast<std::size_t>(c)],
                            detail::plane_of(a2[c], p - 1), 1);
      for (int c = 0; c < 3; ++c)
        detail::push_update(task.items, WorkItem::Op::UpdateH,
                            kHComps[static_cast<std::size_t>(c)],
                            detail::plane_of(f2[c], p - 2), 1);
    }
    vol.tasks.push_back(std::move(task));
  }
  plan.phases.push_back(std::move(vol));

  detail::add_interface_ampere(L, plan, 0, "surf-ampere-1");
  detail::add_interface_faraday(L, plan, true, 0, "surf-faraday-1");

  // Intermediate one-cell layer: completes the second step inside each tile
  // once every magnetic DoF has reached the first step's half level.
  Phase layer{"vol-layer", true, false, {}};
  for (const Tile& t : L.tiles) {
    Task task;
    task.tile = t.id;
    for (int c = 0; c < 3; ++c) {
      const Comp e = kEComps[static_cast<std::size_t>(c)];
      box_difference(tile_volume_box(t.cells, L.dims, e, VolKind::Owned),
                     tile_volume_box(t.cells, L.dims, e, VolKind::SecondAmpere),
                     [&](const IndexBox& b) {
                       detail::push_update(task.items, WorkItem::Op::UpdateE,
                                           e, b, 1);
                     });
    }
    for (int c = 0; c < 3; ++c) {
      const Comp h = kHComps[static_cast<std::size_t>(c)];
      box_difference(tile_volume_box(t.cells, L.dims, h, VolKind::Fused),
                     tile_volume_box(t.cells, L.dims, h, VolKind::SecondFaraday),
                     [&](const IndexBox& b) {
                       detail::push_update(task.items, WorkItem::Op::UpdateH,
                                           h, b, 1);
                     });
    }
    layer.tasks.push_back(std::move(task));
  }
  plan.phases.push_back(std::move(layer));

  detail::add_interface_ampere(L, plan, 1, "surf-ampere-2");
  detail::add_interface_faraday(L, plan, true, 1, "surf-faraday-2");
  return plan;
}

/// Builds the plan of `variant` for one invocation.
inline StepPlan build_plan(Variant v, const TileLayout& L,
                           const std::vector<SourceSpec>& sources,
                           int* fallback_tiles = nullptr) {
  if (fallback_tiles) *fallback_tiles = 0;
  switch (v) {
    case Variant::Standard:
      return plan_standard(L.dims, static_cast<int>(sources.size()));
    case Variant::Tiled:
      return plan_tiled(L, sources);
    case Variant::Interleaved:
      return plan_interleaved(L, sources);
    case Variant::Planewise:
      return plan_planewise(L, sources, fallback_tiles);
    default:
      return plan_twostep(L);
  }
}

}  // namespace yeeblock
