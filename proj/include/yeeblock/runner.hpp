#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <memory>

#include "yeeblock/kernels.hpp"
#include "yeeblock/parallel.hpp"
#include "yeeblock/probe.hpp"
#include "yeeblock/schedule.hpp"

namespace yeeblock {

struct RunStats {
  long long steps = 0;
  double total_seconds = 0.0;
  double volume_seconds = 0.0;
  long long skipped_tiles = 0;   // volume tasks skipped as quiescent
  int fallback_tiles = 0;        // tiles running fused order instead of planes
  long long single_steps = 0;    // TwoStep invocations that could not gather
};

namespace detail {

template <class Real>
bool all_zero_bits(const Array3<Real>& a, const IndexBox& b) {
  using Bits = std::conditional_t<sizeof(Real) == 4, std::uint32_t, std::uint64_t>;
  for (int k = b.z.lo; k < b.z.hi; ++k)
    for (int j = b.y.lo; j < b.y.hi; ++j)
      for (int i = b.x.lo; i < b.x.hi; ++i)
        if (std::bit_cast<Bits>(a(i, j, k)) != 0) return false;
  return true;
}

/// DoF cover of a closed cell box for one component.
inline IndexBox dof_cover(const IndexBox& cells, Comp c) {
  IndexBox b = cells;
  for (int a = 0; a < 3; ++a)
    if (is_node_axis(c, a)) b.axis(a).hi += 1;
  return b;
}

inline bool source_touches(const SourceSpec& s, const IndexBox& cells) {
  const int idx[3] = {s.i, s.j, s.k};
  for (int a = 0; a < 3; ++a) {
    const Interval r = cells.axis(a);
    if (is_node_axis(s.component, a)) {
      if (idx[a] < r.lo || idx[a] > r.hi) return false;
    } else {
      if (!r.contains(idx[a])) return false;
    }
  }
  return true;
}

}  // namespace detail

/// True iff every field DoF of the tile, its boundary and the one-cell halo
/// its update chain can read is exactly +0.0 (bit pattern zero). Skipping
/// such a tile's volume passes leaves the result unchanged: every value the
/// skipped updates would read is still zero when it would be read, so every
/// skipped increment is zero.
template <class Real>
bool skip_quiescent(const TileLayout& layout, const Tile& tile,
                    const FieldSet<Real>& f) {
  const IndexBox halo = layout.grown_cells(tile, 1);
  for (Comp c : kAllComps)
    if (!detail::all_zero_bits(f.field(c), detail::dof_cover(halo, c)))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Plan execution.

template <class Real>
struct PlanContext {
  FieldSet<Real>* fields = nullptr;
  const Coefficients<Real>* coeffs = nullptr;
  const std::vector<SourceSpec>* sources = nullptr;
  double dt = 0.0;
  long long step_base = 0;                    // step index of substep 0
  const std::vector<char>* tile_skip = nullptr;
};

namespace detail {

template <class Real>
void run_item(const PlanContext<Real>& ctx, const WorkItem& it) {
  switch (it.op) {
    case WorkItem::Op::UpdateE:
      update_e_box(*ctx.fields, *ctx.coeffs, it.comp, it.box);
      break;
    case WorkItem::Op::UpdateH:
      update_h_box(*ctx.fields, *ctx.coeffs, it.comp, it.box);
      break;
    case WorkItem::Op::Pec:
      zero_box(*ctx.fields, it.comp, it.box);
      break;
    case WorkItem::Op::Inject:
      inject_current(*ctx.fields, (*ctx.sources)[static_cast<std::size_t>(it.source)],
                     ctx.step_base + it.substep, ctx.dt);
      break;
  }
}

template <class Real>
void run_task(const PlanContext<Real>& ctx, const Task& t) {
  const bool skipped = t.tile >= 0 && ctx.tile_skip &&
                       (*ctx.tile_skip)[static_cast<std::size_t>(t.tile)];
  for (const WorkItem& it : t.items) {
    if (skipped && it.op != WorkItem::Op::Inject) continue;
    run_item(ctx, it);
  }
}

/// Splits a single-update task into near-equal spans of its longest axis so
/// interface slabs spread across workers. Values are unchanged by any
/// partition; this is balance only.
inline void split_task(const Task& t, int pieces, std::vector<Task>& out) {
  const WorkItem& it = t.items.front();
  int axis = 0;
  for (int a = 1; a < 3; ++a)
    if (it.box.axis(a).length() > it.box.axis(axis).length()) axis = a;
  const Interval r = it.box.axis(axis);
  pieces = std::min(pieces, r.length());
  if (pieces <= 1) {
    out.push_back(t);
    return;
  }
  const std::vector<int> runs = near_equal_runs(r.length(), pieces);
  for (int p = 0; p < pieces; ++p) {
    Task piece = t;
    piece.items.front().box.axis(axis) = {r.lo + runs[p], r.lo + runs[p + 1]};
    out.push_back(std::move(piece));
  }
}

}  // namespace detail

/// Executes one plan invocation. With a pool, phases are barriers: tile
/// tasks go to their assigned worker, splittable tasks are subdivided and
/// dealt round-robin. Any distribution yields bit-identical fields because
/// tasks within a phase write disjoint DoFs and read only data finalized
/// before the phase.
template <class Real>
void execute_plan(const StepPlan& plan, const PlanContext<Real>& ctx,
                  WorkerPool* pool, const Assignment* assign,
                  RunStats* stats = nullptr) {
  using Clock = std::chrono::steady_clock;
  for (const Phase& ph : plan.phases) {
    const auto t0 = Clock::now();
    if (!pool || pool->workers() == 1) {
      for (const Task& t : ph.tasks) detail::run_task(ctx, t);
    } else {
      const int W = pool->workers();
      std::vector<std::vector<const Task*>> per_worker(
          static_cast<std::size_t>(W));
      std::vector<Task> scratch;
      if (ph.splittable) {
        scratch.reserve(ph.tasks.size() * static_cast<std::size_t>(W));
        for (const Task& t : ph.tasks) detail::split_task(t, W, scratch);
      }
      const std::vector<Task>& tasks = ph.splittable ? scratch : ph.tasks;
      int rr = 0;
      for (const Task& t : tasks) {
        int w;
        if (t.tile >= 0 && assign)
          w = assign->worker_of(t.tile) % W;
        else
          w = rr++ % W;
        per_worker[static_cast<std::size_t>(w)].push_back(&t);
      }
      pool->run([&](int w) {
        for (const Task* t : per_worker[static_cast<std::size_t>(w)])
          detail::run_task(ctx, *t);
      });
    }
    if (stats) {
      const double dts = std::chrono::duration<double>(Clock::now() - t0).count();
      if (ph.volume) stats->volume_seconds += dts;
    }
  }
}

// ---------------------------------------------------------------------------
// Simulation runner.

template <class Real>
struct RunOptions {
  std::vector<SourceSpec> sources;
  std::vector<ProbeSpec> probes;
  bool quiescent_skip = true;
  ExecConfig exec;
  /// Called after every advance at which the state is globally consistent
  /// (every single step; gathered pairs only at the pair end).
  std::function<void(const FieldSet<Real>&, long long)> after_step;
};

/// Owns the state and cached plans for one variant and drives the time
/// loop, including the gather suspension that keeps TwoStep output
/// identical to every other variant.
template <class Real>
class Simulation {
 public:
  Simulation(const GridSpec<Real>& grid, const TileLayout& layout, Variant v,
             RunOptions<Real> opts)
      : grid_(grid),
        layout_(layout),
        variant_(v),
        opts_(std::move(opts)),
        coeffs_(build_coefficients(grid)),
        fields_(grid.dims()) {
    grid_.validate();
    if (layout_.dims != grid_.dims())
      throw std::invalid_argument("Simulation: layout built for another grid");
    if (!(static_cast<double>(grid_.dt) > 0.0) ||
        static_cast<double>(grid_.dt) > stable_dt(grid_, 1.0) * (1.0 + 1e-9))
      throw std::invalid_argument("Simulation: dt violates the stability bound");
    for (const SourceSpec& s : opts_.sources) s.validate(grid_.dims());
    for (const ProbeSpec& p : opts_.probes) p.validate(grid_.dims());

    plan_ = build_plan(variant_, layout_, opts_.sources, &stats_.fallback_tiles);
    if (variant_ == Variant::TwoStep)
      single_plan_ = plan_interleaved(layout_, opts_.sources);
    if (opts_.exec.workers > 1) {
      pool_ = std::make_unique<WorkerPool>(opts_.exec.workers, opts_.exec.pin);
      assign_ = assign_tiles(layout_, opts_.exec.workers);
    }
    tile_dirty_.assign(layout_.tiles.size(), 0);
    tile_skip_.assign(layout_.tiles.size(), 0);
  }

  FieldSet<Real>& fields() { return fields_; }
  const FieldSet<Real>& fields() const { return fields_; }
  const GridSpec<Real>& grid() const { return grid_; }
  const Coefficients<Real>& coeffs() const { return coeffs_; }
  const RunStats& stats() const { return stats_; }

  /// Advances n_steps time levels and returns all probe samples.
  std::vector<ProbeRecord> run(long long n_steps) {
    if (n_steps < 0) throw std::invalid_argument("run: negative step count");
    using Clock = std::chrono::steady_clock;
    const auto t0 = Clock::now();
    std::vector<ProbeRecord> records;
    long long t = fields_.step_index;
    const long long t_end = t + n_steps;
    while (t < t_end) {
      if (variant_ == Variant::TwoStep && can_gather(t, t_end)) {
        advance(plan_, t);
        t += 2;
      } else {
        if (variant_ == Variant::TwoStep) ++stats_.single_steps;
        advance(variant_ == Variant::TwoStep ? single_plan_ : plan_, t);
        t += 1;
      }
      fields_.step_index = t;
      sample(records, t);
      if (opts_.after_step) opts_.after_step(fields_, t);
    }
    stats_.total_seconds += std::chrono::duration<double>(Clock::now() - t0).count();
    stats_.steps += n_steps;
    return records;
  }

 private:
  bool source_injects(long long step) const {
    for (const SourceSpec& s : opts_.sources)
      if (s.active_at(step)) return true;
    return false;
  }
  bool probe_fires(long long step) const {
    for (const ProbeSpec& p : opts_.probes)
      if (p.fires_at(step)) return true;
    return false;
  }
  /// A pair starting at completed level t may gather iff both steps fit,
  /// no probe wants the intermediate level and no source injects in either
  /// step.
  bool can_gather(long long t, long long t_end) const {
    return t + 2 <= t_end && !probe_fires(t + 1) && !source_injects(t) &&
           !source_injects(t + 1);
  }

  void refresh_skip_flags(long long step_base, int substeps) {
    const bool tiles = variant_ != Variant::Standard;
    if (!tiles || !opts_.quiescent_skip) {
      std::fill(tile_skip_.begin(), tile_skip_.end(), char(0));
      return;
    }
    for (const Tile& t : layout_.tiles) {
      const std::size_t id = static_cast<std::size_t>(t.id);
      tile_skip_[id] = 0;
      if (tile_dirty_[id]) continue;
      bool active_source = false;
      const IndexBox halo = layout_.grown_cells(t, 1);
      for (const SourceSpec& s : opts_.sources) {
        for (int sub = 0; sub < substeps && !active_source; ++sub)
          if (s.active_at(step_base + sub) && detail::source_touches(s, halo))
            active_source = true;
      }
      if (!skip_quiescent(layout_, t, fields_)) {
        tile_dirty_[id] = 1;
        continue;
      }
      if (!active_source) {
        tile_skip_[id] = 1;
        ++stats_.skipped_tiles;
      }
    }
  }

  void advance(const StepPlan& plan, long long step_base) {
    refresh_skip_flags(step_base, plan.substeps);
    PlanContext<Real> ctx;
    ctx.fields = &fields_;
    ctx.coeffs = &coeffs_;
    ctx.sources = &opts_.sources;
    ctx.dt = static_cast<double>(grid_.dt);
    ctx.step_base = step_base;
    ctx.tile_skip = &tile_skip_;
    execute_plan(plan, ctx, pool_.get(), &assign_, &stats_);
  }

  void sample(std::vector<ProbeRecord>& records, long long step) {
    auto r = sample_probes(fields_, opts_.probes, step,
                           static_cast<double>(grid_.dt));
    records.insert(records.end(), r.begin(), r.end());
  }

  GridSpec<Real> grid_;
  TileLayout layout_;
  Variant variant_;
  RunOptions<Real> opts_;
  Coefficients<Real> coeffs_;
  FieldSet<Real> fields_;
  StepPlan plan_;
  StepPlan single_plan_;
  RunStats stats_;
  std::unique_ptr<WorkerPool> pool_;
  Assignment assign_;
  std::vector<char> tile_dirty_, tile_skip_;
};

/// Convenience wrapper matching the scheduler operation contracts: builds
/// the simulation, runs, returns the probe records (stats optional).
template <class Real>
std::vector<ProbeRecord> run_simulation(const GridSpec<Real>& grid,
                                        const TileLayout& layout, Variant v,
                                        long long n_steps,
                                        FieldSet<Real>& state,
                                        RunOptions<Real> opts = {},
                                        RunStats* stats_out = nullptr) {
  Simulation<Real> sim(grid, layout, v, std::move(opts));
  sim.fields() = state;
  auto records = sim.run(n_steps);
  state = sim.fields();
  if (stats_out) *stats_out = sim.stats();
  return records;
}

namespace detail {

template <class Real>
void one_step(const GridSpec<Real>& grid, FieldSet<Real>& f,
              const Coefficients<Real>& c, const TileLayout* layout,
              Variant v) {
  if (static_cast<double>(grid.dt) > stable_dt(grid, 1.0) * (1.0 + 1e-9))
    throw std::invalid_argument("step: dt violates the stability bound");
  TileLayout mono;
  if (!layout) {
    mono = make_layout(grid.dims(), {1, 1, 1});
    layout = &mono;
  }
  const std::vector<SourceSpec> no_sources;
  StepPlan plan = build_plan(v, *layout, no_sources);
  PlanContext<Real> ctx;
  ctx.fields = &f;
  ctx.coeffs = &c;
  ctx.sources = &no_sources;
  ctx.dt = static_cast<double>(grid.dt);
  ctx.step_base = f.step_index;
  execute_plan(plan, ctx, nullptr, nullptr);
  f.step_index += plan.substeps;
}

}  // namespace detail

// Source-free single invocations of each scheduler, advancing one time
// level (two for step_twostep). The shared state/coeffs contracts are those
// of the plan builders; sources and probes live in run_simulation.
template <class Real>
void step_standard(const GridSpec<Real>& g, FieldSet<Real>& f,
                   const Coefficients<Real>& c) {
  detail::one_step(g, f, c, nullptr, Variant::Standard);
}
template <class Real>
void step_tiled(const GridSpec<Real>& g, FieldSet<Real>& f,
                const Coefficients<Real>& c, const TileLayout& L) {
  detail::one_step(g, f, c, &L, Variant::Tiled);
}
template <class Real>
void step_interleaved(const GridSpec<Real>& g, FieldSet<Real>& f,
                      const Coefficients<Real>& c, const TileLayout& L) {
  detail::one_step(g, f, c, &L, Variant::Interleaved);
}
template <class Real>
void step_planewise(const GridSpec<Real>& g, FieldSet<Real>& f,
                    const Coefficients<Real>& c, const TileLayout& L) {
  detail::one_step(g, f, c, &L, Variant::Planewise);
}
template <class Real>
void step_twostep(const GridSpec<Real>& g, FieldSet<Real>& f,
                  const Coefficients<Real>& c, const TileLayout& L) {
  detail::one_step(g, f, c, &L, Variant::TwoStep);
}

}  // namespace yeeblock
