#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "yeeblock/perf_model.hpp"
#include "yeeblock/runner.hpp"

namespace yeeblock {

enum class Precision { Single, Double };

inline const char* precision_name(Precision p) {
  return p == Precision::Single ? "single" : "double";
}
inline int precision_bytes(Precision p) {
  return p == Precision::Single ? 4 : 8;
}

inline std::optional<Split> parse_split(const std::string& s) {
  Split sp;
  char x1 = 0, x2 = 0;
  std::sscanf(s.c_str(), "%d%c%d%c%d", &sp.sx, &x1, &sp.sy, &x2, &sp.sz);
  if (x1 != 'x' || x2 != 'x' || sp.sx < 1 || sp.sy < 1 || sp.sz < 1)
    return std::nullopt;
  return sp;
}

inline std::string split_name(const Split& s) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%dx%dx%d", s.sx, s.sy, s.sz);
  return buf;
}

/// Cube-cavity benchmark configuration. The desk-scale default is a 128^3
/// cube over 300 steps; the historical large case (402^3, 1300 steps) is a
/// documented preset, not the default.
struct BenchConfig {
  std::string case_name = "cube";
  int size = 128;
  long long steps = 300;
  std::string split = "auto";  // "SXxSYxSZ" or "auto"
  std::vector<Variant> variants{kAllVariants.begin(), kAllVariants.end()};
  std::vector<int> threads = {1};
  std::vector<Precision> precisions = {Precision::Double};
  MachineModel machine;  // cache/core budget for auto splits, predict mode
  double safety = 0.99;
  double source_amplitude = 1.0;
  double source_sigma_dt = 8.0;      // sigma as a multiple of dt
  long long source_steps = 50;       // injection switch-off step
  int probe_stride = 20;
  bool quiescent_skip = true;
  std::string out_path;

  enum class Mode { Measure, Verify, Predict } mode = Mode::Measure;

  void validate() const {
    if (steps < 1) throw std::invalid_argument("BenchConfig: steps < 1");
    if (size < 8) throw std::invalid_argument("BenchConfig: size < 8");
  }
};

/// Six probes at documented fixed fractions of the cube (not a
/// reconstruction of any particular measurement setup).
inline std::vector<ProbeSpec> default_probes(int n, int stride) {
  auto at = [&](double fx, double fy, double fz) {
    return ProbeSpec{static_cast<int>(fx * n), static_cast<int>(fy * n),
                     static_cast<int>(fz * n), Comp::Ez, stride};
  };
  return {at(0.50, 0.50, 0.50), at(0.25, 0.25, 0.25), at(0.75, 0.75, 0.75),
          at(0.25, 0.75, 0.50), at(0.75, 0.25, 0.50), at(0.50, 0.25, 0.75)};
}

inline SourceSpec default_source(int n, double dt, const BenchConfig& cfg) {
  SourceSpec s;
  s.i = n / 2;
  s.j = n / 2;
  s.k = n / 2;
  s.component = Comp::Ez;
  s.waveform = Waveform::pulse(cfg.source_amplitude, cfg.source_sigma_dt * dt);
  s.active_steps = cfg.source_steps;
  return s;
}

inline Split resolve_split(const BenchConfig& cfg, Precision p, int threads) {
  if (cfg.split == "auto")
    return auto_split({cfg.size, cfg.size, cfg.size}, cfg.machine.cache_bytes,
                      precision_bytes(p), threads);
  auto s = parse_split(cfg.split);
  if (!s) throw std::invalid_argument("bad split spec: " + cfg.split);
  return *s;
}

/// Deterministic summary of one cavity run: final-state digest, the probe
/// file contents, and the timing statistics.
struct CaseResult {
  std::string checksum;
  std::string probe_text;
  RunStats stats;
};

template <class Real>
CaseResult run_case(const BenchConfig& cfg, Variant v, const Split& split,
                    int threads) {
  cfg.validate();
  GridSpec<Real> grid = make_uniform_grid<Real>(
      cfg.size, Real(1), Real(kVacuumLightSpeed), cfg.safety);
  TileLayout layout = make_layout(grid.dims(), split);
  RunOptions<Real> opts;
  opts.sources = {default_source(cfg.size, static_cast<double>(grid.dt), cfg)};
  opts.probes = default_probes(cfg.size, cfg.probe_stride);
  opts.quiescent_skip = cfg.quiescent_skip;
  opts.exec.workers = threads;

  Simulation<Real> sim(grid, layout, v, std::move(opts));
  auto records = sim.run(cfg.steps);

  CaseResult r;
  r.checksum = field_digest_hex(sim.fields());
  r.probe_text = format_probe_records(
      records, std::is_same_v<Real, float> ? 9 : 17);
  r.stats = sim.stats();
  return r;
}

inline CaseResult run_case(const BenchConfig& cfg, Variant v,
                           const Split& split, int threads, Precision p) {
  return p == Precision::Single ? run_case<float>(cfg, v, split, threads)
                                : run_case<double>(cfg, v, split, threads);
}

struct BenchRecord {
  std::string case_name;
  std::string split;
  int cores = 1;
  Precision precision = Precision::Double;
  Variant variant = Variant::Standard;
  double mcs = 0, total_s = 0, vol_s = 0, vol_pct = 0;
  std::string checksum;
};

/// Runs every (variant, threads, precision) combination of the config,
/// timing total and volume-pass work separately. The field outputs are
/// deterministic; only the timing columns vary run to run.
inline std::vector<BenchRecord> run_bench(const BenchConfig& cfg) {
  cfg.validate();
  std::vector<BenchRecord> out;
  const long long cells =
      static_cast<long long>(cfg.size) * cfg.size * cfg.size;
  for (Precision p : cfg.precisions)
    for (int threads : cfg.threads) {
      const Split split = resolve_split(cfg, p, threads);
      for (Variant v : cfg.variants) {
        CaseResult r = run_case(cfg, v, split, threads, p);
        BenchRecord rec;
        rec.case_name = cfg.case_name;
        rec.split = split_name(split);
        rec.cores = threads;
        rec.precision = p;
        rec.variant = v;
        rec.total_s = r.stats.total_seconds;
        rec.vol_s = r.stats.volume_seconds;
        rec.vol_pct = rec.total_s > 0 ? 100.0 * rec.vol_s / rec.total_s : 0.0;
        rec.mcs = rec.total_s > 0
                      ? static_cast<double>(cells) * cfg.steps / rec.total_s / 1e6
                      : 0.0;
        rec.checksum = r.checksum;
        out.push_back(std::move(rec));
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// Equivalence verification.

struct VerifyReport {
  struct Line {
    std::string reference, candidate;
    bool fields_equal = false, probes_equal = false;
    bool pass() const { return fields_equal && probes_equal; }
  };
  std::vector<Line> lines;

  bool all_pass() const {
    for (const Line& l : lines)
      if (!l.pass()) return false;
    return true;
  }
  std::string text() const {
    std::string out;
    for (const Line& l : lines) {
      out += l.pass() ? "PASS" : "FAIL";
      out += "  " + l.reference + " vs " + l.candidate;
      if (!l.fields_equal) out += "  [fields differ]";
      if (!l.probes_equal) out += "  [probes differ]";
      out += "\n";
    }
    out += all_pass() ? "verify: PASS\n" : "verify: FAIL\n";
    return out;
  }
};

inline VerifyReport::Line compare_case_results(const std::string& ref_label,
                                               const CaseResult& ref,
                                               const std::string& label,
                                               const CaseResult& r) {
  VerifyReport::Line l;
  l.reference = ref_label;
  l.candidate = label;
  l.fields_equal = ref.checksum == r.checksum;
  l.probes_equal = ref.probe_text == r.probe_text;
  return l;
}

/// Runs every configured variant/thread combination from the identical
/// initial state and compares final fields byte-for-byte and probe files
/// line-for-line against the first combination.
inline VerifyReport verify_equivalence(const BenchConfig& cfg) {
  if (cfg.variants.size() < 2)
    throw std::invalid_argument("verify_equivalence: need >= 2 variants");
  VerifyReport report;
  for (Precision p : cfg.precisions) {
    std::optional<CaseResult> ref;
    std::string ref_label;
    for (int threads : cfg.threads) {
      const Split split = resolve_split(cfg, p, threads);
      for (Variant v : cfg.variants) {
        CaseResult r = run_case(cfg, v, split, threads, p);
        std::string label = std::string(variant_name(v)) + "/" +
                            split_name(split) + "/t" + std::to_string(threads) +
                            "/" + precision_name(p);
        if (!ref) {
          ref = std::move(r);
          ref_label = label;
          continue;
        }
        report.lines.push_back(compare_case_results(ref_label, *ref, label, r));
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Energy conservation report.

struct EnergyReport {
  struct Line {
    Precision precision;
    double max_relative_drift = 0.0;
  };
  std::vector<Line> lines;

  std::string text() const {
    std::string out;
    char buf[128];
    for (const Line& l : lines) {
      std::snprintf(buf, sizeof(buf), "%s: max relative energy drift %.3e\n",
                    precision_name(l.precision), l.max_relative_drift);
      out += buf;
    }
    return out;
  }
};

/// Advances the reference scheduler, measuring the leapfrog invariant every
/// step once the source has switched off; reports the largest relative
/// drift against the first post-switch-off value.
template <class Real>
double measure_energy_drift(const BenchConfig& cfg) {
  if (cfg.source_steps >= cfg.steps)
    throw std::invalid_argument("energy_report: source never switches off");
  GridSpec<Real> grid = make_uniform_grid<Real>(
      cfg.size, Real(1), Real(kVacuumLightSpeed), cfg.safety);
  TileLayout layout = make_layout(grid.dims(), {1, 1, 1});
  RunOptions<Real> opts;
  opts.sources = {default_source(cfg.size, static_cast<double>(grid.dt), cfg)};
  opts.exec.workers = 1;
  Simulation<Real> sim(grid, layout, Variant::Standard, std::move(opts));

  double reference = 0.0, max_drift = 0.0;
  bool have_reference = false;
  for (long long s = 0; s < cfg.steps; ++s) {
    HSnapshot<Real> prev(sim.fields());
    sim.run(1);
    if (s + 1 <= cfg.source_steps) continue;
    const double e = total_energy(grid, sim.fields(), prev);
    if (!have_reference) {
      reference = e;
      have_reference = true;
      continue;
    }
    if (reference != 0.0)
      max_drift = std::max(max_drift, std::abs(e - reference) / std::abs(reference));
    else
      max_drift = std::max(max_drift, std::abs(e));
  }
  return max_drift;
}

inline EnergyReport energy_report(const BenchConfig& cfg) {
  EnergyReport rep;
  for (Precision p : cfg.precisions) {
    const double drift = p == Precision::Single
                             ? measure_energy_drift<float>(cfg)
                             : measure_energy_drift<double>(cfg);
    rep.lines.push_back({p, drift});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Table output.

inline std::string emit_csv(const std::vector<BenchRecord>& records) {
  std::string out =
      "case,split,cores,precision,variant,mcs,total_s,vol_s,vol_pct,checksum\n";
  char buf[256];
  for (const BenchRecord& r : records) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%d,%s,%s,%.2f,%.6f,%.6f,%.1f,%s\n",
                  r.case_name.c_str(), r.split.c_str(), r.cores,
                  precision_name(r.precision), variant_name(r.variant), r.mcs,
                  r.total_s, r.vol_s, r.vol_pct, r.checksum.c_str());
    out += buf;
  }
  return out;
}

inline std::string emit_markdown(const std::vector<BenchRecord>& records) {
  std::string out =
      "| case | split | cores | precision | variant | MC/s | total (s) | vol"
      " (s) | V/T % | checksum |\n"
      "|------|-------|-------|-----------|---------|------|-----------|-----"
      "----|-------|----------|\n";
  char buf[256];
  for (const BenchRecord& r : records) {
    std::snprintf(buf, sizeof(buf),
                  "| %s | %s | %d | %s | %s | %.2f | %.3f | %.3f | %.1f | %s |\n",
                  r.case_name.c_str(), r.split.c_str(), r.cores,
                  precision_name(r.precision), variant_name(r.variant), r.mcs,
                  r.total_s, r.vol_s, r.vol_pct, r.checksum.c_str());
    out += buf;
  }
  return out;
}

/// Writes CSV ("csv") or Markdown ("md"/"markdown") to `path`.
inline void emit_tables(const std::vector<BenchRecord>& records,
                        const std::string& format, const std::string& path) {
  if (records.empty()) throw std::invalid_argument("emit_tables: no records");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_tables: cannot write " + path);
  if (format == "csv")
    out << emit_csv(records);
  else if (format == "md" || format == "markdown")
    out << emit_markdown(records);
  else
    throw std::invalid_argument("emit_tables: unknown format " + format);
}

/// Analytical bounds table for the configured machine, sizes and variants.
inline std::string predict_table(const BenchConfig& cfg) {
  const MachineModel& m = cfg.machine;
  m.validate();
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "machine: %.0f MB/s, %lld B cache, %.0f MFlops x %d cores, "
                "%d-byte reals\n",
                m.mem_bandwidth_mbps, m.cache_bytes, m.mflops_per_core,
                m.cores, m.precision_bytes);
  out += buf;
  std::snprintf(buf, sizeof(buf), "compute bound: %.0f MC/s\n",
                compute_bound_mcs(m));
  out += buf;
  out += "variant      accesses  bw-bound  cache-side  predicted\n";
  const long long cells =
      static_cast<long long>(cfg.size) * cfg.size * cfg.size;
  for (Variant v : cfg.variants) {
    std::snprintf(buf, sizeof(buf), "%-12s %8d  %7.0f  %10d  %9.0f\n",
                  variant_name(v), variant_cost(v).accesses_per_field,
                  bandwidth_bound_mcs(m, v), cache_fit_side(m, v),
                  predicted_mcs(m, v, cells));
    out += buf;
  }
  return out;
}

}  // namespace yeeblock
