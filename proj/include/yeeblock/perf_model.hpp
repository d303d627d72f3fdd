#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "yeeblock/schedule.hpp"

namespace yeeblock {

// Unit conventions, chosen to match common vendor usage: bandwidth figures
// (MB/s, GB/s) are decimal multiples, cache sizes are binary bytes
// (2 MB cache = 2*1024*1024). Mixing them differently shifts every derived
// figure by ~5%, so the convention is fixed here once.

/// Machine description feeding the analytical bounds.
struct MachineModel {
  double mem_bandwidth_mbps = 6400.0;  // decimal MB/s (DDR2-800 default)
  long long cache_bytes = 2LL * 1024 * 1024;  // per core group
  double mflops_per_core = 12800.0;
  int cores = 1;
  int precision_bytes = 4;

  void validate() const {
    if (!(mem_bandwidth_mbps > 0) || cache_bytes <= 0 ||
        !(mflops_per_core > 0) || cores < 1 ||
        (precision_bytes != 4 && precision_bytes != 8))
      throw std::invalid_argument("MachineModel: invalid field");
  }
};

/// Memory-access and working-set constants per scheduling variant, with 6
/// flops per field update. Volume passes touch 6/3/2/2/1 words per field
/// update for standard/tiled/interleaved/planewise/twostep; plane-based
/// variants keep a ring of field planes hot (12 planes for the single-step
/// sweep, 18 = 3 planes x 6 fields for the two-step sweep).
struct VariantCost {
  int accesses_per_field = 6;
  int working_set_fields_per_plane = 0;  // 0 for volumetric variants
  int flops_per_field = 6;
};

inline VariantCost variant_cost(Variant v) {
  switch (v) {
    case Variant::Standard: return {6, 0, 6};
    case Variant::Tiled: return {3, 0, 6};
    case Variant::Interleaved: return {2, 0, 6};
    case Variant::Planewise: return {2, 12, 6};
    default: return {1, 18, 6};  // TwoStep
  }
}

/// Bandwidth-limited throughput in million cells per second: six fields per
/// cell, accesses_per_field words per field, precision_bytes per word.
inline double bandwidth_bound_mcs(const MachineModel& m, Variant v) {
  m.validate();
  return m.mem_bandwidth_mbps /
         (m.precision_bytes * 6.0 * variant_cost(v).accesses_per_field);
}

/// Compute-limited throughput: cores * mflops / (6 fields * 6 flops).
/// Without a usable multiply-accumulate the add-then-multiply pattern of
/// the update halves the attainable rate.
inline double compute_bound_mcs(const MachineModel& m,
                                bool fused_multiply_add_usable = true) {
  m.validate();
  const double mcs = m.cores * m.mflops_per_core / 36.0;
  return fused_multiply_add_usable ? mcs : mcs / 2.0;
}

/// Largest cubic tile edge (cells per direction) whose working set fits the
/// cache: all six fields of the cube for volumetric variants, the hot ring
/// of planes for the plane-based ones (independent of the z extent).
inline int cache_fit_side(const MachineModel& m, Variant v) {
  m.validate();
  const VariantCost c = variant_cost(v);
  const double cache = static_cast<double>(m.cache_bytes);
  double side;
  if (c.working_set_fields_per_plane == 0)
    side = std::cbrt(cache / (m.precision_bytes * 6.0));
  else
    side = std::sqrt(cache /
                     (m.precision_bytes *
                      static_cast<double>(c.working_set_fields_per_plane)));
  return static_cast<int>(side);
}

/// Expected throughput for a per-tile problem of `problem_cells`: the
/// compute bound when the tile fits in cache, otherwise the lower of the
/// two bounds.
inline double predicted_mcs(const MachineModel& m, Variant v,
                            long long problem_cells) {
  const long long side = cache_fit_side(m, v);
  const bool fits = problem_cells <= side * side * side;
  const double cb = compute_bound_mcs(m);
  return fits ? cb : std::min(bandwidth_bound_mcs(m, v), cb);
}

/// Wall time of one step over `cells` at a given throughput.
inline double step_time_seconds(long long cells, double mcs) {
  if (!(mcs > 0)) throw std::invalid_argument("step_time_seconds: mcs <= 0");
  return static_cast<double>(cells) / (mcs * 1e6);
}

/// Equivalent bandwidth a measured rate would demand from the standard
/// six-access schedule, in decimal GB/s.
inline double apparent_bandwidth_gbs(double measured_mcs,
                                     const MachineModel& m) {
  if (!(measured_mcs > 0))
    throw std::invalid_argument("apparent_bandwidth: mcs <= 0");
  return measured_mcs * m.precision_bytes * 6.0 * 6.0 / 1000.0;
}

/// Ratio form of the same figure: measured/reference times the scaled base
/// bandwidth. Quoted GB/s divide MB/s by 1024, following the customary
/// mixed decimal/binary usage for this figure.
inline double apparent_bandwidth_ratio_gbs(double measured_mcs,
                                           double reference_mcs,
                                           double base_mbps,
                                           double clock_scale) {
  if (!(reference_mcs > 0))
    throw std::invalid_argument("apparent_bandwidth_ratio: reference <= 0");
  return measured_mcs / reference_mcs * base_mbps * clock_scale / 1024.0;
}

/// Reads a machine model from a small key-value file (one `key = value` or
/// `key value` pair per line, '#' comments). Keys: mem_bandwidth_mbps,
/// cache_bytes, mflops_per_core, cores, precision_bytes.
inline MachineModel load_machine_model(std::istream& in) {
  MachineModel m;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (char& ch : line)
      if (ch == '=' || ch == ':') ch = ' ';
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    double value = 0;
    if (!(ls >> value))
      throw std::invalid_argument("machine model: missing value for " + key);
    if (key == "mem_bandwidth_mbps") m.mem_bandwidth_mbps = value;
    else if (key == "cache_bytes") m.cache_bytes = static_cast<long long>(value);
    else if (key == "mflops_per_core") m.mflops_per_core = value;
    else if (key == "cores") m.cores = static_cast<int>(value);
    else if (key == "precision_bytes") m.precision_bytes = static_cast<int>(value);
    else throw std::invalid_argument("machine model: unknown key " + key);
  }
  m.validate();
  return m;
}

inline MachineModel load_machine_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open machine model: " + path);
  return load_machine_model(in);
}

}  // namespace yeeblock
