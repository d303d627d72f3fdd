#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "yeeblock/fields.hpp"

namespace yeeblock {

/// Point probe of one field component, sampled every `stride` completed
/// steps. `position` indexes the component's own array.
struct ProbeSpec {
  int i = 0, j = 0, k = 0;
  Comp component = Comp::Ez;
  int stride = 1;

  bool fires_at(long long step) const { return step % stride == 0; }

  void validate(const GridDims& g) const {
    if (stride < 1) throw std::invalid_argument("ProbeSpec: stride must be >= 1");
    if (!comp_extents(g, component).contains(i, j, k))
      throw std::invalid_argument("ProbeSpec: position outside grid");
  }
};

struct ProbeRecord {
  long long step = 0;
  double time = 0.0;  // step * dt, seconds
  int probe = 0;      // index into the probe list
  double value = 0.0; // exact (float widens losslessly)
};

/// Samples every probe whose stride divides `step`; read-only.
template <class Real>
std::vector<ProbeRecord> sample_probes(const FieldSet<Real>& f,
                                       const std::vector<ProbeSpec>& probes,
                                       long long step, double dt) {
  if (step < 0) throw std::invalid_argument("sample_probes: negative step");
  std::vector<ProbeRecord> out;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const ProbeSpec& spec = probes[p];
    if (!spec.fires_at(step)) continue;
    const double v =
        static_cast<double>(f.field(spec.component)(spec.i, spec.j, spec.k));
    out.push_back({step, static_cast<double>(step) * dt,
                   static_cast<int>(p), v});
  }
  return out;
}

/// One line per sample: step<TAB>time_seconds<TAB>probe_id<TAB>value, with
/// values printed at full round-trip precision for the run's real type
/// (value_digits = max_digits10).
inline std::string format_probe_records(const std::vector<ProbeRecord>& records,
                                        int value_digits) {
  std::string out;
  char line[128];
  for (const ProbeRecord& r : records) {
    std::snprintf(line, sizeof(line), "%lld\t%.17g\t%d\t%.*g\n",
                  r.step, r.time, r.probe, value_digits, r.value);
    out += line;
  }
  return out;
}

}  // namespace yeeblock
