#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "yeeblock/fields.hpp"

namespace yeeblock {

/// Differentiated-Gaussian current pulse
///   J(t) = amplitude * (t - t0)/sigma * exp(-(t - t0)^2 / (2 sigma^2)),
/// with t0 = 4*sigma by default. Zero mean, so a soft source leaves no DC
/// charge behind.
struct Waveform {
  double amplitude = 1.0;
  double sigma = 1.0;
  double t0 = 4.0;

  static Waveform pulse(double amplitude, double sigma) {
    return {amplitude, sigma, 4.0 * sigma};
  }

  double value(double t) const {
    const double u = (t - t0) / sigma;
    return amplitude * u * std::exp(-0.5 * u * u);
  }
};

/// Soft current source on one E DoF. `position` indexes the component's own
/// array and must be strictly interior to the grid. Injection stops after
/// `active_steps` updates.
struct SourceSpec {
  int i = 0, j = 0, k = 0;
  Comp component = Comp::Ez;
  Waveform waveform;
  long long active_steps = std::numeric_limits<long long>::max();

  bool active_at(long long step) const {
    return step < active_steps && waveform.amplitude != 0.0;
  }

  void validate(const GridDims& g) const {
    if (!is_electric(component))
      throw std::invalid_argument("SourceSpec: component must be electric");
    IndexBox interior = curl_updatable_box(g, component);
    // strictly interior: off the boundary planes on every axis
    for (int a = 0; a < 3; ++a) {
      Interval r = interior.axis(a);
      if (!is_node_axis(component, a)) r = {r.lo + 1, r.hi - 1};
      const int idx = a == 0 ? i : (a == 1 ? j : k);
      if (!r.contains(idx))
        throw std::invalid_argument("SourceSpec: position not interior");
    }
  }
};

/// Adds -dt*J(step*dt) to the source DoF (soft source against the electric
/// update). The waveform is evaluated in double and converted once, so
/// every scheduler injects bit-identical increments.
template <class Real>
void inject_current(FieldSet<Real>& f, const SourceSpec& s, long long step,
                    double dt) {
  if (step < 0) throw std::invalid_argument("inject_current: negative step");
  if (!s.active_at(step)) return;
  const double j = s.waveform.value(static_cast<double>(step) * dt);
  f.field(s.component)(s.i, s.j, s.k) += static_cast<Real>(-dt * j);
}

}  // namespace yeeblock
