#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "yeeblock/staggering.hpp"

namespace yeeblock {

inline constexpr double kVacuumLightSpeed = 299792458.0;  // m/s

/// Cartesian staggered-mesh geometry. `Real` selects the working precision
/// of the whole solver (float or double); both instantiations must pass the
/// full test suite.
template <class Real>
struct GridSpec {
  int nx = 0, ny = 0, nz = 0;
  std::vector<Real> dx, dy, dz;  // cell edge lengths per axis, metres
  Real dt = Real(0);             // time step, seconds
  Real c = Real(kVacuumLightSpeed);

  GridDims dims() const { return {nx, ny, nz}; }

  const std::vector<Real>& spacing(int axis) const {
    return axis == 0 ? dx : (axis == 1 ? dy : dz);
  }

  void validate() const {
    if (nx < 1 || ny < 1 || nz < 1)
      throw std::invalid_argument("GridSpec: cell counts must be positive");
    if (static_cast<int>(dx.size()) != nx || static_cast<int>(dy.size()) != ny ||
        static_cast<int>(dz.size()) != nz)
      throw std::invalid_argument("GridSpec: spacing array length mismatch");
    for (int a = 0; a < 3; ++a)
      for (Real h : spacing(a))
        if (!(h > Real(0)))
          throw std::invalid_argument("GridSpec: spacings must be positive");
    if (!(c > Real(0)))
      throw std::invalid_argument("GridSpec: wave speed must be positive");
  }
};

/// Largest stable time step for the explicit leapfrog update, scaled by
/// `safety` in (0, 1]: safety / (c * sqrt(1/min(dx)^2 + 1/min(dy)^2 +
/// 1/min(dz)^2)). Evaluated in double regardless of the grid precision.
template <class Real>
double stable_dt(const GridSpec<Real>& g, double safety) {
  g.validate();
  if (!(safety > 0.0) || safety > 1.0)
    throw std::invalid_argument("stable_dt: safety must be in (0, 1]");
  double inv_sq = 0.0;
  for (int a = 0; a < 3; ++a) {
    double hmin = static_cast<double>(g.spacing(a)[0]);
    for (Real h : g.spacing(a)) hmin = std::min(hmin, static_cast<double>(h));
    inv_sq += 1.0 / (hmin * hmin);
  }
  return safety / (static_cast<double>(g.c) * std::sqrt(inv_sq));
}

/// Uniform cube helper: n^3 cells of edge h, dt = stable_dt * safety.
template <class Real>
GridSpec<Real> make_uniform_grid(int n, Real h, Real c, double safety = 0.99) {
  GridSpec<Real> g;
  g.nx = g.ny = g.nz = n;
  g.dx.assign(n, h);
  g.dy.assign(n, h);
  g.dz.assign(n, h);
  g.c = c;
  g.dt = Real(0);
  g.dt = static_cast<Real>(stable_dt(g, safety));
  return g;
}

/// Dimensionless update factors c*dt/dx[i] (and y, z), one 1D array per
/// axis. Signs live in the kernel expressions, never in these arrays; both
/// curl updates share this single set.
template <class Real>
struct Coefficients {
  std::vector<Real> cdx, cdy, cdz;

  const std::vector<Real>& axis(int a) const {
    return a == 0 ? cdx : (a == 1 ? cdy : cdz);
  }
};

/// Each entry is one division c*dt/d (no reassociation), so results are
/// reproducible bit for bit.
template <class Real>
Coefficients<Real> build_coefficients(const GridSpec<Real>& g) {
  g.validate();
  Coefficients<Real> co;
  const Real cdt = g.c * g.dt;
  auto fill = [cdt](const std::vector<Real>& d, std::vector<Real>& out) {
    out.resize(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) out[i] = cdt / d[i];
  };
  fill(g.dx, co.cdx);
  fill(g.dy, co.cdy);
  fill(g.dz, co.cdz);
  return co;
}

}  // namespace yeeblock
