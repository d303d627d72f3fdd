#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <stdexcept>
#include <string>

#include "yeeblock/grid.hpp"
#include "yeeblock/staggering.hpp"

namespace yeeblock {

/// The six staggered field arrays at a common logical time-level pair.
/// Fields are stored in the scaled antisymmetric form Etilde = eps0*E,
/// Htilde = H/c so that both curl updates share one coefficient set and the
/// discrete leapfrog energy is a clean quadratic. Physical fields are
/// recovered on output by dividing by eps0 (E) and multiplying by c (H).
///
/// Extents per component follow the staggering table in staggering.hpp.
template <class Real>
struct FieldSet {
  Array3<Real> ex, ey, ez, hx, hy, hz;
  long long step_index = 0;  // completed full time steps

  FieldSet() = default;
  explicit FieldSet(const GridDims& g) { allocate(g); }

  void allocate(const GridDims& g) {
    dims_ = g;
    auto alloc = [&](Comp c) {
      IndexBox b = comp_extents(g, c);
      return Array3<Real>(b.x.hi, b.y.hi, b.z.hi);
    };
    ex = alloc(Comp::Ex);
    ey = alloc(Comp::Ey);
    ez = alloc(Comp::Ez);
    hx = alloc(Comp::Hx);
    hy = alloc(Comp::Hy);
    hz = alloc(Comp::Hz);
    step_index = 0;
  }

  const GridDims& dims() const { return dims_; }

  Array3<Real>& field(Comp c) {
    switch (c) {
      case Comp::Ex: return ex;
      case Comp::Ey: return ey;
      case Comp::Ez: return ez;
      case Comp::Hx: return hx;
      case Comp::Hy: return hy;
      default: return hz;
    }
  }
  const Array3<Real>& field(Comp c) const {
    return const_cast<FieldSet*>(this)->field(c);
  }

  void zero() {
    for (Comp c : kAllComps) field(c).fill(Real(0));
    step_index = 0;
  }

 private:
  GridDims dims_;
};

/// Copy of the three magnetic arrays, used to evaluate the leapfrog energy
/// invariant across one Faraday update.
template <class Real>
struct HSnapshot {
  Array3<Real> hx, hy, hz;

  HSnapshot() = default;
  explicit HSnapshot(const FieldSet<Real>& f)
      : hx(f.hx), hy(f.hy), hz(f.hz) {}

  const Array3<Real>& field(Comp c) const {
    return c == Comp::Hx ? hx : (c == Comp::Hy ? hy : hz);
  }
};

namespace detail {

/// Dual spacing at node index i of axis `d`: half-sum of the adjacent cell
/// sizes, halved at the domain ends.
template <class Real>
double dual_spacing(const std::vector<Real>& d, int i) {
  const int n = static_cast<int>(d.size());
  if (i == 0) return 0.5 * static_cast<double>(d[0]);
  if (i == n) return 0.5 * static_cast<double>(d[n - 1]);
  return 0.5 * (static_cast<double>(d[i - 1]) + static_cast<double>(d[i]));
}

template <class Real>
double dof_volume(const GridSpec<Real>& g, Comp c, int i, int j, int k) {
  const int idx[3] = {i, j, k};
  double v = 1.0;
  for (int a = 0; a < 3; ++a) {
    const std::vector<Real>& d = g.spacing(a);
    v *= is_node_axis(c, a) ? dual_spacing(d, idx[a])
                            : static_cast<double>(d[idx[a]]);
  }
  return v;
}

}  // namespace detail

/// Discrete leapfrog invariant of the antisymmetric system: the
/// volume-weighted sum of Etilde^2 plus the volume-weighted product of the
/// magnetic field across the last Faraday update (H at n-1/2 times H at
/// n+1/2). Exactly conserved in exact arithmetic on uniform spacing in a
/// source-free PEC cavity; accumulation is in double in canonical index
/// order, so the diagnostic itself is deterministic.
template <class Real>
double total_energy(const GridSpec<Real>& g, const FieldSet<Real>& f,
                    const HSnapshot<Real>& prev_h) {
  if (f.dims() != g.dims())
    throw std::invalid_argument("total_energy: grid/field extents mismatch");
  for (Comp c : kHComps)
    if (!f.field(c).same_extents(prev_h.field(c)))
      throw std::invalid_argument("total_energy: H snapshot extents mismatch");

  double sum = 0.0;
  for (Comp c : kEComps) {
    const Array3<Real>& a = f.field(c);
    for (int k = 0; k < a.nz(); ++k)
      for (int j = 0; j < a.ny(); ++j)
        for (int i = 0; i < a.nx(); ++i) {
          const double e = static_cast<double>(a(i, j, k));
          sum += detail::dof_volume(g, c, i, j, k) * e * e;
        }
  }
  for (Comp c : kHComps) {
    const Array3<Real>& now = f.field(c);
    const Array3<Real>& prev = prev_h.field(c);
    for (int k = 0; k < now.nz(); ++k)
      for (int j = 0; j < now.ny(); ++j)
        for (int i = 0; i < now.nx(); ++i)
          sum += detail::dof_volume(g, c, i, j, k) *
                 static_cast<double>(prev(i, j, k)) *
                 static_cast<double>(now(i, j, k));
  }
  return sum;
}

/// FNV-1a digest over the raw bytes of all six arrays in canonical order.
/// Bitwise-equal states (and nothing else) produce equal digests, so the
/// cross-variant equivalence check is a string compare.
template <class Real>
std::uint64_t field_digest(const FieldSet<Real>& f) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* p, std::size_t n) {
    const unsigned char* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ull;
    }
  };
  for (Comp c : kAllComps) {
    const Array3<Real>& a = f.field(c);
    mix(a.data(), a.size_bytes());
  }
  return h;
}

template <class Real>
std::string field_digest_hex(const FieldSet<Real>& f) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(field_digest(f)));
  return std::string(buf);
}

}  // namespace yeeblock
