#pragma once

#include <stdexcept>

#include "yeeblock/fields.hpp"
#include "yeeblock/grid.hpp"

namespace yeeblock {

// The per-DoF update expressions below are the only place the leapfrog
// arithmetic exists; every scheduler routes through them. Operand order is
// fixed (difference first, then scale, then the signed combination) so all
// traversal orders produce bit-identical values. The cell-size coefficient
// indexed at the node position is the one of the upper neighbouring cell;
// on uniform spacing this is the textbook staggered update.
//
// Electric update (Ampere), advancing E one level using the stored H:
//   ex(i,j,k) += cdy[j]*(hz(i,j,k)-hz(i,j-1,k)) - cdz[k]*(hy(i,j,k)-hy(i,j,k-1))
//   ey(i,j,k) += cdz[k]*(hx(i,j,k)-hx(i,j,k-1)) - cdx[i]*(hz(i,j,k)-hz(i-1,j,k))
//   ez(i,j,k) += cdx[i]*(hy(i,j,k)-hy(i-1,j,k)) - cdy[j]*(hx(i,j,k)-hx(i,j-1,k))
//
// Magnetic update (Faraday), advancing H one level using the stored E:
//   hx(i,j,k) += cdz[k]*(ey(i,j,k+1)-ey(i,j,k)) - cdy[j]*(ez(i,j+1,k)-ez(i,j,k))
//   hy(i,j,k) += cdx[i]*(ez(i+1,j,k)-ez(i,j,k)) - cdz[k]*(ex(i,j,k+1)-ex(i,j,k))
//   hz(i,j,k) += cdy[j]*(ex(i,j+1,k)-ex(i,j,k)) - cdx[i]*(ey(i+1,j,k)-ey(i,j,k))

template <class Real>
inline void update_e_dof(FieldSet<Real>& f, const Coefficients<Real>& c,
                         Comp comp, int i, int j, int k) {
  switch (comp) {
    case Comp::Ex:
      f.ex(i, j, k) += c.cdy[j] * (f.hz(i, j, k) - f.hz(i, j - 1, k)) -
                       c.cdz[k] * (f.hy(i, j, k) - f.hy(i, j, k - 1));
      break;
    case Comp::Ey:
      f.ey(i, j, k) += c.cdz[k] * (f.hx(i, j, k) - f.hx(i, j, k - 1)) -
                       c.cdx[i] * (f.hz(i, j, k) - f.hz(i - 1, j, k));
      break;
    default:
      f.ez(i, j, k) += c.cdx[i] * (f.hy(i, j, k) - f.hy(i - 1, j, k)) -
                       c.cdy[j] * (f.hx(i, j, k) - f.hx(i, j - 1, k));
      break;
  }
}

template <class Real>
inline void update_h_dof(FieldSet<Real>& f, const Coefficients<Real>& c,
                         Comp comp, int i, int j, int k) {
  switch (comp) {
    case Comp::Hx:
      f.hx(i, j, k) += c.cdz[k] * (f.ey(i, j, k + 1) - f.ey(i, j, k)) -
                       c.cdy[j] * (f.ez(i, j + 1, k) - f.ez(i, j, k));
      break;
    case Comp::Hy:
      f.hy(i, j, k) += c.cdx[i] * (f.ez(i + 1, j, k) - f.ez(i, j, k)) -
                       c.cdz[k] * (f.ex(i, j, k + 1) - f.ex(i, j, k));
      break;
    default:
      f.hz(i, j, k) += c.cdy[j] * (f.ex(i, j + 1, k) - f.ex(i, j, k)) -
                       c.cdx[i] * (f.ey(i + 1, j, k) - f.ey(i, j, k));
      break;
  }
}

namespace detail {

template <class Real, class PerDof>
inline void for_each_dof(const IndexBox& b, PerDof&& fn) {
  for (int k = b.z.lo; k < b.z.hi; ++k)
    for (int j = b.y.lo; j < b.y.hi; ++j)
      for (int i = b.x.lo; i < b.x.hi; ++i) fn(i, j, k);
}

}  // namespace detail

/// Advances one E component over `box` (component index space). Every DoF
/// in the box must have its full curl stencil in bounds, i.e. the box must
/// lie inside curl_updatable_box.
template <class Real>
inline void update_e_box(FieldSet<Real>& f, const Coefficients<Real>& c,
                         Comp comp, const IndexBox& box) {
  if (box.empty()) return;
  if (!contains(curl_updatable_box(f.dims(), comp), box))
    throw std::out_of_range("update_e_box: box outside updatable range");
  detail::for_each_dof<Real>(
      box, [&](int i, int j, int k) { update_e_dof(f, c, comp, i, j, k); });
}

/// Advances one H component over `box`. H stencils are in bounds on the
/// full component extents.
template <class Real>
inline void update_h_box(FieldSet<Real>& f, const Coefficients<Real>& c,
                         Comp comp, const IndexBox& box) {
  if (box.empty()) return;
  if (!contains(comp_extents(f.dims(), comp), box))
    throw std::out_of_range("update_h_box: box outside component extents");
  detail::for_each_dof<Real>(
      box, [&](int i, int j, int k) { update_h_dof(f, c, comp, i, j, k); });
}

/// Writes exact zeros over `box` of one component (PEC enforcement).
template <class Real>
inline void zero_box(FieldSet<Real>& f, Comp comp, const IndexBox& box) {
  if (box.empty()) return;
  Array3<Real>& a = f.field(comp);
  if (!contains(a.full_box(), box))
    throw std::out_of_range("zero_box: box outside component extents");
  detail::for_each_dof<Real>(box,
                             [&](int i, int j, int k) { a(i, j, k) = Real(0); });
}

namespace detail {

inline IndexBox node_box(const GridDims& g) {
  return {{0, g.nx + 1}, {0, g.ny + 1}, {0, g.nz + 1}};
}

inline void check_range(const GridDims& g, const IndexBox& box,
                        const char* what) {
  if (!contains(node_box(g), box))
    throw std::out_of_range(std::string(what) + ": range out of bounds");
}

}  // namespace detail

/// Ampere pass over all three E components, each restricted to `box`
/// intersected with its curl-updatable extents. Passing the full domain
/// gives the whole-grid electric update.
template <class Real>
void apply_ampere_range(FieldSet<Real>& f, const Coefficients<Real>& c,
                        const IndexBox& box) {
  detail::check_range(f.dims(), box, "apply_ampere_range");
  for (Comp comp : kEComps)
    update_e_box(f, c, comp, intersect(box, curl_updatable_box(f.dims(), comp)));
}

/// Faraday pass over all three H components restricted to `box`.
template <class Real>
void apply_faraday_range(FieldSet<Real>& f, const Coefficients<Real>& c,
                         const IndexBox& box) {
  detail::check_range(f.dims(), box, "apply_faraday_range");
  for (Comp comp : kHComps)
    update_h_box(f, c, comp, intersect(box, comp_extents(f.dims(), comp)));
}

/// Zeroes all tangential E DoFs on the six outer faces of the domain.
template <class Real>
void apply_pec_boundary(FieldSet<Real>& f) {
  std::vector<IndexBox> slabs;
  for (Comp comp : kEComps) {
    slabs.clear();
    pec_boxes(f.dims(), comp, slabs);
    for (const IndexBox& b : slabs) zero_box(f, comp, b);
  }
}

}  // namespace yeeblock
