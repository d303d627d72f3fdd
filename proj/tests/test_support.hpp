#pragma once

// Shared helpers for the test suites. The stencil table here is an
// independent restatement of the update dependencies, used as the oracle
// for interface classification and plan validation.

#include <array>
#include <cstring>
#include <random>
#include <vector>

#include "yeeblock/fields.hpp"
#include "yeeblock/staggering.hpp"

namespace ybtest {

using namespace yeeblock;

struct Dof {
  Comp comp;
  int i, j, k;
};

/// The four DoFs one update of (comp, i, j, k) reads.
inline std::array<Dof, 4> stencil_reads(Comp c, int i, int j, int k) {
  switch (c) {
    case Comp::Ex:
      return {{{Comp::Hz, i, j, k},
               {Comp::Hz, i, j - 1, k},
               {Comp::Hy, i, j, k},
               {Comp::Hy, i, j, k - 1}}};
    case Comp::Ey:
      return {{{Comp::Hx, i, j, k},
               {Comp::Hx, i, j, k - 1},
               {Comp::Hz, i, j, k},
               {Comp::Hz, i - 1, j, k}}};
    case Comp::Ez:
      return {{{Comp::Hy, i, j, k},
               {Comp::Hy, i - 1, j, k},
               {Comp::Hx, i, j, k},
               {Comp::Hx, i, j - 1, k}}};
    case Comp::Hx:
      return {{{Comp::Ey, i, j, k + 1},
               {Comp::Ey, i, j, k},
               {Comp::Ez, i, j + 1, k},
               {Comp::Ez, i, j, k}}};
    case Comp::Hy:
      return {{{Comp::Ez, i + 1, j, k},
               {Comp::Ez, i, j, k},
               {Comp::Ex, i, j, k + 1},
               {Comp::Ex, i, j, k}}};
    default:
      return {{{Comp::Ex, i, j + 1, k},
               {Comp::Ex, i, j, k},
               {Comp::Ey, i + 1, j, k},
               {Comp::Ey, i, j, k}}};
  }
}

/// Cells a DoF touches along one axis (one cell on half axes, up to two on
/// node axes).
inline Interval touching_cells(Comp c, int axis, int idx, int n) {
  if (!is_node_axis(c, axis)) return {idx, idx + 1};
  return {std::max(0, idx - 1), std::min(n, idx + 1)};
}

template <class Real>
void fill_random(FieldSet<Real>& f, unsigned seed, double amplitude = 1.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  for (Comp c : kAllComps) {
    auto& a = f.field(c);
    for (std::size_t n = 0; n < a.size(); ++n)
      a.data()[n] = static_cast<Real>(u(rng));
  }
}

template <class Real>
bool bit_identical(const FieldSet<Real>& a, const FieldSet<Real>& b) {
  for (Comp c : kAllComps) {
    if (!a.field(c).same_extents(b.field(c))) return false;
    if (std::memcmp(a.field(c).data(), b.field(c).data(),
                    a.field(c).size_bytes()) != 0)
      return false;
  }
  return true;
}

}  // namespace ybtest
