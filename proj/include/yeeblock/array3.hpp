#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace yeeblock {

/// Half-open integer interval [lo, hi).
struct Interval {
  int lo = 0;
  int hi = 0;

  constexpr int length() const { return hi > lo ? hi - lo : 0; }
  constexpr bool empty() const { return hi <= lo; }
  constexpr bool contains(int v) const { return v >= lo && v < hi; }
};

constexpr Interval intersect(Interval a, Interval b) {
  return {a.lo > b.lo ? a.lo : b.lo, a.hi < b.hi ? a.hi : b.hi};
}

/// Axis-aligned half-open index box [x.lo,x.hi) x [y.lo,y.hi) x [z.lo,z.hi).
struct IndexBox {
  Interval x, y, z;

  constexpr bool empty() const { return x.empty() || y.empty() || z.empty(); }
  constexpr long long volume() const {
    return empty() ? 0
                   : static_cast<long long>(x.length()) * y.length() * z.length();
  }
  constexpr bool contains(int i, int j, int k) const {
    return x.contains(i) && y.contains(j) && z.contains(k);
  }
  Interval& axis(int a) { return a == 0 ? x : (a == 1 ? y : z); }
  const Interval& axis(int a) const { return a == 0 ? x : (a == 1 ? y : z); }
};

inline IndexBox intersect(const IndexBox& a, const IndexBox& b) {
  return {intersect(a.x, b.x), intersect(a.y, b.y), intersect(a.z, b.z)};
}

inline bool overlaps(const IndexBox& a, const IndexBox& b) {
  return !intersect(a, b).empty();
}

inline bool contains(const IndexBox& outer, const IndexBox& inner) {
  if (inner.empty()) return true;
  return inner.x.lo >= outer.x.lo && inner.x.hi <= outer.x.hi &&
         inner.y.lo >= outer.y.lo && inner.y.hi <= outer.y.hi &&
         inner.z.lo >= outer.z.lo && inner.z.hi <= outer.z.hi;
}

/// Decomposes a \ b into at most six disjoint boxes, peeling slabs in
/// axis order x-low, x-high, y-low, y-high, z-low, z-high. The order is
/// deterministic so downstream work lists are reproducible.
template <class Sink>
inline void box_difference(const IndexBox& a, const IndexBox& b, Sink&& emit) {
  IndexBox cut = intersect(a, b);
  if (cut.empty()) {
    if (!a.empty()) emit(a);
    return;
  }
  IndexBox rest = a;
  for (int ax = 0; ax < 3; ++ax) {
    const Interval r = rest.axis(ax);
    const Interval c = cut.axis(ax);
    if (r.lo < c.lo) {
      IndexBox low = rest;
      low.axis(ax) = {r.lo, c.lo};
      if (!low.empty()) emit(low);
    }
    if (c.hi < r.hi) {
      IndexBox high = rest;
      high.axis(ax) = {c.hi, r.hi};
      if (!high.empty()) emit(high);
    }
    rest.axis(ax) = c;
  }
}

/// Dense 3D array with unit stride along x (innermost), matching the
/// k-outer / j / i-inner loop nests used throughout the solver.
template <class T>
class Array3 {
 public:
  Array3() = default;
  Array3(int nx, int ny, int nz)
      : nx_(nx), ny_(ny), nz_(nz),
        data_(static_cast<std::size_t>(nx) * ny * nz, T(0)) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nz() const { return nz_; }

  IndexBox full_box() const { return {{0, nx_}, {0, ny_}, {0, nz_}}; }

  std::size_t size() const { return data_.size(); }
  std::size_t size_bytes() const { return data_.size() * sizeof(T); }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }

  std::size_t index(int i, int j, int k) const {
    assert(i >= 0 && i < nx_ && j >= 0 && j < ny_ && k >= 0 && k < nz_);
    return (static_cast<std::size_t>(k) * ny_ + j) * nx_ + i;
  }

  T& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  const T& operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }

  void fill(T v) { data_.assign(data_.size(), v); }

  bool same_extents(const Array3& o) const {
    return nx_ == o.nx_ && ny_ == o.ny_ && nz_ == o.nz_;
  }

 private:
  int nx_ = 0, ny_ = 0, nz_ = 0;
  std::vector<T> data_;
};

}  // namespace yeeblock
