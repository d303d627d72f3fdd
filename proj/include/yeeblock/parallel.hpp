#pragma once

#include <condition_variable>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#ifdef __linux__
#include <pthread.h>
#include <sched.h>
#endif

#include "yeeblock/tiling.hpp"

namespace yeeblock {

struct ExecConfig {
  int workers = 1;
  bool pin = false;  // pin worker w to core w modulo hardware cores
  int chunk = 0;     // tiles per task hint; 0 = one task per tile
};

/// Static tile-to-worker map: per-worker contiguous blocks of the tile
/// grid, chosen among the factorizations of the worker count into three
/// factors by best balance first, then smallest inter-block face area.
struct Assignment {
  int workers = 1;
  std::vector<int> tile_to_worker;

  int worker_of(int tile) const {
    return tile_to_worker.empty() ? 0 : tile_to_worker[tile];
  }
};

namespace detail {

inline std::vector<int> near_equal_runs(int count, int parts) {
  std::vector<int> b(parts + 1, 0);
  const int base = count / parts;
  const int rem = count % parts;
  for (int t = 0; t < parts; ++t) b[t + 1] = b[t] + base + (t < rem ? 1 : 0);
  return b;
}

}  // namespace detail

inline Assignment assign_tiles(const TileLayout& layout, int workers) {
  if (workers < 1) throw std::invalid_argument("assign_tiles: workers < 1");
  Assignment out;
  out.workers = workers;
  out.tile_to_worker.assign(layout.tiles.size(), 0);
  if (workers == 1) return out;

  const Split s = layout.split;
  const GridDims d = layout.dims;
  long long best_score[2] = {-1, -1};
  int best[3] = {workers, 1, 1};
  for (int wx = 1; wx <= workers; ++wx) {
    if (workers % wx) continue;
    for (int wy = 1; wy <= workers / wx; ++wy) {
      if ((workers / wx) % wy) continue;
      const int wz = workers / wx / wy;
      // max tiles in one block under near-equal axis runs
      auto ceil_div = [](int a, int b) { return (a + b - 1) / b; };
      const long long max_tiles =
          static_cast<long long>(ceil_div(s.sx, wx)) * ceil_div(s.sy, wy) *
          ceil_div(s.sz, wz);
      const long long cut_area =
          static_cast<long long>(std::min(wx, s.sx) - 1) * d.ny * d.nz +
          static_cast<long long>(std::min(wy, s.sy) - 1) * d.nx * d.nz +
          static_cast<long long>(std::min(wz, s.sz) - 1) * d.nx * d.ny;
      if (best_score[0] < 0 || max_tiles < best_score[0] ||
          (max_tiles == best_score[0] && cut_area < best_score[1])) {
        best_score[0] = max_tiles;
        best_score[1] = cut_area;
        best[0] = wx;
        best[1] = wy;
        best[2] = wz;
      }
    }
  }

  const std::vector<int> rx = detail::near_equal_runs(s.sx, best[0]);
  const std::vector<int> ry = detail::near_equal_runs(s.sy, best[1]);
  const std::vector<int> rz = detail::near_equal_runs(s.sz, best[2]);
  auto find_run = [](const std::vector<int>& runs, int v) {
    int b = 0;
    while (b + 2 < static_cast<int>(runs.size()) && v >= runs[b + 1]) ++b;
    return b;
  };
  for (int c = 0; c < s.sz; ++c)
    for (int b = 0; b < s.sy; ++b)
      for (int a = 0; a < s.sx; ++a) {
        const int bx = find_run(rx, a);
        const int by = find_run(ry, b);
        const int bz = find_run(rz, c);
        out.tile_to_worker[layout.tile_id(a, b, c)] =
            (bz * best[1] + by) * best[0] + bx;
      }
  return out;
}

/// Fixed pool of workers executing one closure per worker per phase; the
/// calling thread acts as worker 0. run() returns only when every worker
/// has finished, which is the phase barrier.
class WorkerPool {
 public:
  explicit WorkerPool(int workers, bool pin = false) : workers_(workers) {
    if (workers_ < 1) throw std::invalid_argument("WorkerPool: workers < 1");
    const unsigned cores = std::max(1u, std::thread::hardware_concurrency());
    for (int w = 1; w < workers_; ++w) {
      threads_.emplace_back([this, w] { worker_loop(w); });
#ifdef __linux__
      if (pin) {
        cpu_set_t set;
        CPU_ZERO(&set);
        CPU_SET(static_cast<unsigned>(w) % cores, &set);
        pthread_setaffinity_np(threads_.back().native_handle(), sizeof(set),
                               &set);
      }
#endif
    }
#ifdef __linux__
    if (pin && workers_ > 0) {
      cpu_set_t set;
      CPU_ZERO(&set);
      CPU_SET(0, &set);
      pthread_setaffinity_np(pthread_self(), sizeof(set), &set);
    }
#endif
  }

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  ~WorkerPool() {
    {
      std::lock_guard<std::mutex> lock(m_);
      stop_ = true;
      ++generation_;
    }
    cv_.notify_all();
    for (std::thread& t : threads_) t.join();
  }

  int workers() const { return workers_; }

  void run(const std::function<void(int)>& fn) {
    if (workers_ == 1) {
      fn(0);
      return;
    }
    {
      std::lock_guard<std::mutex> lock(m_);
      fn_ = &fn;
      pending_ = workers_ - 1;
      ++generation_;
    }
    cv_.notify_all();
    fn(0);
    std::unique_lock<std::mutex> lock(m_);
    done_cv_.wait(lock, [this] { return pending_ == 0; });
    fn_ = nullptr;
  }

 private:
  void worker_loop(int id) {
    long long seen = 0;
    for (;;) {
      const std::function<void(int)>* fn = nullptr;
      {
        std::unique_lock<std::mutex> lock(m_);
        cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
        seen = generation_;
        if (stop_) return;
        fn = fn_;
      }
      (*fn)(id);
      {
        std::lock_guard<std::mutex> lock(m_);
        if (--pending_ == 0) done_cv_.notify_all();
      }
    }
  }

  int workers_;
  std::vector<std::thread> threads_;
  std::mutex m_;
  std::condition_variable cv_, done_cv_;
  const std::function<void(int)>* fn_ = nullptr;
  long long generation_ = 0;
  int pending_ = 0;
  bool stop_ = false;
};

}  // namespace yeeblock
