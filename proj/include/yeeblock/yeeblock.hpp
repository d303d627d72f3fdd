#pragma once

// Umbrella header for the yeeblock library: a staggered-grid leapfrog
// electromagnetic solver with five interchangeable, bitwise-equivalent
// update schedulers, an analytical memory/compute performance model and a
// cavity benchmark harness.

#include "yeeblock/array3.hpp"
#include "yeeblock/bench.hpp"
#include "yeeblock/fields.hpp"
#include "yeeblock/grid.hpp"
#include "yeeblock/kernels.hpp"
#include "yeeblock/parallel.hpp"
#include "yeeblock/perf_model.hpp"
#include "yeeblock/probe.hpp"
#include "yeeblock/runner.hpp"
#include "yeeblock/schedule.hpp"
#include "yeeblock/source.hpp"
#include "yeeblock/staggering.hpp"
#include "yeeblock/tiling.hpp"
