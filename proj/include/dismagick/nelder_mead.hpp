// Copyright 2026 The Dismagick Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace dismagick {

struct NelderMeadConfig {
  int max_iters = 2000;
  double xtol = 1e-6;
  double ftol = 1e-8;
  double initial_step = 0.1;
  /// Extra runs started from the incumbent with the step halved each time.
  int restart_count = 2;
};

struct NelderMeadTracePoint {
  int iteration = 0;  // cumulative over restarts
  int restart = 0;
  double best = 0.0;
};

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
  /// Whether the final run met both tolerances before max_iters.
  bool converged = false;
  std::vector<NelderMeadTracePoint> trace;
};

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free simplex minimization. The starting point is always a
/// vertex of the first simplex, so the result never exceeds f(x0).
/// `seed` only picks the step signs of restart simplices.
NelderMeadResult nelder_mead(const Objective& f, std::span<const double> x0, const NelderMeadConfig& cfg,
                             std::uint64_t seed = 0);

/// CSV with header `iteration,restart,best`.
void write_trace_csv(std::ostream& os, std::span<const NelderMeadTracePoint> trace);

}  // namespace dismagick
