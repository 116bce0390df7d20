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

#include "dismagick/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>

namespace dismagick {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

struct Simplex {
  std::vector<std::vector<double>> x;
  std::vector<double> f;
};

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::span<const double> x0, const NelderMeadConfig& cfg,
                             std::uint64_t seed) {
  const std::size_t dim = x0.size();
  NelderMeadResult res;
  res.x.assign(x0.begin(), x0.end());
  res.f = f(res.x);
  res.evaluations = 1;
  if (dim == 0) {
    res.converged = true;
    return res;
  }

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  auto eval = [&](const std::vector<double>& p) {
    ++res.evaluations;
    return f(p);
  };

  double step = cfg.initial_step;
  for (int run = 0; run <= cfg.restart_count; ++run, step *= 0.5) {
    Simplex s;
    s.x.push_back(res.x);
    s.f.push_back(res.f);
    for (std::size_t i = 0; i < dim; ++i) {
      std::vector<double> p = res.x;
      const double sign = (run > 0 && coin(rng)) ? -1.0 : 1.0;
      p[i] += sign * step;
      s.f.push_back(eval(p));
      s.x.push_back(std::move(p));
    }

    std::vector<std::size_t> order(dim + 1);
    bool converged = false;
    std::vector<double> centroid(dim), xr(dim), xe(dim), xc(dim);
    int run_iters = 0;
    while (run_iters < cfg.max_iters) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.f[a] < s.f[b]; });
      const std::size_t best = order.front(), worst = order.back(), second = order[dim - 1];

      double xspread = 0.0;
      for (std::size_t v = 0; v <= dim; ++v)
        for (std::size_t i = 0; i < dim; ++i) xspread = std::max(xspread, std::abs(s.x[v][i] - s.x[best][i]));
      if (s.f[worst] - s.f[best] <= cfg.ftol && xspread <= cfg.xtol) {
        converged = true;
        break;
      }
      ++res.iterations;
      ++run_iters;

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t v = 0; v <= dim; ++v) {
        if (v == worst) continue;
        for (std::size_t i = 0; i < dim; ++i) centroid[i] += s.x[v][i];
      }
      for (double& c : centroid) c /= static_cast<double>(dim);

      for (std::size_t i = 0; i < dim; ++i) xr[i] = centroid[i] + kReflect * (centroid[i] - s.x[worst][i]);
      const double fr = eval(xr);
      if (fr < s.f[best]) {
        for (std::size_t i = 0; i < dim; ++i) xe[i] = centroid[i] + kExpand * (xr[i] - centroid[i]);
        const double fe = eval(xe);
        if (fe < fr) {
          s.x[worst] = xe;
          s.f[worst] = fe;
        } else {
          s.x[worst] = xr;
          s.f[worst] = fr;
        }
      } else if (fr < s.f[second]) {
        s.x[worst] = xr;
        s.f[worst] = fr;
      } else {
        const bool outside = fr < s.f[worst];
        for (std::size_t i = 0; i < dim; ++i) {
          const double target = outside ? xr[i] : s.x[worst][i];
          xc[i] = centroid[i] + kContract * (target - centroid[i]);
        }
        const double fc = eval(xc);
        if (fc < (outside ? fr : s.f[worst])) {
          s.x[worst] = xc;
          s.f[worst] = fc;
        } else {
          for (std::size_t v = 0; v <= dim; ++v) {
            if (v == best) continue;
            for (std::size_t i = 0; i < dim; ++i) s.x[v][i] = s.x[best][i] + kShrink * (s.x[v][i] - s.x[best][i]);
            s.f[v] = eval(s.x[v]);
          }
        }
      }

      const auto it = std::min_element(s.f.begin(), s.f.end());
      if (res.trace.empty() || *it < res.trace.back().best)
        res.trace.push_back({res.iterations, run, *it});
    }

    const auto it = std::min_element(s.f.begin(), s.f.end());
    if (*it < res.f) {
      res.f = *it;
      res.x = s.x[static_cast<std::size_t>(it - s.f.begin())];
    }
    res.converged = converged;
  }
  return res;
}

void write_trace_csv(std::ostream& os, std::span<const NelderMeadTracePoint> trace) {
  os << "iteration,restart,best\n" << std::setprecision(17);
  for (const auto& t : trace) os << t.iteration << ',' << t.restart << ',' << t.best << '\n';
}

}  // namespace dismagick
