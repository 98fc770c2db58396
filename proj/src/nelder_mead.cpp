// Copyright 2026 The freecomp Authors
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

#include "freecomp/nelder_mead.hpp"

#include <algorithm>
#include <numeric>

namespace freecomp {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double> &)> &f, std::vector<double> x0,
                             const NelderMeadOptions &opts) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  int evals = 0;
  auto eval = [&](const std::vector<double> &x) {
    ++evals;
    return f(x);
  };
  for (std::size_t k = 0; k < n; ++k) {
    pts[k + 1][k] += opts.initial_step;
  }
  for (std::size_t k = 0; k <= n; ++k) {
    vals[k] = eval(pts[k]);
  }
  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto along = [&](double t, std::vector<double> &out, const std::vector<double> &worst) {
    for (std::size_t j = 0; j < n; ++j) {
      out[j] = centroid[j] + t * (worst[j] - centroid[j]);
    }
  };
  while (evals < opts.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];
    if (vals[worst] - vals[best] < opts.f_tol) {
      break;
    }
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == worst) {
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        centroid[j] += pts[k][j] / static_cast<double>(n);
      }
    }
    along(-1.0, trial, pts[worst]);
    const double fr = eval(trial);
    if (fr < vals[best]) {
      along(-2.0, trial2, pts[worst]);
      const double fe = eval(trial2);
      if (fe < fr) {
        pts[worst] = trial2;
        vals[worst] = fe;
      } else {
        pts[worst] = trial;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = trial;
      vals[worst] = fr;
      continue;
    }
    // Contract toward the better of the worst point and its reflection.
    const bool outside = fr < vals[worst];
    along(outside ? -0.5 : 0.5, trial2, pts[worst]);
    const double fc = eval(trial2);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = trial2;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == best) {
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        pts[k][j] = pts[best][j] + 0.5 * (pts[k][j] - pts[best][j]);
      }
      vals[k] = eval(pts[k]);
    }
  }
  const std::size_t best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  return {pts[best], vals[best], evals};
}

}  // namespace freecomp
