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

#ifndef FREECOMP_NELDER_MEAD_HPP
#define FREECOMP_NELDER_MEAD_HPP

#include <functional>
#include <vector>

namespace freecomp {

struct NelderMeadOptions {
  double initial_step = 0.1;
  double f_tol = 1e-10;  // stop when the simplex values span less than this
  int max_evaluations = 2000;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
};

/// Derivative-free minimization with the standard coefficients
/// (reflect 1, expand 2, contract 1/2, shrink 1/2). Deterministic.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double> &)> &f, std::vector<double> x0,
                             const NelderMeadOptions &opts = {});

}  // namespace freecomp

#endif  // FREECOMP_NELDER_MEAD_HPP
