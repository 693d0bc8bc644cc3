// Copyright 2026 The qsched Authors
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

#ifndef QSCHED_BOUNDS_LAMBERT_W_HPP_
#define QSCHED_BOUNDS_LAMBERT_W_HPP_

#include <cmath>
#include <stdexcept>

namespace qsched {

// Lower real branch W_{-1} on [-1/e, 0). Seeded with
// -(u + sqrt(2u) + 1) for z = -exp(-u - 1), then Halley steps.
inline double lambert_w_minus1(double z) {
  const double branch = -std::exp(-1.0);
  if (!(z >= branch && z < 0.0)) {
    throw std::domain_error("lambert_w_minus1: z outside [-1/e, 0)");
  }
  if (z == branch) return -1.0;
  const double u = -std::log(-z) - 1.0;
  double w = -(u + std::sqrt(2.0 * (u > 0 ? u : 0.0)) + 1.0);
  for (int it = 0; it < 100; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    if (std::fabs(f) <= 1e-13 * std::fabs(z)) break;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double fp = ew * wp1;
    const double step = f / (fp - (w + 2.0) * f / (2.0 * wp1));
    double next = w - step;
    if (next > -1.0) next = (w - 1.0) / 2.0;
    if (next == w) break;
    w = next;
  }
  return w;
}

}  // namespace qsched

#endif  // QSCHED_BOUNDS_LAMBERT_W_HPP_
