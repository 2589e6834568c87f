// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The beamamp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "kernels_impl.hpp"

#include <algorithm>
#include <cmath>

namespace beamamp::kernels::scalar {

double dot(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void soft_threshold(const double* x, double t, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::copysign(std::max(std::abs(x[i]) - t, 0.0), x[i]);
}

void conv3x3_accumulate(const float* in, std::size_t h, std::size_t w, const float* k, float* out) {
    const auto hi = static_cast<std::ptrdiff_t>(h);
    const auto wi = static_cast<std::ptrdiff_t>(w);
    for (std::ptrdiff_t y = 0; y < hi; ++y) {
        float* orow = out + y * wi;
        for (std::ptrdiff_t r = 0; r < 3; ++r) {
            const std::ptrdiff_t sy = y + r - 1;
            if (sy < 0 || sy >= hi) continue;
            const float* irow = in + sy * wi;
            for (std::ptrdiff_t c = 0; c < 3; ++c) {
                const std::ptrdiff_t dx = c - 1;
                const float kv = k[r * 3 + c];
                const std::ptrdiff_t x0 = std::max<std::ptrdiff_t>(0, -dx);
                const std::ptrdiff_t x1 = std::min<std::ptrdiff_t>(wi, wi - dx);
                for (std::ptrdiff_t x = x0; x < x1; ++x) orow[x] += kv * irow[x + dx];
            }
        }
    }
}

void relu(float* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] = std::max(x[i], 0.0f);
}

}  // namespace beamamp::kernels::scalar
