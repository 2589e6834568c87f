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

// Compiled with -mavx2 -mfma; only reached after a CPUID check.

#include "kernels_impl.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace beamamp::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double dot(const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

void soft_threshold(const double* x, double t, double* out, std::size_t n) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    const __m256d vt = _mm256_set1_pd(t);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        const __m256d mag = _mm256_andnot_pd(sign_mask, v);
        const __m256d shrunk = _mm256_max_pd(_mm256_sub_pd(mag, vt), zero);
        _mm256_storeu_pd(out + i, _mm256_or_pd(shrunk, _mm256_and_pd(sign_mask, v)));
    }
    for (; i < n; ++i) out[i] = std::copysign(std::max(std::abs(x[i]) - t, 0.0), x[i]);
}

void conv3x3_accumulate(const float* in, std::size_t h, std::size_t w, const float* k, float* out) {
    const auto hi = static_cast<std::ptrdiff_t>(h);
    const auto wi = static_cast<std::ptrdiff_t>(w);
    __m256 taps[9];
    for (int t = 0; t < 9; ++t) taps[t] = _mm256_set1_ps(k[t]);

    for (std::ptrdiff_t y = 0; y < hi; ++y) {
        float* orow = out + y * wi;
        const float* rows[3];
        for (std::ptrdiff_t r = 0; r < 3; ++r) {
            const std::ptrdiff_t sy = y + r - 1;
            rows[r] = (sy < 0 || sy >= hi) ? nullptr : in + sy * wi;
        }

        // Columns whose full 3-wide neighbourhood is inside the plane.
        std::ptrdiff_t x = 1;
        for (; x + 8 <= wi - 1; x += 8) {
            __m256 acc = _mm256_loadu_ps(orow + x);
            for (int r = 0; r < 3; ++r) {
                if (!rows[r]) continue;
                const float* p = rows[r] + x;
                acc = _mm256_fmadd_ps(taps[r * 3 + 0], _mm256_loadu_ps(p - 1), acc);
                acc = _mm256_fmadd_ps(taps[r * 3 + 1], _mm256_loadu_ps(p), acc);
                acc = _mm256_fmadd_ps(taps[r * 3 + 2], _mm256_loadu_ps(p + 1), acc);
            }
            _mm256_storeu_ps(orow + x, acc);
        }

        auto scalar_pixel = [&](std::ptrdiff_t px) {
            float acc = orow[px];
            for (int r = 0; r < 3; ++r) {
                if (!rows[r]) continue;
                for (std::ptrdiff_t c = 0; c < 3; ++c) {
                    const std::ptrdiff_t sx = px + c - 1;
                    if (sx < 0 || sx >= wi) continue;
                    acc += k[r * 3 + c] * rows[r][sx];
                }
            }
            orow[px] = acc;
        };
        if (wi > 0) scalar_pixel(0);
        for (std::ptrdiff_t px = std::max<std::ptrdiff_t>(x, 1); px < wi; ++px) scalar_pixel(px);
    }
}

void relu(float* x, std::size_t n) {
    const __m256 zero = _mm256_setzero_ps();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) _mm256_storeu_ps(x + i, _mm256_max_ps(_mm256_loadu_ps(x + i), zero));
    for (; i < n; ++i) x[i] = std::max(x[i], 0.0f);
}

}  // namespace beamamp::kernels::avx2
