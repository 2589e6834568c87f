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

#pragma once

#include <cstddef>
#include <span>

// Data-parallel inner loops used by the measurement operator, the analytic
// denoisers and the CNN engine. Each kernel has a portable scalar reference
// and, on x86-64, an AVX2+FMA variant. The active table is chosen once at
// startup from CPUID; BEAMAMP_ISA=scalar forces the reference path.

namespace beamamp::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
    Isa isa;
    const char* name;

    double (*dot)(const double* x, const double* y, std::size_t n);
    /// y += a * x
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    /// out[i] = sign(x[i]) * max(|x[i]| - t, 0)
    void (*soft_threshold)(const double* x, double t, double* out, std::size_t n);
    /// Accumulates a 3x3 zero-padded cross-correlation of one row-major
    /// h x w plane into `out`. `k` holds the taps row by row.
    void (*conv3x3_accumulate)(const float* in, std::size_t h, std::size_t w, const float* k,
                               float* out);
    void (*relu)(float* x, std::size_t n);
};

const KernelTable& scalar_table() noexcept;

/// Nullptr when the variant is not compiled in or the CPU lacks the extension.
const KernelTable* avx2_table() noexcept;

/// The table selected for this process.
const KernelTable& active() noexcept;

// Span conveniences over the active table.

inline double dot(std::span<const double> x, std::span<const double> y) {
    return active().dot(x.data(), y.data(), x.size());
}

inline double squared_norm(std::span<const double> x) { return dot(x, x); }

inline void axpy(double a, std::span<const double> x, std::span<double> y) {
    active().axpy(a, x.data(), y.data(), x.size());
}

}  // namespace beamamp::kernels
