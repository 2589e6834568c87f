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

namespace beamamp::kernels {

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void soft_threshold(const double* x, double t, double* out, std::size_t n);
void conv3x3_accumulate(const float* in, std::size_t h, std::size_t w, const float* k, float* out);
void relu(float* x, std::size_t n);
}  // namespace scalar

#if defined(BEAMAMP_HAVE_AVX2)
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void soft_threshold(const double* x, double t, double* out, std::size_t n);
void conv3x3_accumulate(const float* in, std::size_t h, std::size_t w, const float* k, float* out);
void relu(float* x, std::size_t n);
}  // namespace avx2
#endif

}  // namespace beamamp::kernels
