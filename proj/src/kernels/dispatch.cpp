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

#include "beamamp/kernels.hpp"
#include "kernels_impl.hpp"

#include <cstdlib>
#include <string_view>

namespace beamamp::kernels {

namespace {

constexpr KernelTable kScalar{
    Isa::scalar,          "scalar",           scalar::dot,  scalar::axpy, scalar::soft_threshold,
    scalar::conv3x3_accumulate, scalar::relu,
};

#if defined(BEAMAMP_HAVE_AVX2)
constexpr KernelTable kAvx2{
    Isa::avx2,          "avx2",           avx2::dot,  avx2::axpy, avx2::soft_threshold,
    avx2::conv3x3_accumulate, avx2::relu,
};

bool cpu_has_avx2() noexcept {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable& select() noexcept {
    if (const char* forced = std::getenv("BEAMAMP_ISA"); forced && std::string_view(forced) == "scalar")
        return kScalar;
    if (const KernelTable* t = avx2_table()) return *t;
    return kScalar;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#if defined(BEAMAMP_HAVE_AVX2)
    static const bool supported = cpu_has_avx2();
    return supported ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active() noexcept {
    static const KernelTable& table = select();
    return table;
}

}  // namespace beamamp::kernels
