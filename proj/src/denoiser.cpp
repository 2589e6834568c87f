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

#include "beamamp/denoiser.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "beamamp/errors.hpp"
#include "beamamp/kernels.hpp"

namespace beamamp {

WienerDenoiser::WienerDenoiser(std::optional<double> prior_variance) : prior_variance_(prior_variance) {
    if (prior_variance_ && !(*prior_variance_ >= 0.0)) throw InvalidArgument("prior variance must be non-negative");
}

std::vector<double> WienerDenoiser::denoise(std::span<const double> x, double sigma_hat) const {
    if (!(sigma_hat >= 0.0)) throw InvalidArgument("sigma_hat must be non-negative");
    const double noise_var = sigma_hat * sigma_hat;
    double v = 0.0;
    if (prior_variance_) {
        v = *prior_variance_;
    } else if (!x.empty()) {
        v = std::max(kernels::squared_norm(x) / static_cast<double>(x.size()) - noise_var, 0.0);
    }
    std::vector<double> out(x.size(), 0.0);
    if (v == 0.0) return out;
    const double gain = v / (v + noise_var);
    kernels::axpy(gain, x, out);
    return out;
}

SoftThresholdDenoiser::SoftThresholdDenoiser(double lambda) : lambda_(lambda) {
    if (!(lambda > 0.0)) throw InvalidArgument("soft-threshold multiplier must be positive");
}

std::vector<double> SoftThresholdDenoiser::denoise(std::span<const double> x, double sigma_hat) const {
    if (!(sigma_hat >= 0.0)) throw InvalidArgument("sigma_hat must be non-negative");
    std::vector<double> out(x.size());
    kernels::active().soft_threshold(x.data(), lambda_ * sigma_hat, out.data(), x.size());
    return out;
}

std::vector<double> OracleDenoiser::denoise(std::span<const double> x, double) const {
    if (x.size() != truth_.size()) throw InvalidArgument("oracle denoiser length mismatch");
    return truth_;
}

DivergenceEstimate mc_divergence(const Denoiser& denoiser, std::span<const double> x, double sigma_hat, Rng& rng,
                                 std::size_t probes, std::optional<std::span<const double>> baseline) {
    if (probes == 0) throw InvalidArgument("at least one divergence probe is required");
    double inf_norm = 0.0;
    for (double v : x) inf_norm = std::max(inf_norm, std::abs(v));

    DivergenceEstimate est;
    est.epsilon = inf_norm > 0.0 ? inf_norm / 1000.0 : kZeroInputEpsilon;
    est.probe_seed = rng();

    std::vector<double> reference;
    std::span<const double> base;
    if (baseline) {
        if (baseline->size() != x.size()) throw InvalidArgument("baseline length mismatch");
        base = *baseline;
    } else {
        reference = denoiser.denoise(x, sigma_hat);
        base = reference;
    }

    Rng probe_rng(est.probe_seed);
    std::vector<double> b(x.size());
    std::vector<double> shifted(x.size());
    double total = 0.0;
    for (std::size_t p = 0; p < probes; ++p) {
        fill_standard_normal(probe_rng, b);
        std::copy(x.begin(), x.end(), shifted.begin());
        kernels::axpy(est.epsilon, b, shifted);
        std::vector<double> moved = denoiser.denoise(shifted, sigma_hat);
        kernels::axpy(-1.0, base, moved);
        total += kernels::dot(b, moved) / est.epsilon;
    }
    est.value = total / static_cast<double>(probes);
    return est;
}

std::vector<double> onsager_term(std::span<const double> z, double divergence, std::size_t k) {
    if (k == 0) throw InvalidArgument("onsager_term: k must be at least 1");
    std::vector<double> out(z.size(), 0.0);
    kernels::axpy(divergence / static_cast<double>(k), z, out);
    return out;
}

}  // namespace beamamp
