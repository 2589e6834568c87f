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

#include "beamamp/state_evolution.hpp"

#include <cmath>
#include <string>

#include "beamamp/errors.hpp"
#include "beamamp/kernels.hpp"

namespace beamamp {

SeStep se_step(std::span<const double> h_o, const Denoiser& denoiser, double theta_prev, double delta,
               double sigma_n_sq, std::size_t mc_trials, Rng& rng) {
    if (!(delta > 0.0 && delta <= 1.0)) throw InvalidArgument("delta must lie in (0, 1], got " + std::to_string(delta));
    if (!(theta_prev >= 0.0)) throw InvalidArgument("theta must be non-negative");
    if (!(sigma_n_sq >= 0.0)) throw InvalidArgument("noise variance must be non-negative");
    if (mc_trials == 0) throw InvalidArgument("at least one Monte-Carlo trial is required");
    if (h_o.empty()) throw InvalidArgument("empty channel realization");

    SeStep step;
    step.sigma_e_sq = theta_prev / delta + sigma_n_sq;
    const double sigma_e = std::sqrt(step.sigma_e_sq);

    std::vector<double> noisy(h_o.size());
    double total = 0.0;
    for (std::size_t t = 0; t < mc_trials; ++t) {
        fill_standard_normal(rng, noisy);
        for (std::size_t i = 0; i < noisy.size(); ++i) noisy[i] = h_o[i] + sigma_e * noisy[i];
        std::vector<double> err = denoiser.denoise(noisy, sigma_e);
        kernels::axpy(-1.0, h_o, err);
        total += kernels::squared_norm(err);
    }
    step.theta_next = total / (static_cast<double>(h_o.size()) * static_cast<double>(mc_trials));
    return step;
}

SeTrajectory se_run(std::span<const double> h_o, const Denoiser& denoiser, std::size_t layers, double delta,
                    double sigma_n_sq, std::size_t mc_trials, Rng& rng) {
    if (layers == 0) throw InvalidArgument("at least one layer is required");
    if (h_o.empty()) throw InvalidArgument("empty channel realization");
    SeTrajectory tr;
    tr.delta = delta;
    tr.sigma_n_sq = sigma_n_sq;
    tr.mc_trials = mc_trials;
    tr.signal_energy = kernels::squared_norm(h_o) / static_cast<double>(h_o.size());
    tr.theta.reserve(layers + 1);
    tr.sigma_e_sq.reserve(layers);
    tr.theta.push_back(tr.signal_energy);
    for (std::size_t l = 0; l < layers; ++l) {
        const SeStep s = se_step(h_o, denoiser, tr.theta.back(), delta, sigma_n_sq, mc_trials, rng);
        tr.sigma_e_sq.push_back(s.sigma_e_sq);
        tr.theta.push_back(s.theta_next);
    }
    return tr;
}

}  // namespace beamamp
