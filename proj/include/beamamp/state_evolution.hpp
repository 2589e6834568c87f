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
#include <vector>

#include "beamamp/denoiser.hpp"
#include "beamamp/random.hpp"

namespace beamamp {

/// Per-layer prediction for one fixed channel realization h_o.
///
/// theta[l] is the predicted per-entry MSE of the layer-l estimate (theta[0]
/// corresponds to the zero initialization); sigma_e_sq[l] = theta[l]/delta +
/// sigma_n_sq is the effective noise variance seen by the denoiser of layer l.
struct SeTrajectory {
    std::vector<double> theta;
    std::vector<double> sigma_e_sq;
    double delta = 0.0;
    double sigma_n_sq = 0.0;
    std::size_t mc_trials = 0;
    double signal_energy = 0.0;  // ||h_o||^2 / MN

    /// theta[l] normalized by the per-entry channel energy.
    double predicted_nmse(std::size_t layer) const { return theta.at(layer) / signal_energy; }
};

struct SeStep {
    double theta_next = 0.0;
    double sigma_e_sq = 0.0;
};

inline constexpr std::size_t kDefaultSeTrials = 50;

/// sigma_e^2 = theta_prev/delta + sigma_n_sq, then
/// theta_next = mean over trials of ||D_{sigma_e}(h_o + sigma_e eps) - h_o||^2 / MN.
///
/// `sigma_n_sq` is the noise variance of the unit-column measurement model the
/// solver iterates on (for the selection network that is sigma_n^2 * MN/K).
SeStep se_step(std::span<const double> h_o, const Denoiser& denoiser, double theta_prev, double delta,
               double sigma_n_sq, std::size_t mc_trials, Rng& rng);

/// theta[0] = ||h_o||^2/MN, then `layers` applications of se_step.
SeTrajectory se_run(std::span<const double> h_o, const Denoiser& denoiser, std::size_t layers, double delta,
                    double sigma_n_sq, std::size_t mc_trials, Rng& rng);

}  // namespace beamamp
