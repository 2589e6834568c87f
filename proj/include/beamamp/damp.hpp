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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "beamamp/channel_model.hpp"
#include "beamamp/denoiser.hpp"
#include "beamamp/measurement.hpp"
#include "beamamp/random.hpp"

namespace beamamp {

/// Iterate of the unrolled recursion at layer `layer_index`.
struct SolverState {
    ChannelVector h_hat;
    std::vector<double> z;
    double sigma_hat = 0.0;  // ||z|| / sqrt(K)
    std::size_t layer_index = 0;
};

struct LayerRecord {
    std::size_t layer = 0;
    double sigma_hat = 0.0;
    double divergence = 0.0;       // estimate that produced this layer's z; 0 at initialization
    double estimate_energy = 0.0;  // ||h_hat||^2
    std::optional<double> error_energy;  // ||h_hat - h||^2 when the truth is known
};

struct SolverTrajectory {
    std::vector<LayerRecord> layers;  // layers executed + 1
    std::optional<double> truth_energy;
};

struct SolverOptions {
    std::size_t layers = 10;
    std::size_t probes = 1;
    /// Disabling the Onsager correction turns the recursion into plain
    /// iterative denoising; only useful for diagnostics.
    bool onsager = true;
};

/// Per-layer view handed to an observer: the denoiser input x = h_hat + W^T z
/// of layer `layer` and the noise level it was denoised at.
struct LayerView {
    std::size_t layer = 0;
    std::span<const double> x;
    double sigma_hat = 0.0;
    std::span<const double> h_hat_next;
    const DivergenceEstimate* divergence = nullptr;
};

using LayerObserver = std::function<void(const LayerView&)>;

/// h_hat = 0, z = r.
SolverState init(std::span<const double> r, std::size_t mn);

/// One layer of denoising-based AMP on the operator exactly as given:
///   x = h_hat + W^T z,  h_hat' = D(x, sigma_hat),  z' = r - W h_hat' + (div D(x) / K) z.
/// The divergence is probed at the same x the denoiser saw.
SolverState layer_step(const SolverState& state, const MeasurementOperator& op, std::span<const double> r,
                       const Denoiser& denoiser, Rng& rng, const SolverOptions& options = {},
                       const LayerObserver& observer = {});

struct SolverResult {
    ChannelVector estimate;
    SolverTrajectory trajectory;
};

/// Runs `options.layers` layers with a tied denoiser.
///
/// The selection network has entries +-1/sqrt(MN), i.e. column norms
/// sqrt(K/MN). The recursion needs unit-norm columns, so both W and r are
/// rescaled by sqrt(MN/K) before iterating; sigma_hat is therefore reported
/// in the normalized measurement domain, where the noise std is sigma_n*sqrt(MN/K).
SolverResult run(std::span<const double> r, const MeasurementOperator& op, const Denoiser& denoiser, Rng& rng,
                 const SolverOptions& options = {}, std::optional<std::span<const double>> truth = std::nullopt,
                 const LayerObserver& observer = {});

/// Operator with the same signs and unit-norm columns (entries +-1/sqrt(K)).
MeasurementOperator unit_column_operator(const MeasurementOperator& op);

}  // namespace beamamp
