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

#include "beamamp/damp.hpp"

#include <cmath>
#include <string>

#include "beamamp/errors.hpp"
#include "beamamp/kernels.hpp"

namespace beamamp {

namespace {

double residual_level(std::span<const double> z) {
    return std::sqrt(kernels::squared_norm(z) / static_cast<double>(z.size()));
}

LayerRecord make_record(const SolverState& s, double divergence, std::optional<std::span<const double>> truth) {
    LayerRecord rec;
    rec.layer = s.layer_index;
    rec.sigma_hat = s.sigma_hat;
    rec.divergence = divergence;
    rec.estimate_energy = kernels::squared_norm(s.h_hat);
    if (truth) {
        std::vector<double> diff(s.h_hat);
        kernels::axpy(-1.0, *truth, diff);
        rec.error_energy = kernels::squared_norm(diff);
    }
    return rec;
}

}  // namespace

SolverState init(std::span<const double> r, std::size_t mn) {
    if (r.empty()) throw InvalidArgument("measurement vector is empty");
    SolverState s;
    s.h_hat.assign(mn, 0.0);
    s.z.assign(r.begin(), r.end());
    s.sigma_hat = residual_level(s.z);
    s.layer_index = 0;
    return s;
}

SolverState layer_step(const SolverState& state, const MeasurementOperator& op, std::span<const double> r,
                       const Denoiser& denoiser, Rng& rng, const SolverOptions& options,
                       const LayerObserver& observer) {
    const std::size_t k = op.rows();
    if (r.size() != k || state.z.size() != k || state.h_hat.size() != op.cols())
        throw InvalidArgument("layer_step: state, operator and measurements disagree in size");

    const double sigma = residual_level(state.z);
    std::vector<double> x = op.apply_adjoint(state.z);
    kernels::axpy(1.0, state.h_hat, x);

    SolverState next;
    next.h_hat = denoiser.denoise(x, sigma);
    if (next.h_hat.size() != x.size())
        throw NumericError(state.layer_index, "denoiser changed the vector length");

    const DivergenceEstimate div =
        mc_divergence(denoiser, x, sigma, rng, options.probes, std::span<const double>(next.h_hat));
    if (!std::isfinite(div.value)) throw NumericError(state.layer_index, "non-finite divergence estimate");

    std::vector<double> fitted = op.apply(next.h_hat);
    next.z.assign(r.begin(), r.end());
    kernels::axpy(-1.0, fitted, next.z);
    if (options.onsager) kernels::axpy(div.value / static_cast<double>(k), state.z, next.z);

    next.sigma_hat = residual_level(next.z);
    next.layer_index = state.layer_index + 1;
    if (!std::isfinite(next.sigma_hat)) throw NumericError(next.layer_index, "residual diverged");

    if (observer) observer(LayerView{state.layer_index, x, sigma, next.h_hat, &div});
    return next;
}

MeasurementOperator unit_column_operator(const MeasurementOperator& op) {
    return op.rescaled(1.0 / std::sqrt(static_cast<double>(op.rows())));
}

SolverResult run(std::span<const double> r, const MeasurementOperator& op, const Denoiser& denoiser, Rng& rng,
                 const SolverOptions& options, std::optional<std::span<const double>> truth,
                 const LayerObserver& observer) {
    if (options.layers == 0) throw InvalidArgument("at least one layer is required");
    if (truth && truth->size() != op.cols()) throw InvalidArgument("truth length does not match the operator");

    const MeasurementOperator a = unit_column_operator(op);
    const double gain = a.scale() / op.scale();
    std::vector<double> ra(r.begin(), r.end());
    for (double& v : ra) v *= gain;

    SolverResult result;
    if (truth) result.trajectory.truth_energy = kernels::squared_norm(*truth);

    SolverState s = init(ra, op.cols());
    result.trajectory.layers.reserve(options.layers + 1);
    result.trajectory.layers.push_back(make_record(s, 0.0, truth));

    double last_div = 0.0;
    const LayerObserver track = [&](const LayerView& v) {
        last_div = v.divergence->value;
        if (observer) observer(v);
    };
    for (std::size_t l = 0; l < options.layers; ++l) {
        s = layer_step(s, a, ra, denoiser, rng, options, track);
        result.trajectory.layers.push_back(make_record(s, last_div, truth));
    }
    result.estimate = std::move(s.h_hat);
    return result;
}

}  // namespace beamamp
