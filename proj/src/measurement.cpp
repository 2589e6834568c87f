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

#include "beamamp/measurement.hpp"

#include <cmath>
#include <string>

#include "beamamp/errors.hpp"
#include "beamamp/kernels.hpp"

namespace beamamp {

MeasurementOperator::MeasurementOperator(std::size_t k, std::size_t mn, std::vector<std::int8_t> signs)
    : k_(k), mn_(mn), scale_(1.0 / std::sqrt(static_cast<double>(mn))) {
    if (k == 0 || mn == 0) throw InvalidArgument("measurement operator needs positive dimensions");
    if (signs.size() != k * mn)
        throw InvalidArgument("expected " + std::to_string(k * mn) + " signs, got " + std::to_string(signs.size()));
    std::vector<double> expanded(signs.size());
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] != 1 && signs[i] != -1) throw InvalidArgument("selection network signs must be +1 or -1");
        expanded[i] = signs[i];
    }
    signs_ = std::make_shared<const std::vector<double>>(std::move(expanded));
}

std::vector<double> MeasurementOperator::apply(std::span<const double> h) const {
    if (h.size() != mn_)
        throw InvalidArgument("apply: expected length " + std::to_string(mn_) + ", got " + std::to_string(h.size()));
    const auto& k = kernels::active();
    std::vector<double> r(k_);
    const double* row = signs_->data();
    for (std::size_t i = 0; i < k_; ++i, row += mn_) r[i] = scale_ * k.dot(row, h.data(), mn_);
    return r;
}

std::vector<double> MeasurementOperator::apply_adjoint(std::span<const double> z) const {
    if (z.size() != k_)
        throw InvalidArgument("apply_adjoint: expected length " + std::to_string(k_) + ", got " +
                              std::to_string(z.size()));
    const auto& k = kernels::active();
    std::vector<double> out(mn_, 0.0);
    const double* row = signs_->data();
    for (std::size_t i = 0; i < k_; ++i, row += mn_) k.axpy(scale_ * z[i], row, out.data(), mn_);
    return out;
}

MeasurementOperator MeasurementOperator::rescaled(double scale) const {
    if (!(scale > 0.0) || !std::isfinite(scale)) throw InvalidArgument("operator scale must be positive");
    return MeasurementOperator(k_, mn_, signs_, scale);
}

std::size_t rf_chains(double delta, std::size_t mn) {
    if (!(delta > 0.0 && delta <= 1.0))
        throw InvalidArgument("measurement ratio must lie in (0, 1], got " + std::to_string(delta));
    const auto k = static_cast<std::size_t>(std::llround(delta * static_cast<double>(mn)));
    return k == 0 ? 1 : k;
}

MeasurementOperator sample_selection_network(std::size_t k, std::size_t m, std::size_t n, Rng& rng) {
    const std::size_t mn = m * n;
    if (k < 1 || k > mn)
        throw InvalidArgument("number of RF chains must lie in [1, " + std::to_string(mn) + "], got " +
                              std::to_string(k));
    std::vector<std::int8_t> signs(k * mn);
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (i % 64 == 0) bits = rng();
        signs[i] = (bits & 1u) ? std::int8_t{1} : std::int8_t{-1};
        bits >>= 1;
    }
    return MeasurementOperator(k, mn, std::move(signs));
}

std::vector<double> measure(const MeasurementOperator& op, std::span<const double> h, double sigma_n, Rng& rng) {
    if (!(sigma_n >= 0.0)) throw InvalidArgument("noise standard deviation must be non-negative");
    std::vector<double> r = op.apply(h);
    if (sigma_n > 0.0) {
        std::normal_distribution<double> noise(0.0, sigma_n);
        for (double& v : r) v += noise(rng);
    }
    return r;
}

double snr_to_sigma(double snr_db) noexcept { return std::pow(10.0, -snr_db / 20.0); }

}  // namespace beamamp
