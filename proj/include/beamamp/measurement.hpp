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
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "beamamp/random.hpp"

namespace beamamp {

/// K x MN selection network with entries sign * scale, signs in {+1, -1}.
///
/// Sampled operators use scale 1/sqrt(MN), so every row has unit l2 norm.
/// The sign pattern is immutable and shared between copies.
class MeasurementOperator {
public:
    MeasurementOperator(std::size_t k, std::size_t mn, std::vector<std::int8_t> signs);

    std::size_t rows() const noexcept { return k_; }
    std::size_t cols() const noexcept { return mn_; }
    double scale() const noexcept { return scale_; }
    double entry(std::size_t row, std::size_t col) const noexcept { return (*signs_)[row * mn_ + col] * scale_; }

    /// W h
    std::vector<double> apply(std::span<const double> h) const;
    /// W^T z
    std::vector<double> apply_adjoint(std::span<const double> z) const;

    /// Same sign pattern with entries of magnitude `scale`.
    MeasurementOperator rescaled(double scale) const;

private:
    MeasurementOperator(std::size_t k, std::size_t mn, std::shared_ptr<const std::vector<double>> signs, double scale)
        : k_(k), mn_(mn), scale_(scale), signs_(std::move(signs)) {}

    std::size_t k_;
    std::size_t mn_;
    double scale_;
    std::shared_ptr<const std::vector<double>> signs_;  // row-major, +-1.0
};

struct MeasurementConfig {
    double delta = 0.1;
    double snr_db = 10.0;
    std::uint64_t seed = 0;
};

/// K = round(delta * MN), at least 1. delta must lie in (0, 1].
std::size_t rf_chains(double delta, std::size_t mn);

/// i.i.d. equiprobable signs, scale 1/sqrt(m n).
MeasurementOperator sample_selection_network(std::size_t k, std::size_t m, std::size_t n, Rng& rng);

/// r = W h + noise, noise i.i.d. N(0, sigma_n^2) drawn directly in the K-dimensional space.
std::vector<double> measure(const MeasurementOperator& op, std::span<const double> h, double sigma_n, Rng& rng);

/// sigma_n = 10^(-snr_db/20); assumes unit average per-entry channel energy.
double snr_to_sigma(double snr_db) noexcept;

}  // namespace beamamp
