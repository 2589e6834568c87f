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
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "beamamp/cnn.hpp"
#include "beamamp/denoiser.hpp"

namespace beamamp {

enum class NmseDenominator {
    estimate,  // ||h_hat - h||^2 / ||h_hat||^2, the literal published metric
    truth,     // ||h_hat - h||^2 / ||h||^2
};

NmseDenominator parse_nmse_denominator(const std::string& name);
const char* to_string(NmseDenominator mode) noexcept;

/// Throws MetricUndefined when the selected denominator is zero.
double nmse(std::span<const double> h_hat, std::span<const double> h, NmseDenominator mode);

/// NMSE from precomputed energies; same semantics as nmse().
double nmse_from_energies(double error_energy, double estimate_energy, double truth_energy, NmseDenominator mode);

/// 10 log10(ratio); -infinity for a zero ratio.
double to_db(double ratio) noexcept;

struct ExperimentConfig {
    std::size_t m = 64;
    std::size_t n = 64;
    std::size_t num_paths = 4;
    std::vector<double> deltas{0.1};
    std::vector<double> snr_db{10.0};
    std::vector<std::string> denoisers{"soft"};
    std::optional<std::filesystem::path> weights;
    std::size_t layers = 10;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    NmseDenominator nmse_denominator = NmseDenominator::estimate;
    double lambda = SoftThresholdDenoiser::kDefaultLambda;
    std::size_t probes = 1;
    std::size_t se_trials = 50;

    /// Throws ConfigError; also checks the weight file when "dncnn" is requested.
    void validate() const;
};

/// Names accepted in ExperimentConfig::denoisers.
const std::vector<std::string>& registered_denoisers();

struct SweepRow {
    double delta = 0.0;
    double snr_db = 0.0;
    std::string denoiser;
    std::size_t layer = 0;
    double nmse_db_mean = 0.0;
    double nmse_db_stderr = 0.0;
    std::size_t trials = 0;  // trials that entered the average
};

struct SweepResult {
    std::vector<SweepRow> rows;
    /// Trial-layer pairs dropped because the NMSE denominator was zero.
    std::size_t excluded = 0;
};

/// Mean ratio and its standard error mapped to dB (delta method for the error).
struct RatioSummary {
    double mean = 0.0;
    double stderr_ratio = 0.0;
    std::size_t count = 0;
    double mean_db() const noexcept;
    double stderr_db() const noexcept;
};
RatioSummary summarize(std::span<const double> ratios);

/// Seeds of the independent random streams of trial `trial`. Channel, selection
/// signs, noise and probes are shared across (delta, SNR, denoiser) points.
struct TrialSeeds {
    std::uint64_t selection;
    std::uint64_t noise;
    std::uint64_t probe;
    std::uint64_t se;
};
TrialSeeds trial_seeds(std::uint64_t seed, std::size_t trial) noexcept;

/// Builds the named denoiser. `truth` is required for "oracle", `weights` for "dncnn".
std::unique_ptr<Denoiser> make_denoiser(const std::string& name, const ExperimentConfig& config,
                                        const std::shared_ptr<const DnCnnWeights>& weights,
                                        std::span<const double> truth);

/// Per-layer NMSE of the unrolled solver over every (delta, SNR, denoiser).
SweepResult run_sweep(const ExperimentConfig& config);

/// Paired rows per layer: "<denoiser>:se" (state-evolution prediction) and
/// "<denoiser>:sim" (solver Monte-Carlo), both normalized by ||h||^2.
SweepResult run_se_compare(const ExperimentConfig& config);

inline constexpr const char* kCsvHeader = "delta,snr_db,denoiser,layer,nmse_db_mean,nmse_db_stderr,trials";

std::string format_csv(const SweepResult& result);
void write_csv(const std::filesystem::path& path, const SweepResult& result);

}  // namespace beamamp
