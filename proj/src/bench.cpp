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

#include "beamamp/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <tuple>

#include "beamamp/channel_model.hpp"
#include "beamamp/damp.hpp"
#include "beamamp/errors.hpp"
#include "beamamp/kernels.hpp"
#include "beamamp/measurement.hpp"
#include "beamamp/state_evolution.hpp"

namespace beamamp {

namespace {

using RowKey = std::tuple<double, double, std::string, std::size_t>;
// Per (delta, snr, denoiser, layer): the per-trial ratios.
using RatioTable = std::map<RowKey, std::vector<double>>;

SweepResult assemble(const RatioTable& table, std::size_t excluded) {
    SweepResult out;
    out.excluded = excluded;
    out.rows.reserve(table.size());
    for (const auto& [key, ratios] : table) {
        const auto& [delta, snr, name, layer] = key;
        const RatioSummary s = summarize(ratios);
        out.rows.push_back(SweepRow{delta, snr, name, layer, s.mean_db(), s.stderr_db(), s.count});
    }
    return out;
}

std::shared_ptr<const DnCnnWeights> load_requested_weights(const ExperimentConfig& config) {
    const bool wants = std::find(config.denoisers.begin(), config.denoisers.end(), "dncnn") != config.denoisers.end();
    if (!wants) return nullptr;
    try {
        return std::make_shared<const DnCnnWeights>(load_weights(*config.weights));
    } catch (const std::exception& e) {
        throw ConfigError(std::string("cannot use DnCNN weights: ") + e.what());
    }
}

struct TrialInputs {
    MeasurementOperator op;
    std::vector<double> r;
};

TrialInputs make_measurements(const ExperimentConfig& c, const TrialSeeds& seeds, double delta, double snr_db,
                              std::span<const double> h) {
    const std::size_t k = rf_chains(delta, c.m * c.n);
    Rng sel(seeds.selection);
    MeasurementOperator op = sample_selection_network(k, c.m, c.n, sel);
    Rng noise(seeds.noise);
    std::vector<double> r = measure(op, h, snr_to_sigma(snr_db), noise);
    return {std::move(op), std::move(r)};
}

}  // namespace

NmseDenominator parse_nmse_denominator(const std::string& name) {
    if (name == "estimate") return NmseDenominator::estimate;
    if (name == "truth") return NmseDenominator::truth;
    throw ConfigError("unknown NMSE denominator '" + name + "' (expected estimate or truth)");
}

const char* to_string(NmseDenominator mode) noexcept {
    return mode == NmseDenominator::estimate ? "estimate" : "truth";
}

double nmse_from_energies(double error_energy, double estimate_energy, double truth_energy, NmseDenominator mode) {
    const double denom = mode == NmseDenominator::estimate ? estimate_energy : truth_energy;
    if (!(denom > 0.0)) throw MetricUndefined(std::string("NMSE undefined: zero ") + to_string(mode) + " energy");
    return error_energy / denom;
}

double nmse(std::span<const double> h_hat, std::span<const double> h, NmseDenominator mode) {
    if (h_hat.size() != h.size()) throw InvalidArgument("nmse: length mismatch");
    std::vector<double> diff(h_hat.begin(), h_hat.end());
    kernels::axpy(-1.0, h, diff);
    return nmse_from_energies(kernels::squared_norm(diff), kernels::squared_norm(h_hat), kernels::squared_norm(h),
                              mode);
}

double to_db(double ratio) noexcept {
    if (ratio == 0.0) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(ratio);
}

double RatioSummary::mean_db() const noexcept {
    return count == 0 ? std::numeric_limits<double>::quiet_NaN() : to_db(mean);
}

double RatioSummary::stderr_db() const noexcept {
    if (count == 0) return std::numeric_limits<double>::quiet_NaN();
    if (mean == 0.0) return 0.0;
    return 10.0 / std::numbers::ln10 * stderr_ratio / mean;
}

RatioSummary summarize(std::span<const double> ratios) {
    RatioSummary s;
    s.count = ratios.size();
    if (s.count == 0) return s;
    double sum = 0.0;
    for (double r : ratios) sum += r;
    s.mean = sum / static_cast<double>(s.count);
    if (s.count > 1) {
        double ss = 0.0;
        for (double r : ratios) ss += (r - s.mean) * (r - s.mean);
        s.stderr_ratio = std::sqrt(ss / static_cast<double>(s.count - 1) / static_cast<double>(s.count));
    }
    return s;
}

TrialSeeds trial_seeds(std::uint64_t seed, std::size_t trial) noexcept {
    return {derive_seed(seed, 2, trial), derive_seed(seed, 3, trial), derive_seed(seed, 4, trial),
            derive_seed(seed, 5, trial)};
}

const std::vector<std::string>& registered_denoisers() {
    static const std::vector<std::string> names{"wiener", "soft", "dncnn", "oracle"};
    return names;
}

void ExperimentConfig::validate() const {
    if (m == 0 || n == 0) throw ConfigError("array dimensions must be positive");
    if (num_paths == 0) throw ConfigError("--paths must be at least 1");
    if (trials == 0) throw ConfigError("--trials must be at least 1");
    if (layers == 0) throw ConfigError("--layers must be at least 1");
    if (probes == 0 || se_trials == 0) throw ConfigError("probe and SE trial counts must be at least 1");
    if (!(lambda > 0.0)) throw ConfigError("--lambda must be positive");
    if (deltas.empty() || snr_db.empty() || denoisers.empty())
        throw ConfigError("delta, SNR and denoiser lists must be non-empty");
    for (double d : deltas)
        if (!(d > 0.0 && d <= 1.0)) throw ConfigError("every delta must lie in (0, 1], got " + std::to_string(d));
    for (double s : snr_db)
        if (std::isnan(s) || s == -std::numeric_limits<double>::infinity())
            throw ConfigError("SNR values must be numbers above -inf dB");
    const auto& known = registered_denoisers();
    for (const auto& d : denoisers) {
        if (std::find(known.begin(), known.end(), d) == known.end())
            throw ConfigError("unknown denoiser '" + d + "'");
        if (d == "dncnn") {
            if (!weights) throw ConfigError("denoiser dncnn requires --weights");
            if (!std::filesystem::is_regular_file(*weights))
                throw ConfigError("weight file not found: " + weights->string());
        }
    }
}

std::unique_ptr<Denoiser> make_denoiser(const std::string& name, const ExperimentConfig& config,
                                        const std::shared_ptr<const DnCnnWeights>& weights,
                                        std::span<const double> truth) {
    if (name == "wiener") return std::make_unique<WienerDenoiser>();
    if (name == "soft") return std::make_unique<SoftThresholdDenoiser>(config.lambda);
    if (name == "oracle") return std::make_unique<OracleDenoiser>(std::vector<double>(truth.begin(), truth.end()));
    if (name == "dncnn") {
        if (!weights) throw ConfigError("denoiser dncnn requires weights");
        return std::make_unique<DnCnnDenoiser>(weights, config.m, config.n);
    }
    throw ConfigError("unknown denoiser '" + name + "'");
}

SweepResult run_sweep(const ExperimentConfig& config) {
    config.validate();
    const auto weights = load_requested_weights(config);

    RatioTable table;
    std::size_t excluded = 0;
    // Pre-create every key so rows exist even when all trials are excluded.
    for (double delta : config.deltas)
        for (double snr : config.snr_db)
            for (const auto& name : config.denoisers)
                for (std::size_t l = 0; l <= config.layers; ++l) table[{delta, snr, name, l}];

    SolverOptions opts;
    opts.layers = config.layers;
    opts.probes = config.probes;

    for (std::size_t t = 0; t < config.trials; ++t) {
        const ChannelVector h = vectorize(sample_channel(config.seed, t, config.num_paths, config.m, config.n));
        const TrialSeeds seeds = trial_seeds(config.seed, t);
        const double truth_energy = kernels::squared_norm(h);
        for (double delta : config.deltas) {
            for (double snr : config.snr_db) {
                const TrialInputs in = make_measurements(config, seeds, delta, snr, h);
                for (const auto& name : config.denoisers) {
                    const auto den = make_denoiser(name, config, weights, h);
                    Rng probe(seeds.probe);
                    const SolverResult res = run(in.r, in.op, *den, probe, opts, std::span<const double>(h));
                    for (const auto& rec : res.trajectory.layers) {
                        try {
                            table[{delta, snr, name, rec.layer}].push_back(nmse_from_energies(
                                *rec.error_energy, rec.estimate_energy, truth_energy, config.nmse_denominator));
                        } catch (const MetricUndefined&) {
                            ++excluded;
                        }
                    }
                }
            }
        }
    }
    return assemble(table, excluded);
}

SweepResult run_se_compare(const ExperimentConfig& config) {
    config.validate();
    const auto weights = load_requested_weights(config);

    RatioTable table;
    std::size_t excluded = 0;
    SolverOptions opts;
    opts.layers = config.layers;
    opts.probes = config.probes;
    const std::size_t mn = config.m * config.n;

    for (std::size_t t = 0; t < config.trials; ++t) {
        const ChannelVector h = vectorize(sample_channel(config.seed, t, config.num_paths, config.m, config.n));
        const TrialSeeds seeds = trial_seeds(config.seed, t);
        const double truth_energy = kernels::squared_norm(h);
        for (double delta : config.deltas) {
            const std::size_t k = rf_chains(delta, mn);
            const double delta_eff = static_cast<double>(k) / static_cast<double>(mn);
            for (double snr : config.snr_db) {
                const double sigma_n = snr_to_sigma(snr);
                const double se_noise = sigma_n * sigma_n / delta_eff;
                const TrialInputs in = make_measurements(config, seeds, delta, snr, h);
                for (const auto& name : config.denoisers) {
                    const auto den = make_denoiser(name, config, weights, h);
                    Rng probe(seeds.probe);
                    const SolverResult sim = run(in.r, in.op, *den, probe, opts, std::span<const double>(h));
                    Rng se_rng(seeds.se);
                    const SeTrajectory se = se_run(h, *den, config.layers, delta_eff, se_noise, config.se_trials, se_rng);
                    for (std::size_t l = 0; l <= config.layers; ++l) {
                        const auto& rec = sim.trajectory.layers[l];
                        try {
                            table[{delta, snr, name + ":sim", l}].push_back(nmse_from_energies(
                                *rec.error_energy, rec.estimate_energy, truth_energy, NmseDenominator::truth));
                            table[{delta, snr, name + ":se", l}].push_back(se.predicted_nmse(l));
                        } catch (const MetricUndefined&) {
                            ++excluded;
                        }
                    }
                }
            }
        }
    }
    return assemble(table, excluded);
}

std::string format_csv(const SweepResult& result) {
    std::string out(kCsvHeader);
    out += '\n';
    char buf[256];
    for (const auto& r : result.rows) {
        std::snprintf(buf, sizeof buf, "%.6f,%.6f,%s,%zu,%.6f,%.6f,%zu\n", r.delta, r.snr_db, r.denoiser.c_str(),
                      r.layer, r.nmse_db_mean, r.nmse_db_stderr, r.trials);
        out += buf;
    }
    return out;
}

void write_csv(const std::filesystem::path& path, const SweepResult& result) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError(path.string(), "cannot open for writing");
    const std::string text = format_csv(result);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw IoError(path.string(), "write failed");
}

}  // namespace beamamp
