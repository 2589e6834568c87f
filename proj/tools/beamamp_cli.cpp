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

// beamamp: dataset generation, single-shot estimation, state evolution and
// NMSE sweeps for beamspace channel estimation with denoising AMP.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "beamamp/bench.hpp"
#include "beamamp/channel_model.hpp"
#include "beamamp/damp.hpp"
#include "beamamp/errors.hpp"
#include "beamamp/kernels.hpp"
#include "beamamp/measurement.hpp"
#include "beamamp/state_evolution.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Options {
    beamamp::ExperimentConfig config;
    std::string denominator = "estimate";
    std::string weights;
    std::string out;
    std::size_t count = 1;
    bool verbose = false;
};

void add_geometry(CLI::App* cmd, Options& o) {
    cmd->add_option("--m", o.config.m, "Antenna rows (M)")->capture_default_str();
    cmd->add_option("--n", o.config.n, "Antenna columns (N)")->capture_default_str();
    cmd->add_option("--paths", o.config.num_paths, "Propagation paths per channel (P+1)")->capture_default_str();
    cmd->add_option("--seed", o.config.seed, "Master RNG seed")->capture_default_str();
}

void add_solver(CLI::App* cmd, Options& o) {
    add_geometry(cmd, o);
    cmd->add_option("--delta", o.config.deltas, "Measurement ratio K/MN (comma-separated list)")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--snr-db", o.config.snr_db, "SNR in dB (comma-separated list)")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--layers", o.config.layers, "Unrolled layers L")->capture_default_str();
    cmd->add_option("--denoiser", o.config.denoisers, "wiener, soft, dncnn or oracle (comma-separated list)")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--weights", o.weights, "DNCW weight file for the dncnn denoiser");
    cmd->add_option("--trials", o.config.trials, "Monte-Carlo trials per configuration point")->capture_default_str();
    cmd->add_option("--nmse-denominator", o.denominator, "estimate (||h_hat||^2) or truth (||h||^2)")
        ->capture_default_str();
    cmd->add_option("--lambda", o.config.lambda, "Soft-threshold multiplier")->capture_default_str();
    cmd->add_option("--probes", o.config.probes, "Divergence probes per layer")->capture_default_str();
    cmd->add_option("--mc-trials", o.config.se_trials, "Monte-Carlo draws per state-evolution step")
        ->capture_default_str();
    cmd->add_option("--out", o.out, "Output CSV path (stdout when omitted)");
}

void finalize(Options& o) {
    o.config.nmse_denominator = beamamp::parse_nmse_denominator(o.denominator);
    if (!o.weights.empty()) o.config.weights = o.weights;
}

void emit(const Options& o, const beamamp::SweepResult& result) {
    if (o.out.empty())
        std::cout << beamamp::format_csv(result);
    else
        beamamp::write_csv(o.out, result);
    if (result.excluded > 0)
        std::cerr << "note: " << result.excluded << " trial-layer NMSE values excluded (zero denominator)\n";
}

std::string db_or_dash(std::optional<double> ratio) {
    if (!ratio) return "-";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", beamamp::to_db(*ratio));
    return buf;
}

int cmd_generate(const Options& o) {
    const auto ds = beamamp::generate_dataset(o.count, o.config.num_paths, o.config.m, o.config.n, o.config.seed);
    if (o.out.empty()) throw beamamp::ConfigError("generate requires --out");
    beamamp::write_dataset(o.out, ds);
    std::cerr << "wrote " << ds.samples.size() << " channels (" << ds.m << "x" << ds.n << ") to " << o.out << "\n";
    return 0;
}

int cmd_estimate(const Options& o) {
    using namespace beamamp;
    const auto& c = o.config;
    c.validate();
    if (c.deltas.size() != 1 || c.snr_db.size() != 1 || c.denoisers.size() != 1)
        throw ConfigError("estimate takes a single --delta, --snr-db and --denoiser");

    const ChannelVector h = vectorize(sample_channel(c.seed, 0, c.num_paths, c.m, c.n));
    const TrialSeeds seeds = trial_seeds(c.seed, 0);
    Rng sel(seeds.selection), noise(seeds.noise), probe(seeds.probe);
    const auto op = sample_selection_network(rf_chains(c.deltas[0], c.m * c.n), c.m, c.n, sel);
    const auto r = measure(op, h, snr_to_sigma(c.snr_db[0]), noise);

    std::shared_ptr<const DnCnnWeights> weights;
    if (c.denoisers[0] == "dncnn") weights = std::make_shared<const DnCnnWeights>(load_weights(*c.weights));
    const auto den = make_denoiser(c.denoisers[0], c, weights, h);

    SolverOptions opts;
    opts.layers = c.layers;
    opts.probes = c.probes;
    const auto res = run(r, op, *den, probe, opts, std::span<const double>(h));

    const double truth_energy = *res.trajectory.truth_energy;
    std::cout << "layer,sigma_hat,divergence,nmse_db";
    if (o.verbose) std::cout << ",nmse_db_estimate,nmse_db_truth";
    std::cout << "\n";
    for (const auto& rec : res.trajectory.layers) {
        auto ratio = [&](NmseDenominator mode) -> std::optional<double> {
            try {
                return nmse_from_energies(*rec.error_energy, rec.estimate_energy, truth_energy, mode);
            } catch (const MetricUndefined&) {
                return std::nullopt;
            }
        };
        std::printf("%zu,%.6f,%.6f,%s", rec.layer, rec.sigma_hat, rec.divergence,
                    db_or_dash(ratio(c.nmse_denominator)).c_str());
        if (o.verbose)
            std::printf(",%s,%s", db_or_dash(ratio(NmseDenominator::estimate)).c_str(),
                        db_or_dash(ratio(NmseDenominator::truth)).c_str());
        std::printf("\n");
    }
    return 0;
}

int cmd_se(const Options& o) {
    using namespace beamamp;
    const auto& c = o.config;
    c.validate();
    if (c.deltas.size() != 1 || c.snr_db.size() != 1 || c.denoisers.size() != 1)
        throw ConfigError("se takes a single --delta, --snr-db and --denoiser");
    const std::size_t mn = c.m * c.n;
    const ChannelVector h = vectorize(sample_channel(c.seed, 0, c.num_paths, c.m, c.n));
    std::shared_ptr<const DnCnnWeights> weights;
    if (c.denoisers[0] == "dncnn") weights = std::make_shared<const DnCnnWeights>(load_weights(*c.weights));
    const auto den = make_denoiser(c.denoisers[0], c, weights, h);

    const double delta_eff = static_cast<double>(rf_chains(c.deltas[0], mn)) / static_cast<double>(mn);
    const double sigma_n = snr_to_sigma(c.snr_db[0]);
    Rng rng(trial_seeds(c.seed, 0).se);
    const auto se = se_run(h, *den, c.layers, delta_eff, sigma_n * sigma_n / delta_eff, c.se_trials, rng);

    std::cout << "layer,theta,sigma_e_sq,nmse_db\n";
    for (std::size_t l = 0; l < se.theta.size(); ++l) {
        const double sigma_e_sq = l < se.sigma_e_sq.size() ? se.sigma_e_sq[l] : std::nan("");
        std::printf("%zu,%.6f,%.6f,%.6f\n", l, se.theta[l], sigma_e_sq, to_db(se.predicted_nmse(l)));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Beamspace mmWave channel estimation with denoising AMP"};
    app.require_subcommand(1);
    Options o;

    auto* gen = app.add_subcommand("generate", "Write a BCHD channel dataset");
    add_geometry(gen, o);
    gen->add_option("--count", o.count, "Number of channels")->capture_default_str();
    gen->add_option("--out", o.out, "Dataset path")->required();

    auto* est = app.add_subcommand("estimate", "Estimate one channel and print per-layer NMSE");
    add_solver(est, o);
    est->add_flag("--verbose,-v", o.verbose, "Report both NMSE denominators");

    auto* se = app.add_subcommand("se", "State-evolution trajectory for one channel realization");
    add_solver(se, o);

    auto* sweep = app.add_subcommand("sweep", "NMSE sweep over delta, SNR and denoiser");
    add_solver(sweep, o);

    auto* cmp = app.add_subcommand("se-compare", "Paired state-evolution and simulated NMSE");
    add_solver(cmp, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        finalize(o);
        if (gen->parsed()) return cmd_generate(o);
        if (est->parsed()) return cmd_estimate(o);
        if (se->parsed()) return cmd_se(o);
        if (sweep->parsed()) {
            emit(o, beamamp::run_sweep(o.config));
            return 0;
        }
        if (cmp->parsed()) {
            emit(o, beamamp::run_se_compare(o.config));
            return 0;
        }
    } catch (const beamamp::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const beamamp::MetricUndefined& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
