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

#include <cmath>
#include <vector>

#include "beamamp/bench.hpp"
#include "beamamp/errors.hpp"
#include "beamamp/state_evolution.hpp"
#include "doctest.h"

using namespace beamamp;

namespace {

class Identity final : public Denoiser {
public:
    std::vector<double> denoise(std::span<const double> x, double) const override { return {x.begin(), x.end()}; }
    std::string name() const override { return "identity"; }
};

// Gaussian realization rescaled to exactly unit per-entry energy.
std::vector<double> unit_energy_channel(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    std::vector<double> h(n);
    fill_standard_normal(rng, h);
    double e = 0.0;
    for (double v : h) e += v * v;
    const double s = std::sqrt(static_cast<double>(n) / e);
    for (double& v : h) v *= s;
    return h;
}

}  // namespace

TEST_CASE("se_step") {
    const auto h = unit_energy_channel(1, 4096);
    Rng rng(2);
    SUBCASE("zero MSE leaves only the noise") {
        const auto s = se_step(h, Identity{}, 0.0, 0.3, 0.05, 1, rng);
        CHECK(s.sigma_e_sq == 0.05);
    }
    SUBCASE("identity denoiser returns the effective noise variance") {
        const auto s = se_step(h, Identity{}, 0.2, 0.1, 0.1, 25, rng);
        CHECK(s.sigma_e_sq == doctest::Approx(2.1));
        CHECK(std::abs(s.theta_next / s.sigma_e_sq - 1.0) < 0.03);
    }
    SUBCASE("Wiener with known prior follows the scalar recursion") {
        // sigma_e^2 = 1/0.1 + 0.1 = 10.1, theta' = v sigma_e^2 / (v + sigma_e^2)
        const auto s = se_step(h, WienerDenoiser(1.0), 1.0, 0.1, 0.1, 50, rng);
        CHECK(s.sigma_e_sq == doctest::Approx(10.1).epsilon(1e-14));
        const double oracle = 1.0 * 10.1 / (1.0 + 10.1);
        CHECK(oracle == doctest::Approx(0.9099).epsilon(1e-4));
        CHECK(s.theta_next == doctest::Approx(oracle).epsilon(0.01));
    }
    SUBCASE("noise map is strictly increasing in theta") {
        double prev = -1.0;
        for (double theta : {0.0, 0.01, 0.1, 1.0, 5.0}) {
            const auto s = se_step(h, Identity{}, theta, 0.2, 0.05, 1, rng);
            CHECK(s.sigma_e_sq > prev);
            prev = s.sigma_e_sq;
        }
    }
    SUBCASE("argument checks") {
        CHECK_THROWS_AS(se_step(h, Identity{}, 0.1, 0.0, 0.1, 1, rng), InvalidArgument);
        CHECK_THROWS_AS(se_step(h, Identity{}, 0.1, 1.2, 0.1, 1, rng), InvalidArgument);
        CHECK_THROWS_AS(se_step(h, Identity{}, -0.1, 0.5, 0.1, 1, rng), InvalidArgument);
        CHECK_THROWS_AS(se_step(h, Identity{}, 0.1, 0.5, 0.1, 0, rng), InvalidArgument);
    }
}

TEST_CASE("se_run") {
    const auto h = unit_energy_channel(3, 4096);
    Rng rng(4);
    SUBCASE("shape, initialization and the noise identity") {
        const auto tr = se_run(h, SoftThresholdDenoiser{}, 10, 0.1, 0.2, 5, rng);
        CHECK(tr.theta.size() == 11);
        CHECK(tr.sigma_e_sq.size() == 10);
        CHECK(tr.theta[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(tr.predicted_nmse(0) == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t l = 0; l < tr.sigma_e_sq.size(); ++l) CHECK(tr.sigma_e_sq[l] == tr.theta[l] / 0.1 + 0.2);
    }
    SUBCASE("full sampling without noise drives Wiener MSE to zero") {
        // Oracle: theta' = v theta / (v + theta) with v = 1, theta_0 = 1 gives 1/(l+1).
        const auto tr = se_run(h, WienerDenoiser{}, 10, 1.0, 0.0, 50, rng);
        for (std::size_t l = 1; l < tr.theta.size(); ++l) {
            CAPTURE(l);
            CHECK(tr.theta[l] < tr.theta[l - 1]);
            CHECK(tr.theta[l] == doctest::Approx(1.0 / static_cast<double>(l + 1)).epsilon(0.05));
        }
    }
    SUBCASE("oracle denoiser predicts zero error") {
        const auto tr = se_run(h, OracleDenoiser(h), 3, 1.0, 0.0, 2, rng);
        for (std::size_t l = 1; l < tr.theta.size(); ++l) CHECK(tr.theta[l] == 0.0);
    }
    SUBCASE("zero layers rejected") { CHECK_THROWS_AS(se_run(h, Identity{}, 0, 0.5, 0.1, 1, rng), InvalidArgument); }
}

TEST_CASE("state evolution tracks the solver on a small ensemble") {
    ExperimentConfig c;
    c.deltas = {0.2};
    c.snr_db = {10.0};
    c.trials = 20;
    c.layers = 6;
    c.se_trials = 20;
    const auto res = run_se_compare(c);
    for (const auto& se : res.rows) {
        if (se.denoiser != "soft:se") continue;
        for (const auto& sim : res.rows) {
            if (sim.denoiser == "soft:sim" && sim.layer == se.layer) {
                CAPTURE(se.layer);
                CHECK(std::abs(se.nmse_db_mean - sim.nmse_db_mean) < 1.0);
            }
        }
    }
}
