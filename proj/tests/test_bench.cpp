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
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "beamamp/bench.hpp"
#include "beamamp/errors.hpp"
#include "doctest.h"

using namespace beamamp;

namespace {

const std::filesystem::path kData = BEAMAMP_TEST_DATA;

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.m = 16;
    c.n = 16;
    c.deltas = {0.3, 0.2};
    c.snr_db = {20.0, 10.0};
    c.denoisers = {"soft", "wiener"};
    c.layers = 4;
    c.trials = 3;
    c.seed = 11;
    return c;
}

}  // namespace

TEST_CASE("nmse") {
    const std::vector<double> h{1.0, -2.0, 0.5};
    const std::vector<double> twice{2.0, -4.0, 1.0};
    CHECK(nmse(h, h, NmseDenominator::estimate) == 0.0);
    CHECK(to_db(nmse(h, h, NmseDenominator::truth)) == -std::numeric_limits<double>::infinity());
    CHECK(nmse(twice, h, NmseDenominator::estimate) == doctest::Approx(0.25));
    CHECK(to_db(0.25) == doctest::Approx(-6.0206).epsilon(1e-4));
    CHECK(nmse(twice, h, NmseDenominator::truth) == doctest::Approx(1.0));
    CHECK(to_db(1.0) == 0.0);
    CHECK_THROWS_AS(nmse(std::vector<double>(3, 0.0), h, NmseDenominator::estimate), MetricUndefined);
    CHECK(nmse(std::vector<double>(3, 0.0), h, NmseDenominator::truth) == 1.0);
    CHECK_THROWS_AS(nmse(h, std::vector<double>(2), NmseDenominator::truth), InvalidArgument);
    CHECK(parse_nmse_denominator("truth") == NmseDenominator::truth);
    CHECK_THROWS_AS(parse_nmse_denominator("both"), ConfigError);
}

TEST_CASE("summarize") {
    const std::vector<double> r{0.1, 0.2, 0.3};
    const auto s = summarize(r);
    CHECK(s.count == 3);
    CHECK(s.mean == doctest::Approx(0.2));
    CHECK(s.stderr_ratio == doctest::Approx(0.1 / std::sqrt(3.0)));
    CHECK(s.mean_db() == doctest::Approx(10.0 * std::log10(0.2)));
    CHECK(s.stderr_db() == doctest::Approx(10.0 / std::log(10.0) * (0.1 / std::sqrt(3.0)) / 0.2));
    CHECK(std::isnan(summarize({}).mean_db()));
    CHECK(summarize(std::vector<double>{0.5}).stderr_db() == 0.0);
}

TEST_CASE("configuration errors surface before any trial") {
    auto c = small_config();
    c.trials = 0;
    CHECK_THROWS_AS(run_sweep(c), ConfigError);
    c = small_config();
    c.deltas = {0.1, 1.5};
    CHECK_THROWS_AS(run_sweep(c), ConfigError);
    c = small_config();
    c.denoisers = {"bm3d"};
    CHECK_THROWS_AS(run_sweep(c), ConfigError);
    c = small_config();
    c.denoisers = {"dncnn"};
    CHECK_THROWS_AS(run_sweep(c), ConfigError);
    c.weights = "/nonexistent/weights.dncw";
    CHECK_THROWS_AS(run_se_compare(c), ConfigError);
    c.weights = kData / "dncnn_small.dnpf";  // exists but is not a weight file
    CHECK_THROWS_AS(run_sweep(c), ConfigError);
}

TEST_CASE("run_sweep") {
    const auto c = small_config();
    const auto res = run_sweep(c);
    CHECK(res.rows.size() == 2 * 2 * 2 * (4 + 1));

    SUBCASE("rows are sorted and keyed") {
        for (std::size_t i = 1; i < res.rows.size(); ++i) {
            const auto& a = res.rows[i - 1];
            const auto& b = res.rows[i];
            CHECK(std::tie(a.delta, a.snr_db, a.denoiser, a.layer) < std::tie(b.delta, b.snr_db, b.denoiser, b.layer));
        }
    }
    SUBCASE("estimate denominator excludes the zero initialization") {
        for (const auto& r : res.rows) {
            if (r.layer == 0) {
                CHECK(r.trials == 0);
                CHECK(std::isnan(r.nmse_db_mean));
            } else {
                CHECK(std::isfinite(r.nmse_db_mean));
            }
        }
        CHECK(res.excluded >= 2 * 2 * 2 * 3);
    }
    SUBCASE("truth denominator reports 0 dB at initialization") {
        auto t = c;
        t.nmse_denominator = NmseDenominator::truth;
        for (const auto& r : run_sweep(t).rows) {
            if (r.layer == 0) CHECK(r.nmse_db_mean == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
            CHECK(r.trials == 3);
        }
    }
    SUBCASE("CSV is deterministic and formatted") {
        const auto text = format_csv(res);
        CHECK(text == format_csv(run_sweep(c)));
        std::istringstream in(text);
        std::string line;
        std::getline(in, line);
        CHECK(line == kCsvHeader);
        std::getline(in, line);
        CHECK(line.rfind("0.200000,10.000000,soft,0,", 0) == 0);
        CHECK(text.find('\r') == std::string::npos);
        const auto path = std::filesystem::temp_directory_path() / "beamamp_sweep.csv";
        write_csv(path, res);
        std::ifstream f(path, std::ios::binary);
        const std::string disk((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
        CHECK(disk == text);
    }
}

TEST_CASE("run_se_compare") {
    SUBCASE("oracle denoiser with full sampling is exact from layer 1") {
        ExperimentConfig c;
        c.m = 8;
        c.n = 8;
        c.deltas = {1.0};
        c.snr_db = {std::numeric_limits<double>::infinity()};
        c.denoisers = {"oracle"};
        c.layers = 3;
        c.trials = 2;
        c.se_trials = 2;
        const auto res = run_se_compare(c);
        CHECK(res.rows.size() == 2 * 4);
        for (const auto& r : res.rows) {
            if (r.layer == 0)
                CHECK(r.nmse_db_mean == doctest::Approx(0.0).scale(1.0));
            else
                CHECK(r.nmse_db_mean == -std::numeric_limits<double>::infinity());
        }
    }
    SUBCASE("paired rows per layer") {
        auto c = small_config();
        c.denoisers = {"soft"};
        c.se_trials = 3;
        const auto res = run_se_compare(c);
        CHECK(res.rows.size() == 2 * 2 * 2 * 5);
        std::size_t se = 0, sim = 0;
        for (const auto& r : res.rows) {
            se += r.denoiser == "soft:se";
            sim += r.denoiser == "soft:sim";
        }
        CHECK(se == sim);
    }
}

TEST_CASE("dncnn denoiser runs inside a sweep") {
    ExperimentConfig c;
    c.m = 8;
    c.n = 6;
    c.deltas = {0.5};
    c.snr_db = {10.0};
    c.denoisers = {"dncnn", "soft"};
    c.weights = kData / "dncnn_small.dncw";
    c.layers = 2;
    c.trials = 2;
    c.nmse_denominator = NmseDenominator::truth;
    const auto res = run_sweep(c);
    CHECK(res.rows.size() == 2 * 3);
    for (const auto& r : res.rows) CHECK(std::isfinite(r.nmse_db_mean));
}

TEST_CASE("trial seeds differ across streams and trials") {
    const auto a = trial_seeds(1, 0), b = trial_seeds(1, 1), c = trial_seeds(2, 0);
    CHECK(a.selection != a.noise);
    CHECK(a.probe != a.se);
    CHECK(a.selection != b.selection);
    CHECK(a.selection != c.selection);
}
