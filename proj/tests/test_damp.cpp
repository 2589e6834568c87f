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

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "beamamp/channel_model.hpp"
#include "beamamp/damp.hpp"
#include "beamamp/errors.hpp"
#include "doctest.h"

using namespace beamamp;

namespace {

class ScaledIdentity final : public Denoiser {
public:
    explicit ScaledIdentity(double c) : c_(c) {}
    std::vector<double> denoise(std::span<const double> x, double) const override {
        std::vector<double> out(x.begin(), x.end());
        for (double& v : out) v *= c_;
        return out;
    }
    std::string name() const override { return "scaled"; }

private:
    double c_;
};

class ZeroDenoiser final : public Denoiser {
public:
    std::vector<double> denoise(std::span<const double> x, double) const override {
        return std::vector<double>(x.size(), 0.0);
    }
    std::string name() const override { return "zero"; }
};

// Finite at x, NaN anywhere else: poisons the divergence probe.
class Brittle final : public Denoiser {
public:
    std::vector<double> denoise(std::span<const double> x, double) const override {
        std::vector<double> out(x.begin(), x.end());
        if (calls_++ % 2 == 1) out[0] = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    std::string name() const override { return "brittle"; }

private:
    mutable int calls_ = 0;
};

struct Problem {
    ChannelVector h;
    MeasurementOperator op;
    std::vector<double> r;
};

Problem make_problem(std::uint64_t seed, double delta, double snr_db, std::size_t m = 64, std::size_t n = 64) {
    ChannelVector h = vectorize(sample_channel(seed, 0, 4, m, n));
    Rng rng(seed + 1000);
    auto op = sample_selection_network(rf_chains(delta, m * n), m, n, rng);
    auto r = measure(op, h, snr_to_sigma(snr_db), rng);
    return {std::move(h), std::move(op), std::move(r)};
}

}  // namespace

TEST_CASE("init") {
    const auto zero = init(std::vector<double>(7, 0.0), 16);
    CHECK(zero.sigma_hat == 0.0);
    CHECK(zero.layer_index == 0);
    const auto ones = init(std::vector<double>(9, 1.0), 16);
    CHECK(ones.sigma_hat == 1.0);
    CHECK(ones.h_hat == std::vector<double>(16, 0.0));
    CHECK(ones.z == std::vector<double>(9, 1.0));
    CHECK_THROWS_AS(init(std::vector<double>{}, 16), InvalidArgument);
}

TEST_CASE("layer_step special denoisers") {
    const auto p = make_problem(1, 0.25, 30.0, 8, 8);
    Rng rng(5);
    SUBCASE("oracle on noiseless data fits exactly") {
        const auto r = p.op.apply(p.h);
        const OracleDenoiser oracle(p.h);
        const auto s1 = layer_step(init(r, 64), p.op, r, oracle, rng);
        CHECK(s1.h_hat == p.h);
        for (double v : s1.z) CHECK(std::abs(v) < 1e-12);
        CHECK(s1.layer_index == 1);
    }
    SUBCASE("zero denoiser keeps the residual") {
        const ZeroDenoiser zero;
        const auto s1 = layer_step(init(p.r, 64), p.op, p.r, zero, rng);
        CHECK(s1.h_hat == std::vector<double>(64, 0.0));
        CHECK(s1.z == p.r);
    }
    SUBCASE("non-finite divergence reports the layer") {
        const Brittle brittle;
        try {
            (void)layer_step(init(p.r, 64), p.op, p.r, brittle, rng);
            FAIL("expected NumericError");
        } catch (const NumericError& e) {
            CHECK(e.layer() == 0);
        }
    }
}

TEST_CASE("layer_step with a linear denoiser matches the hand expansion") {
    // K = 4, MN = 16: z' = r - c W (h + W^T z) + (c ||b||^2 / K) z
    Rng rng(31);
    const auto op = sample_selection_network(4, 4, 4, rng);
    std::vector<double> r(4), h(16), z(4);
    fill_standard_normal(rng, r);
    fill_standard_normal(rng, h);
    fill_standard_normal(rng, z);
    const double c = 0.7;

    SolverState s;
    s.h_hat = h;
    s.z = z;
    s.layer_index = 2;

    std::uint64_t probe_seed = 0;
    const ScaledIdentity lin(c);
    const auto next = layer_step(s, op, r, lin, rng, {}, [&](const LayerView& v) { probe_seed = v.divergence->probe_seed; });

    Rng probe(probe_seed);
    std::vector<double> b(16);
    fill_standard_normal(probe, b);
    double bb = 0.0;
    for (double v : b) bb += v * v;

    std::vector<double> x(16);
    for (std::size_t j = 0; j < 16; ++j) {
        x[j] = h[j];
        for (std::size_t i = 0; i < 4; ++i) x[j] += op.entry(i, j) * z[i];
    }
    for (std::size_t i = 0; i < 4; ++i) {
        double wx = 0.0;
        for (std::size_t j = 0; j < 16; ++j) wx += op.entry(i, j) * x[j];
        const double expected = r[i] - c * wx + c * bb / 4.0 * z[i];
        CHECK(next.z[i] == doctest::Approx(expected).epsilon(1e-9));
    }
    for (std::size_t j = 0; j < 16; ++j) CHECK(next.h_hat[j] == doctest::Approx(c * x[j]).epsilon(1e-12));
    CHECK(next.layer_index == 3);
    double zz = 0.0;
    for (double v : next.z) zz += v * v;
    CHECK(next.sigma_hat == doctest::Approx(std::sqrt(zz / 4.0)));
}

TEST_CASE("run") {
    const auto p = make_problem(3, 0.1, 10.0);
    const SoftThresholdDenoiser soft;

    SUBCASE("default depth and trajectory shape") {
        Rng rng(1);
        const auto res = run(p.r, p.op, soft, rng, {}, std::span<const double>(p.h));
        CHECK(SolverOptions{}.layers == 10);
        CHECK(res.trajectory.layers.size() == 11);
        CHECK(res.trajectory.layers.front().divergence == 0.0);
        CHECK(res.estimate.size() == 4096);
        for (std::size_t l = 0; l < res.trajectory.layers.size(); ++l) CHECK(res.trajectory.layers[l].layer == l);
    }
    SUBCASE("oracle denoiser is exact from layer 1") {
        Rng rng(2);
        const OracleDenoiser oracle(p.h);
        const auto res = run(p.r, p.op, oracle, rng, {}, std::span<const double>(p.h));
        CHECK(*res.trajectory.layers[0].error_energy > 0.0);
        for (std::size_t l = 1; l < res.trajectory.layers.size(); ++l) CHECK(*res.trajectory.layers[l].error_energy == 0.0);
    }
    SUBCASE("bit-identical with fixed seeds") {
        Rng a(9), b(9);
        const auto r1 = run(p.r, p.op, soft, a, {}, std::span<const double>(p.h));
        const auto r2 = run(p.r, p.op, soft, b, {}, std::span<const double>(p.h));
        CHECK(r1.estimate == r2.estimate);
        for (std::size_t l = 0; l < r1.trajectory.layers.size(); ++l) {
            CHECK(r1.trajectory.layers[l].sigma_hat == r2.trajectory.layers[l].sigma_hat);
            CHECK(r1.trajectory.layers[l].divergence == r2.trajectory.layers[l].divergence);
        }
    }
    SUBCASE("first layer denoises the back-projection of r") {
        Rng rng(4);
        const auto a = unit_column_operator(p.op);
        std::vector<double> ra = p.r;
        for (double& v : ra) v *= a.scale() / p.op.scale();
        const auto direct = a.apply_adjoint(ra);
        std::vector<double> seen;
        SolverOptions o;
        o.layers = 1;
        (void)run(p.r, p.op, soft, rng, o, std::nullopt, [&](const LayerView& v) {
            if (v.layer == 0) seen.assign(v.x.begin(), v.x.end());
        });
        REQUIRE(seen.size() == direct.size());
        for (std::size_t i = 0; i < seen.size(); ++i) CHECK(seen[i] == doctest::Approx(direct[i]).epsilon(1e-12));
    }
    SUBCASE("errors") {
        Rng rng(5);
        SolverOptions o;
        o.layers = 0;
        CHECK_THROWS_AS(run(p.r, p.op, soft, rng, o), InvalidArgument);
        CHECK_THROWS_AS(run(p.r, p.op, soft, rng, {}, std::span<const double>(p.h).first(10)), InvalidArgument);
    }
}

TEST_CASE("unit-column operator") {
    Rng rng(6);
    const auto op = sample_selection_network(40, 10, 10, rng);
    const auto a = unit_column_operator(op);
    for (std::size_t j = 0; j < 100; j += 7) {
        double col = 0.0;
        for (std::size_t i = 0; i < 40; ++i) col += a.entry(i, j) * a.entry(i, j);
        CHECK(col == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("effective noise level tracks sigma_hat") {
    // Sample std of x - h against the solver's own sigma_hat, averaged over trials.
    constexpr int kTrials = 20;
    std::vector<double> ratio_sum(10, 0.0);
    const SoftThresholdDenoiser soft;
    for (int t = 0; t < kTrials; ++t) {
        const auto p = make_problem(100 + t, 0.1, 10.0);
        Rng rng(t);
        (void)run(p.r, p.op, soft, rng, {}, std::nullopt, [&](const LayerView& v) {
            double sq = 0.0;
            for (std::size_t i = 0; i < v.x.size(); ++i) sq += (v.x[i] - p.h[i]) * (v.x[i] - p.h[i]);
            ratio_sum[v.layer] += std::sqrt(sq / v.x.size()) / v.sigma_hat;
        });
    }
    for (std::size_t l = 0; l < ratio_sum.size(); ++l) {
        CAPTURE(l);
        CHECK(std::abs(ratio_sum[l] / kTrials - 1.0) < 0.15);
    }
}

TEST_CASE("median sigma_hat is non-increasing") {
    constexpr int kTrials = 30;
    std::vector<std::vector<double>> sig(11);
    const SoftThresholdDenoiser soft;
    for (int t = 0; t < kTrials; ++t) {
        const auto p = make_problem(500 + t, 0.1, 10.0);
        Rng rng(t);
        const auto res = run(p.r, p.op, soft, rng);
        for (const auto& rec : res.trajectory.layers) sig[rec.layer].push_back(rec.sigma_hat);
    }
    std::vector<double> med;
    for (auto& s : sig) {
        std::nth_element(s.begin(), s.begin() + s.size() / 2, s.end());
        med.push_back(s[s.size() / 2]);
    }

    for (std::size_t l = 1; l < med.size(); ++l) { CAPTURE(l); CHECK(med[l] <= med[l - 1] * 1.05); }
}
