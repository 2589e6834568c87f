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

#include "beamamp/channel_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "beamamp/errors.hpp"
#include "beamamp/kernels.hpp"
#include "binary_io.hpp"

namespace beamamp {

namespace {

constexpr std::uint32_t kDatasetVersion = 1;

void check_freq(double f, const char* what) {
    if (!(f >= -0.5 && f < 0.5))
        throw InvalidArgument(std::string(what) + " must lie in [-1/2, 1/2), got " + std::to_string(f));
}

}  // namespace

ChannelImage::ChannelImage(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

ChannelImage::ChannelImage(std::size_t rows, std::size_t cols, std::vector<double> column_major)
    : rows_(rows), cols_(cols), data_(std::move(column_major)) {
    if (data_.size() != rows_ * cols_)
        throw InvalidArgument("channel image expects " + std::to_string(rows_ * cols_) + " entries, got " +
                              std::to_string(data_.size()));
}

double ChannelImage::frobenius_norm() const { return std::sqrt(kernels::squared_norm(data_)); }

ChannelVector vectorize(const ChannelImage& image) {
    const auto d = image.data();
    return ChannelVector(d.begin(), d.end());
}

ChannelImage devectorize(std::span<const double> vector, std::size_t rows, std::size_t cols) {
    if (vector.size() != rows * cols)
        throw InvalidArgument("cannot devectorize length " + std::to_string(vector.size()) + " into " +
                              std::to_string(rows) + "x" + std::to_string(cols));
    return ChannelImage(rows, cols, std::vector<double>(vector.begin(), vector.end()));
}

double sinc(double t) noexcept {
    if (t == 0.0) return 1.0;
    if (t == std::round(t)) return 0.0;
    const double x = std::numbers::pi * t;
    return std::sin(x) / x;
}

std::vector<PathParameters> sample_paths(Rng& rng, std::size_t num_paths) {
    if (num_paths == 0) throw InvalidArgument("num_paths must be at least 1");
    std::normal_distribution<double> gain(0.0, 1.0);
    std::uniform_real_distribution<double> freq(-0.5, 0.5);
    std::vector<PathParameters> paths(num_paths);
    for (auto& p : paths) {
        p.gain = gain(rng);
        p.azimuth_freq = freq(rng);
        p.elevation_freq = freq(rng);
    }
    return paths;
}

ChannelImage array_response(double azimuth_freq, double elevation_freq, std::size_t m, std::size_t n) {
    check_freq(azimuth_freq, "azimuth_freq");
    check_freq(elevation_freq, "elevation_freq");
    if (m == 0 || n == 0) throw InvalidArgument("array dimensions must be positive");

    const double row_center = (static_cast<double>(m) - 1.0) / 2.0;
    const double col_center = (static_cast<double>(n) - 1.0) / 2.0;
    std::vector<double> row_gain(m), col_gain(n);
    for (std::size_t p = 0; p < m; ++p)
        row_gain[p] = sinc(static_cast<double>(p) - row_center - static_cast<double>(m) * azimuth_freq);
    for (std::size_t q = 0; q < n; ++q)
        col_gain[q] = sinc(static_cast<double>(q) - col_center - static_cast<double>(n) * elevation_freq);

    // Separable: ||A||_F = ||row|| * ||col||.
    const double norm = std::sqrt(kernels::squared_norm(row_gain) * kernels::squared_norm(col_gain));
    ChannelImage a(m, n);
    for (std::size_t q = 0; q < n; ++q)
        for (std::size_t p = 0; p < m; ++p) a(p, q) = row_gain[p] * col_gain[q] / norm;
    return a;
}

ChannelImage synthesize_channel(std::span<const PathParameters> paths, std::size_t m, std::size_t n) {
    if (paths.empty()) throw InvalidArgument("synthesize_channel needs at least one path");
    const double scale = std::sqrt(static_cast<double>(m * n) / static_cast<double>(paths.size()));
    ChannelImage h(m, n);
    for (const auto& p : paths) {
        const ChannelImage a = array_response(p.azimuth_freq, p.elevation_freq, m, n);
        kernels::axpy(scale * p.gain, a.data(), h.data());
    }
    return h;
}

ChannelImage sample_channel(std::uint64_t seed, std::uint64_t index, std::size_t num_paths, std::size_t m,
                            std::size_t n) {
    Rng rng(derive_seed(seed, 0xC4A77E1, index));
    const auto paths = sample_paths(rng, num_paths);
    return synthesize_channel(paths, m, n);
}

ChannelDataset generate_dataset(std::size_t count, std::size_t num_paths, std::size_t m, std::size_t n,
                                std::uint64_t seed) {
    if (count == 0) throw InvalidArgument("dataset count must be at least 1");
    ChannelDataset ds;
    ds.m = static_cast<std::uint32_t>(m);
    ds.n = static_cast<std::uint32_t>(n);
    ds.seed = seed;
    ds.samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        ChannelImage h = sample_channel(seed, i, num_paths, m, n);
        for (double& v : h.data()) v = static_cast<double>(static_cast<float>(v));
        ds.samples.push_back(std::move(h));
    }
    return ds;
}

void write_dataset(const std::filesystem::path& path, const ChannelDataset& dataset) {
    if (dataset.samples.empty()) throw InvalidArgument("refusing to write an empty dataset");
    detail::BinaryWriter w(path);
    w.magic("BCHD");
    w.u32(kDatasetVersion);
    w.u32(dataset.m);
    w.u32(dataset.n);
    w.u32(static_cast<std::uint32_t>(dataset.samples.size()));
    w.u64(dataset.seed);
    for (const auto& s : dataset.samples) {
        if (s.rows() != dataset.m || s.cols() != dataset.n)
            throw InvalidArgument("dataset sample dimensions disagree with the header");
        for (double v : s.data()) w.f32(static_cast<float>(v));
    }
    w.finish();
}

ChannelDataset read_dataset(const std::filesystem::path& path) {
    detail::BinaryReader r(path);
    if (r.magic() != "BCHD") throw FormatError(path.string() + ": not a BCHD dataset");
    if (const auto v = r.u32(); v != kDatasetVersion)
        throw FormatError(path.string() + ": unsupported dataset version " + std::to_string(v));
    ChannelDataset ds;
    ds.m = r.u32();
    ds.n = r.u32();
    const std::uint32_t count = r.u32();
    ds.seed = r.u64();
    if (ds.m == 0 || ds.n == 0 || count == 0) throw FormatError(path.string() + ": empty dataset header");
    ds.samples.reserve(count);
    const std::size_t mn = std::size_t{ds.m} * ds.n;
    for (std::uint32_t i = 0; i < count; ++i) {
        std::vector<double> entries(mn);
        for (double& v : entries) v = r.f32();
        ds.samples.emplace_back(ds.m, ds.n, std::move(entries));
    }
    return ds;
}

}  // namespace beamamp
