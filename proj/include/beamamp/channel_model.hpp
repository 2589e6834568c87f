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
#include <span>
#include <vector>

#include "beamamp/random.hpp"

namespace beamamp {

/// One propagation path: gain and the spatial frequencies encoding its
/// azimuth/elevation angle of arrival, each in [-1/2, 1/2).
struct PathParameters {
    double gain = 0.0;
    double azimuth_freq = 0.0;
    double elevation_freq = 0.0;
};

/// Real M x N beamspace channel, stored column-major so that `data()` is the
/// vectorized channel h (column q occupies entries q*M .. q*M+M-1).
class ChannelImage {
public:
    ChannelImage() = default;
    ChannelImage(std::size_t rows, std::size_t cols);
    ChannelImage(std::size_t rows, std::size_t cols, std::vector<double> column_major);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[c * rows_ + r]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[c * rows_ + r]; }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    double frobenius_norm() const;

    bool operator==(const ChannelImage&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

using ChannelVector = std::vector<double>;

/// Column-major stacking.
ChannelVector vectorize(const ChannelImage& image);
ChannelImage devectorize(std::span<const double> vector, std::size_t rows, std::size_t cols);

/// Gains i.i.d. N(0,1), spatial frequencies i.i.d. U[-1/2, 1/2).
std::vector<PathParameters> sample_paths(Rng& rng, std::size_t num_paths);

/// Separable sinc response of a lens array on a centered grid, unit Frobenius norm.
///
/// Entry (p, q) is proportional to sinc(u_p - m*azimuth_freq) * sinc(v_q - n*elevation_freq)
/// with u_p = p - (m-1)/2 and v_q = q - (n-1)/2.
ChannelImage array_response(double azimuth_freq, double elevation_freq, std::size_t m, std::size_t n);

/// H = sqrt(mn/(P+1)) * sum_i gain_i * A(azimuth_i, elevation_i).
ChannelImage synthesize_channel(std::span<const PathParameters> paths, std::size_t m, std::size_t n);

/// sin(pi t)/(pi t), exactly 0 at nonzero integers and 1 at 0.
double sinc(double t) noexcept;

struct ChannelDataset {
    std::uint32_t m = 0;
    std::uint32_t n = 0;
    std::uint64_t seed = 0;
    std::vector<ChannelImage> samples;
};

/// Draws `count` independent channels; sample i is seeded from (seed, i).
/// Entries are rounded to float32 so the in-memory dataset equals its file image.
ChannelDataset generate_dataset(std::size_t count, std::size_t num_paths, std::size_t m, std::size_t n,
                                std::uint64_t seed);

/// Draws the single channel realization used by trial `index` of an experiment.
ChannelImage sample_channel(std::uint64_t seed, std::uint64_t index, std::size_t num_paths, std::size_t m,
                            std::size_t n);

// BCHD dataset file: "BCHD", u32 version=1, u32 m, u32 n, u32 count, u64 seed,
// then count blocks of m*n float32 in column-major order; little-endian throughout.
void write_dataset(const std::filesystem::path& path, const ChannelDataset& dataset);
ChannelDataset read_dataset(const std::filesystem::path& path);

}  // namespace beamamp
