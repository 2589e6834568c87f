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
#include <span>
#include <vector>

#include "beamamp/channel_model.hpp"
#include "beamamp/denoiser.hpp"

namespace beamamp {

/// One 3x3 convolution with batch-norm already folded in.
struct ConvLayer {
    std::uint32_t in_channels = 0;
    std::uint32_t out_channels = 0;
    std::vector<float> kernel;  // [out][in][3][3], taps row-major
    std::vector<float> bias;    // [out]

    std::span<const float> taps(std::size_t out, std::size_t in) const {
        return std::span<const float>(kernel).subspan((out * in_channels + in) * 9, 9);
    }
};

/// Residual DnCNN stack: conv+ReLU, (L-2) x conv+ReLU (BN folded), final conv.
/// The input affine (scale, offset) maps channel values into the training domain.
struct DnCnnWeights {
    static constexpr std::uint32_t kHiddenWidth = 64;

    float affine_scale = 1.0f;
    float affine_offset = 0.0f;
    std::vector<ConvLayer> layers;

    std::size_t num_layers() const noexcept { return layers.size(); }

    /// Throws ValidationError naming the first offending layer.
    void validate() const;
};

// DNCW file: "DNCW", u32 version=1, u32 num_layers, f32 affine scale, f32 affine offset,
// then per layer u32 in, u32 out, f32 kernel[out][in][3][3], f32 bias[out]. Little-endian.
DnCnnWeights load_weights(const std::filesystem::path& path);
void save_weights(const DnCnnWeights& weights, const std::filesystem::path& path);

class FeatureMap {
public:
    FeatureMap() = default;
    FeatureMap(std::size_t channels, std::size_t height, std::size_t width)
        : channels_(channels), height_(height), width_(width), data_(channels * height * width, 0.0f) {}

    std::size_t channels() const noexcept { return channels_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t plane_size() const noexcept { return height_ * width_; }

    float& at(std::size_t c, std::size_t y, std::size_t x) noexcept { return data_[(c * height_ + y) * width_ + x]; }
    float at(std::size_t c, std::size_t y, std::size_t x) const noexcept {
        return data_[(c * height_ + y) * width_ + x];
    }

    std::span<float> plane(std::size_t c) noexcept { return std::span<float>(data_).subspan(c * plane_size(), plane_size()); }
    std::span<const float> plane(std::size_t c) const noexcept {
        return std::span<const float>(data_).subspan(c * plane_size(), plane_size());
    }

    std::span<float> data() noexcept { return data_; }
    std::span<const float> data() const noexcept { return data_; }

private:
    std::size_t channels_ = 0;
    std::size_t height_ = 0;
    std::size_t width_ = 0;
    std::vector<float> data_;
};

/// 3x3 cross-correlation, zero padding 1, stride 1, per-output-channel bias.
FeatureMap conv2d_same(const FeatureMap& input, const ConvLayer& layer);

struct DnCnnOutput {
    ChannelImage residual;  // network output, training domain
    ChannelImage denoised;  // channel domain
};

DnCnnOutput dncnn_forward(const ChannelImage& noisy, const DnCnnWeights& weights);

/// Blind denoiser slot backed by a DnCNN; the noise-level argument is ignored.
class DnCnnDenoiser final : public Denoiser {
public:
    DnCnnDenoiser(std::shared_ptr<const DnCnnWeights> weights, std::size_t rows, std::size_t cols);
    std::vector<double> denoise(std::span<const double> x, double sigma_hat) const override;
    std::string name() const override { return "dncnn"; }

private:
    std::shared_ptr<const DnCnnWeights> weights_;
    std::size_t rows_;
    std::size_t cols_;
};

/// Forward-pass reference exported next to a weight file.
struct ParityFixture {
    ChannelImage input;     // channel domain
    ChannelImage residual;  // expected network output, training domain
};

// DNPF file: "DNPF", u32 version=1, u32 m, u32 n, f32 input[m*n], f32 residual[m*n], column-major.
ParityFixture read_parity_fixture(const std::filesystem::path& path);

}  // namespace beamamp
