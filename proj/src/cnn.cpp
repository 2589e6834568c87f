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

#include "beamamp/cnn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "beamamp/errors.hpp"
#include "beamamp/kernels.hpp"
#include "binary_io.hpp"

namespace beamamp {

namespace {

constexpr std::uint32_t kWeightsVersion = 1;
constexpr std::uint32_t kFixtureVersion = 1;
constexpr std::uint32_t kMaxChannels = 4096;

std::string layer_tag(std::size_t i) { return "layer " + std::to_string(i); }

}  // namespace

void DnCnnWeights::validate() const {
    if (layers.size() < 2) throw ValidationError("DnCNN needs at least 2 layers, got " + std::to_string(layers.size()));
    if (!std::isfinite(affine_scale) || affine_scale == 0.0f || !std::isfinite(affine_offset))
        throw ValidationError("input affine must be finite with nonzero scale");
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const auto& l = layers[i];
        const bool first = i == 0;
        const bool last = i + 1 == layers.size();
        const std::uint32_t want_in = first ? 1 : kHiddenWidth;
        const std::uint32_t want_out = last ? 1 : kHiddenWidth;
        if (l.in_channels != want_in)
            throw ValidationError(layer_tag(i) + ": in_channels " + std::to_string(l.in_channels) + ", expected " +
                                  std::to_string(want_in));
        if (l.out_channels != want_out)
            throw ValidationError(layer_tag(i) + ": out_channels " + std::to_string(l.out_channels) + ", expected " +
                                  std::to_string(want_out));
        if (l.kernel.size() != std::size_t{l.in_channels} * l.out_channels * 9)
            throw ValidationError(layer_tag(i) + ": kernel has " + std::to_string(l.kernel.size()) + " taps");
        if (l.bias.size() != l.out_channels)
            throw ValidationError(layer_tag(i) + ": bias has " + std::to_string(l.bias.size()) + " entries");
    }
}

DnCnnWeights load_weights(const std::filesystem::path& path) {
    detail::BinaryReader r(path);
    if (const auto tag = r.magic(); tag != "DNCW") throw FormatError(path.string() + ": bad magic '" + tag + "'");
    if (const auto v = r.u32(); v != kWeightsVersion)
        throw FormatError(path.string() + ": unsupported weight version " + std::to_string(v));
    const std::uint32_t num_layers = r.u32();
    DnCnnWeights w;
    w.affine_scale = r.f32();
    w.affine_offset = r.f32();
    w.layers.resize(num_layers);
    for (std::uint32_t i = 0; i < num_layers; ++i) {
        auto& l = w.layers[i];
        l.in_channels = r.u32();
        l.out_channels = r.u32();
        if (l.in_channels == 0 || l.out_channels == 0 || l.in_channels > kMaxChannels || l.out_channels > kMaxChannels)
            throw ValidationError(layer_tag(i) + ": implausible channel counts " + std::to_string(l.in_channels) +
                                  "x" + std::to_string(l.out_channels));
        l.kernel.resize(std::size_t{l.in_channels} * l.out_channels * 9);
        for (float& v : l.kernel) v = r.f32();
        l.bias.resize(l.out_channels);
        for (float& v : l.bias) v = r.f32();
        const auto finite = [](float v) { return std::isfinite(v); };
        if (!std::all_of(l.kernel.begin(), l.kernel.end(), finite) || !std::all_of(l.bias.begin(), l.bias.end(), finite))
            throw ValidationError(layer_tag(i) + ": non-finite parameters");
    }
    if (!r.at_end()) throw FormatError(path.string() + ": trailing bytes after last layer");
    w.validate();
    return w;
}

void save_weights(const DnCnnWeights& weights, const std::filesystem::path& path) {
    weights.validate();
    detail::BinaryWriter out(path);
    out.magic("DNCW");
    out.u32(kWeightsVersion);
    out.u32(static_cast<std::uint32_t>(weights.layers.size()));
    out.f32(weights.affine_scale);
    out.f32(weights.affine_offset);
    for (const auto& l : weights.layers) {
        out.u32(l.in_channels);
        out.u32(l.out_channels);
        for (float v : l.kernel) out.f32(v);
        for (float v : l.bias) out.f32(v);
    }
    out.finish();
}

FeatureMap conv2d_same(const FeatureMap& input, const ConvLayer& layer) {
    if (input.channels() != layer.in_channels)
        throw InvalidArgument("conv2d_same: input has " + std::to_string(input.channels()) +
                              " channels, kernel expects " + std::to_string(layer.in_channels));
    if (layer.kernel.size() != std::size_t{layer.in_channels} * layer.out_channels * 9 ||
        layer.bias.size() != layer.out_channels)
        throw InvalidArgument("conv2d_same: malformed kernel or bias");

    const auto& k = kernels::active();
    FeatureMap out(layer.out_channels, input.height(), input.width());
    for (std::size_t o = 0; o < layer.out_channels; ++o) {
        auto dst = out.plane(o);
        std::fill(dst.begin(), dst.end(), layer.bias[o]);
        for (std::size_t i = 0; i < layer.in_channels; ++i)
            k.conv3x3_accumulate(input.plane(i).data(), input.height(), input.width(), layer.taps(o, i).data(),
                                 dst.data());
    }
    return out;
}

DnCnnOutput dncnn_forward(const ChannelImage& noisy, const DnCnnWeights& weights) {
    weights.validate();
    const std::size_t rows = noisy.rows();
    const std::size_t cols = noisy.cols();
    if (rows == 0 || cols == 0) throw InvalidArgument("dncnn_forward: empty image");

    const float a = weights.affine_scale;
    const float b = weights.affine_offset;
    FeatureMap x(1, rows, cols);
    for (std::size_t p = 0; p < rows; ++p)
        for (std::size_t q = 0; q < cols; ++q) x.at(0, p, q) = a * static_cast<float>(noisy(p, q)) + b;

    const auto& k = kernels::active();
    FeatureMap act = x;
    for (std::size_t i = 0; i < weights.layers.size(); ++i) {
        act = conv2d_same(act, weights.layers[i]);
        if (i + 1 < weights.layers.size()) k.relu(act.data().data(), act.data().size());
    }

    DnCnnOutput out{ChannelImage(rows, cols), ChannelImage(rows, cols)};
    for (std::size_t p = 0; p < rows; ++p) {
        for (std::size_t q = 0; q < cols; ++q) {
            const float residual = act.at(0, p, q);
            out.residual(p, q) = residual;
            out.denoised(p, q) = static_cast<double>((x.at(0, p, q) - residual - b) / a);
        }
    }
    return out;
}

DnCnnDenoiser::DnCnnDenoiser(std::shared_ptr<const DnCnnWeights> weights, std::size_t rows, std::size_t cols)
    : weights_(std::move(weights)), rows_(rows), cols_(cols) {
    if (!weights_) throw InvalidArgument("DnCNN denoiser needs weights");
    weights_->validate();
    if (rows_ == 0 || cols_ == 0) throw InvalidArgument("DnCNN denoiser needs a positive image size");
}

std::vector<double> DnCnnDenoiser::denoise(std::span<const double> x, double) const {
    if (x.size() != rows_ * cols_)
        throw InvalidArgument("DnCNN denoiser expects " + std::to_string(rows_ * cols_) + " entries, got " +
                              std::to_string(x.size()));
    const ChannelImage image = devectorize(x, rows_, cols_);
    return vectorize(dncnn_forward(image, *weights_).denoised);
}

ParityFixture read_parity_fixture(const std::filesystem::path& path) {
    detail::BinaryReader r(path);
    if (const auto tag = r.magic(); tag != "DNPF") throw FormatError(path.string() + ": bad magic '" + tag + "'");
    if (const auto v = r.u32(); v != kFixtureVersion)
        throw FormatError(path.string() + ": unsupported fixture version " + std::to_string(v));
    const std::uint32_t m = r.u32();
    const std::uint32_t n = r.u32();
    if (m == 0 || n == 0) throw FormatError(path.string() + ": empty fixture");
    auto read_image = [&] {
        std::vector<double> v(std::size_t{m} * n);
        for (double& e : v) e = r.f32();
        return ChannelImage(m, n, std::move(v));
    };
    ParityFixture f;
    f.input = read_image();
    f.residual = read_image();
    return f;
}

}  // namespace beamamp
