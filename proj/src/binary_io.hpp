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

// Little-endian stream helpers shared by the BCHD, DNCW and DNPF formats.

#include <array>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

#include "beamamp/errors.hpp"

namespace beamamp::detail {

class BinaryWriter {
public:
    explicit BinaryWriter(const std::filesystem::path& path)
        : path_(path.string()), out_(path, std::ios::binary | std::ios::trunc) {
        if (!out_) throw IoError(path_, "cannot open for writing");
    }

    void magic(std::string_view tag) { out_.write(tag.data(), static_cast<std::streamsize>(tag.size())); }

    void u32(std::uint32_t v) {
        std::array<char, 4> b{};
        for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
        out_.write(b.data(), 4);
    }

    void u64(std::uint64_t v) {
        std::array<char, 8> b{};
        for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
        out_.write(b.data(), 8);
    }

    void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }

    void finish() {
        out_.flush();
        if (!out_) throw IoError(path_, "write failed");
    }

private:
    std::string path_;
    std::ofstream out_;
};

class BinaryReader {
public:
    explicit BinaryReader(const std::filesystem::path& path) : path_(path.string()), in_(path, std::ios::binary) {
        if (!in_) throw IoError(path_, "cannot open for reading");
    }

    const std::string& path() const noexcept { return path_; }

    std::string magic() {
        std::string tag(4, '\0');
        read(tag.data(), 4);
        return tag;
    }

    std::uint32_t u32() {
        std::array<unsigned char, 4> b{};
        read(reinterpret_cast<char*>(b.data()), 4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
        return v;
    }

    std::uint64_t u64() {
        std::array<unsigned char, 8> b{};
        read(reinterpret_cast<char*>(b.data()), 8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
        return v;
    }

    float f32() { return std::bit_cast<float>(u32()); }

    bool at_end() { return in_.peek() == std::char_traits<char>::eof(); }

private:
    void read(char* dst, std::streamsize n) {
        in_.read(dst, n);
        if (in_.gcount() != n) throw IoError(path_, "truncated file");
    }

    std::string path_;
    std::ifstream in_;
};

}  // namespace beamamp::detail
