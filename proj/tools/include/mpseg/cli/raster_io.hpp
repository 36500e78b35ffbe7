// Copyright 2026 The mpseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "mpseg/image.hpp"
#include "mpseg/metrics.hpp"

namespace mpseg::cli {

/// Raised for unreadable, malformed or unsupported raster files.
class RasterError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads PNG (gray, gray+alpha, RGB, RGBA, palette; 8 or 16 bit), binary
/// PGM/PPM (maxval up to 65535) or PFM. Alpha is dropped, palettes are
/// expanded to RGB. Sample values are kept in their native range.
[[nodiscard]] ImageGrid read_image(const std::filesystem::path& path);

/// Writes a 1- or 3-channel image. `.pfm` stores raw floats; `.png`, `.pgm`
/// and `.ppm` store 8-bit samples after a linear min/max stretch to [0, 255].
void write_image(const std::filesystem::path& path, const ImageGrid& image);

/// Reads a label map. Distinct sample values (palette index, gray level or
/// packed RGB) are mapped in ascending order to labels 1..k.
[[nodiscard]] SegMask read_mask(const std::filesystem::path& path);

/// Fixed label palette: entry 0 is black and unused, entries 1..16 are
/// distinct colours, higher entries repeat 1..16.
[[nodiscard]] std::array<std::uint8_t, 3> palette_color(int label);

/// 8-bit indexed PNG, palette index = label. Labels must lie in 1..255.
void write_label_map(const std::filesystem::path& path, const SegMask& mask);

/// RGB PNG of the stretched luminance with region boundary pixels in red.
void write_boundary_overlay(const std::filesystem::path& path, const ImageGrid& image, const SegMask& mask);

}  // namespace mpseg::cli
