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

#include "mpseg/cli/raster_io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <vector>

namespace mpseg::cli {
namespace {

namespace fs = std::filesystem;

std::string lower_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext;
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const fs::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw RasterError("cannot open '" + path.string() + "'");
  return f;
}

// Decoded raster before conversion: samples in native range, interleaved.
struct RawRaster {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<std::uint32_t> samples;
};

void png_error_handler(png_structp png, png_const_charp) { std::longjmp(png_jmpbuf(png), 1); }
void png_warning_handler(png_structp, png_const_charp) {}

// Palette images keep their indices when `keep_palette` is set; otherwise
// they are expanded to RGB. Alpha is always dropped.
RawRaster read_png(const fs::path& path, bool keep_palette) {
  FilePtr file = open_file(path, "rb");
  png_byte signature[8];
  if (std::fread(signature, 1, 8, file.get()) != 8 || png_sig_cmp(signature, 0, 8) != 0) {
    throw RasterError("'" + path.string() + "' is not a PNG file");
  }
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_handler, png_warning_handler);
  if (png == nullptr) throw RasterError("libpng initialisation failed");
  png_infop info = png_create_info_struct(png);
  RawRaster raw;
  std::vector<png_byte> buffer;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw RasterError("corrupt PNG data in '" + path.string() + "'");
  }
  png_init_io(png, file.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  const int color = png_get_color_type(png, info);
  const int depth = png_get_bit_depth(png, info);
  if (color == PNG_COLOR_TYPE_PALETTE) {
    if (keep_palette) {
      png_set_packing(png);
    } else {
      png_set_palette_to_rgb(png);
    }
  }
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS) && !(color == PNG_COLOR_TYPE_PALETTE && keep_palette)) {
    png_set_tRNS_to_alpha(png);
  }
  png_set_strip_alpha(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  raw.width = static_cast<int>(png_get_image_width(png, info));
  raw.height = static_cast<int>(png_get_image_height(png, info));
  raw.channels = png_get_channels(png, info);
  const int out_depth = png_get_bit_depth(png, info);
  const std::size_t stride = png_get_rowbytes(png, info);
  buffer.resize(stride * static_cast<std::size_t>(raw.height));
  rows.resize(static_cast<std::size_t>(raw.height));
  for (int y = 0; y < raw.height; ++y) rows[y] = buffer.data() + stride * static_cast<std::size_t>(y);
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  const std::size_t count = static_cast<std::size_t>(raw.width) * raw.height * raw.channels;
  raw.samples.resize(count);
  for (int y = 0; y < raw.height; ++y) {
    const png_byte* row = rows[y];
    const std::size_t per_row = static_cast<std::size_t>(raw.width) * raw.channels;
    for (std::size_t j = 0; j < per_row; ++j) {
      raw.samples[y * per_row + j] = out_depth == 16 ? (static_cast<std::uint32_t>(row[2 * j]) << 8) | row[2 * j + 1]
                                                     : row[j];
    }
  }
  return raw;
}

void write_png(const fs::path& path, int width, int height, int color_type, const std::vector<png_byte>& data,
               const std::vector<png_color>* palette) {
  FilePtr file = open_file(path, "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_handler, png_warning_handler);
  if (png == nullptr) throw RasterError("libpng initialisation failed");
  png_infop info = png_create_info_struct(png);
  const int channels = color_type == PNG_COLOR_TYPE_RGB ? 3 : 1;
  std::vector<png_bytep> rows(static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) {
    rows[y] = const_cast<png_bytep>(data.data()) + static_cast<std::size_t>(y) * width * channels;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw RasterError("failed to write PNG '" + path.string() + "'");
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  if (palette != nullptr) png_set_PLTE(png, info, palette->data(), static_cast<int>(palette->size()));
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

std::string next_token(std::istream& in) {
  std::string token;
  char c;
  while (in.get(c)) {
    if (c == '#') {
      std::string skip;
      std::getline(in, skip);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!token.empty()) return token;
      continue;
    }
    token.push_back(c);
  }
  return token;
}

int parse_header_int(std::istream& in, const fs::path& path, const char* what) {
  const std::string token = next_token(in);
  try {
    std::size_t used = 0;
    const int value = std::stoi(token, &used);
    if (used == token.size() && value > 0) return value;
  } catch (const std::exception&) {
  }
  throw RasterError("bad " + std::string(what) + " in '" + path.string() + "'");
}

RawRaster read_pnm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RasterError("cannot open '" + path.string() + "'");
  const std::string magic = next_token(in);
  RawRaster raw;
  if (magic == "P5") {
    raw.channels = 1;
  } else if (magic == "P6") {
    raw.channels = 3;
  } else {
    throw RasterError("'" + path.string() + "' is not a binary PGM/PPM file");
  }
  raw.width = parse_header_int(in, path, "width");
  raw.height = parse_header_int(in, path, "height");
  const int maxval = parse_header_int(in, path, "maxval");
  if (maxval > 65535) throw RasterError("maxval above 65535 in '" + path.string() + "'");
  const std::size_t count = static_cast<std::size_t>(raw.width) * raw.height * raw.channels;
  const std::size_t bytes = maxval > 255 ? 2 : 1;
  std::vector<unsigned char> data(count * bytes);
  if (!in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size()))) {
    throw RasterError("truncated pixel data in '" + path.string() + "'");
  }
  raw.samples.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    raw.samples[i] = bytes == 2 ? (static_cast<std::uint32_t>(data[2 * i]) << 8) | data[2 * i + 1] : data[i];
  }
  return raw;
}

ImageGrid read_pfm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RasterError("cannot open '" + path.string() + "'");
  std::string magic;
  int width = 0;
  int height = 0;
  double scale = 0.0;
  in >> magic >> width >> height >> scale;
  in.get();
  int channels = 0;
  if (magic == "Pf") {
    channels = 1;
  } else if (magic == "PF") {
    channels = 3;
  } else {
    throw RasterError("'" + path.string() + "' is not a PFM file");
  }
  if (!in || width <= 0 || height <= 0 || scale == 0.0) throw RasterError("bad PFM header in '" + path.string() + "'");
  const bool little = scale < 0.0;
  const std::size_t count = static_cast<std::size_t>(width) * height * channels;
  std::vector<std::uint32_t> bits(count);
  if (!in.read(reinterpret_cast<char*>(bits.data()), static_cast<std::streamsize>(count * 4))) {
    throw RasterError("truncated pixel data in '" + path.string() + "'");
  }
  const bool swap = little != (std::endian::native == std::endian::little);
  std::vector<double> values(count);
  // PFM rows run bottom to top.
  for (int y = 0; y < height; ++y) {
    for (std::size_t j = 0; j < static_cast<std::size_t>(width) * channels; ++j) {
      std::uint32_t b = bits[static_cast<std::size_t>(height - 1 - y) * width * channels + j];
      if (swap) b = __builtin_bswap32(b);
      values[static_cast<std::size_t>(y) * width * channels + j] = static_cast<double>(std::bit_cast<float>(b));
    }
  }
  return ImageGrid(width, height, channels, std::move(values));
}

void write_pfm(const fs::path& path, const ImageGrid& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RasterError("cannot open '" + path.string() + "' for writing");
  const int channels = image.channels();
  out << (channels == 1 ? "Pf" : "PF") << "\n" << image.width() << " " << image.height() << "\n"
      << (std::endian::native == std::endian::little ? "-1.0" : "1.0") << "\n";
  const auto values = image.values();
  const std::size_t per_row = static_cast<std::size_t>(image.width()) * channels;
  std::vector<float> row(per_row);
  for (int y = image.height() - 1; y >= 0; --y) {
    for (std::size_t j = 0; j < per_row; ++j) row[j] = static_cast<float>(values[y * per_row + j]);
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(per_row * sizeof(float)));
  }
  if (!out) throw RasterError("failed to write '" + path.string() + "'");
}

std::vector<png_byte> stretch_to_bytes(std::span<const double> values) {
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  std::vector<png_byte> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double t = range > 0.0 ? (values[i] - lo) / range : 0.0;
    out[i] = static_cast<png_byte>(std::lround(255.0 * std::clamp(t, 0.0, 1.0)));
  }
  return out;
}

ImageGrid to_image(const RawRaster& raw) {
  std::vector<double> values(raw.samples.begin(), raw.samples.end());
  return ImageGrid(raw.width, raw.height, raw.channels, std::move(values));
}

}  // namespace

ImageGrid read_image(const fs::path& path) {
  if (!fs::exists(path)) throw RasterError("input file '" + path.string() + "' does not exist");
  const std::string ext = lower_extension(path);
  if (ext == ".png") return to_image(read_png(path, false));
  if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") return to_image(read_pnm(path));
  if (ext == ".pfm") return read_pfm(path);
  throw RasterError("unsupported image format '" + ext + "' for '" + path.string() + "'");
}

void write_image(const fs::path& path, const ImageGrid& image) {
  if (image.channels() != 1 && image.channels() != 3) throw RasterError("only 1- or 3-channel images can be written");
  const std::string ext = lower_extension(path);
  if (ext == ".pfm") {
    write_pfm(path, image);
    return;
  }
  const std::vector<png_byte> bytes = stretch_to_bytes(image.values());
  if (ext == ".png") {
    write_png(path, image.width(), image.height(), image.channels() == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
              bytes, nullptr);
    return;
  }
  if (ext == ".pgm" || ext == ".ppm") {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RasterError("cannot open '" + path.string() + "' for writing");
    out << (image.channels() == 1 ? "P5" : "P6") << "\n" << image.width() << " " << image.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw RasterError("failed to write '" + path.string() + "'");
    return;
  }
  throw RasterError("unsupported output format '" + ext + "' for '" + path.string() + "'");
}

SegMask read_mask(const fs::path& path) {
  if (!fs::exists(path)) throw RasterError("mask file '" + path.string() + "' does not exist");
  const std::string ext = lower_extension(path);
  RawRaster raw;
  if (ext == ".png") {
    raw = read_png(path, true);
  } else if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") {
    raw = read_pnm(path);
  } else {
    throw RasterError("unsupported mask format '" + ext + "' for '" + path.string() + "'");
  }
  const std::size_t n = static_cast<std::size_t>(raw.width) * raw.height;
  std::vector<std::uint64_t> keys(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t key = 0;
    for (int c = 0; c < raw.channels; ++c) key = (key << 16) | raw.samples[i * raw.channels + c];
    keys[i] = key;
  }
  std::map<std::uint64_t, int> relabel;
  for (std::uint64_t k : keys) relabel.emplace(k, 0);
  int next = 0;
  for (auto& [key, label] : relabel) label = ++next;
  SegMask mask{GridExtent{raw.width, raw.height}, std::vector<int>(n)};
  for (std::size_t i = 0; i < n; ++i) mask.labels[i] = relabel[keys[i]];
  return mask;
}

std::array<std::uint8_t, 3> palette_color(int label) {
  static constexpr std::array<std::array<std::uint8_t, 3>, 16> kColors{{
      {230, 25, 75},   {60, 180, 75},   {0, 130, 200},   {255, 225, 25},
      {245, 130, 48},  {145, 30, 180},  {70, 240, 240},  {240, 50, 230},
      {210, 245, 60},  {250, 190, 212}, {0, 128, 128},   {220, 190, 255},
      {170, 110, 40},  {255, 250, 200}, {128, 0, 0},     {128, 128, 128},
  }};
  if (label <= 0) return {0, 0, 0};
  return kColors[static_cast<std::size_t>(label - 1) % kColors.size()];
}

void write_label_map(const fs::path& path, const SegMask& mask) {
  mask.validate();
  if (mask.label_count() > 255) throw RasterError("label maps support at most 255 labels");
  std::vector<png_color> palette(static_cast<std::size_t>(mask.label_count()) + 1);
  for (std::size_t i = 0; i < palette.size(); ++i) {
    const auto c = palette_color(static_cast<int>(i));
    palette[i] = png_color{c[0], c[1], c[2]};
  }
  std::vector<png_byte> data(mask.labels.begin(), mask.labels.end());
  write_png(path, mask.extent.width, mask.extent.height, PNG_COLOR_TYPE_PALETTE, data, &palette);
}

void write_boundary_overlay(const fs::path& path, const ImageGrid& image, const SegMask& mask) {
  mask.validate();
  if (!(image.extent() == mask.extent)) throw RasterError("overlay: image and mask extents differ");
  const ImageGrid gray = image.luminance();
  const std::vector<png_byte> bytes = stretch_to_bytes(gray.values());
  std::vector<png_byte> rgb(bytes.size() * 3);
  for (std::size_t i = 0; i < bytes.size(); ++i) rgb[3 * i] = rgb[3 * i + 1] = rgb[3 * i + 2] = bytes[i];
  for (std::size_t i : boundary_pixels(mask)) {
    rgb[3 * i] = 255;
    rgb[3 * i + 1] = 0;
    rgb[3 * i + 2] = 0;
  }
  write_png(path, mask.extent.width, mask.extent.height, PNG_COLOR_TYPE_RGB, rgb, nullptr);
}

}  // namespace mpseg::cli
