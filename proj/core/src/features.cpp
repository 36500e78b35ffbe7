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

#include "mpseg/features.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mpseg {
namespace {

using Complex = std::complex<double>;

// Whole-sample symmetric reflection (-1 -> 1, n -> n-2), repeated for
// offsets larger than the image.
int mirror_index(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

int clamp_index(int i, int n) { return std::clamp(i, 0, n - 1); }

struct SeparableTerm {
  std::vector<Complex> kx;  // taps for offsets -radius..radius
  std::vector<Complex> ky;
};

struct SeparableKernel {
  int radius = 0;
  std::vector<SeparableTerm> terms;
  bool complex_output = false;
};

std::vector<double> gaussian_taps(double sigma, int radius) {
  std::vector<double> taps(2 * radius + 1);
  double sum = 0.0;
  for (int d = -radius; d <= radius; ++d) {
    taps[d + radius] = std::exp(-0.5 * d * d / (sigma * sigma));
    sum += taps[d + radius];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

SeparableKernel make_kernel(const Filter& filter) {
  SeparableKernel kernel;
  switch (filter.kind) {
    case FilterKind::kIntensity:
    case FilterKind::kChannelIntensity:
      kernel.radius = 0;
      kernel.terms.push_back({{Complex(1.0)}, {Complex(1.0)}});
      return kernel;
    case FilterKind::kGaussian: {
      const double sigma = filter.scale;
      kernel.radius = static_cast<int>(std::ceil(3.0 * sigma));
      const auto g = gaussian_taps(sigma, kernel.radius);
      SeparableTerm term;
      term.kx.assign(g.begin(), g.end());
      term.ky = term.kx;
      kernel.terms.push_back(std::move(term));
      return kernel;
    }
    case FilterKind::kLaplacianOfGaussian: {
      // Scale-normalized: sigma^2 (g_xx + g_yy).
      const double sigma = filter.scale;
      kernel.radius = static_cast<int>(std::ceil(4.0 * sigma));
      const auto g = gaussian_taps(sigma, kernel.radius);
      std::vector<Complex> gc(g.begin(), g.end());
      std::vector<Complex> g2(g.size());
      for (int d = -kernel.radius; d <= kernel.radius; ++d) {
        g2[d + kernel.radius] = g[d + kernel.radius] * (d * d - sigma * sigma) / (sigma * sigma);
      }
      kernel.terms.push_back({g2, gc});
      kernel.terms.push_back({gc, g2});
      return kernel;
    }
    case FilterKind::kGabor: {
      const double wavelength = filter.scale;
      const double envelope = 0.56 * wavelength;
      kernel.radius = static_cast<int>(std::ceil(3.0 * envelope));
      kernel.complex_output = true;
      const auto g = gaussian_taps(envelope, kernel.radius);
      const double omega = 2.0 * std::numbers::pi / wavelength;
      const double cx = std::cos(filter.orientation) * omega;
      const double cy = std::sin(filter.orientation) * omega;
      SeparableTerm carrier;
      carrier.kx.resize(g.size());
      carrier.ky.resize(g.size());
      Complex sum_x = 0.0;
      Complex sum_y = 0.0;
      for (int d = -kernel.radius; d <= kernel.radius; ++d) {
        carrier.kx[d + kernel.radius] = g[d + kernel.radius] * std::polar(1.0, cx * d);
        carrier.ky[d + kernel.radius] = g[d + kernel.radius] * std::polar(1.0, cy * d);
        sum_x += carrier.kx[d + kernel.radius];
        sum_y += carrier.ky[d + kernel.radius];
      }
      // Subtract the envelope scaled by the carrier's DC so the kernel sums
      // to zero (taps of g already sum to 1).
      SeparableTerm dc;
      dc.kx.resize(g.size());
      dc.ky.resize(g.size());
      const Complex c = sum_x * sum_y;
      for (std::size_t j = 0; j < g.size(); ++j) {
        dc.kx[j] = -c * g[j];
        dc.ky[j] = g[j];
      }
      kernel.terms.push_back(std::move(carrier));
      kernel.terms.push_back(std::move(dc));
      return kernel;
    }
  }
  throw std::logic_error("make_kernel: unknown filter kind");
}

ImageGrid correlate(const ImageGrid& scalar, const SeparableKernel& kernel) {
  const int w = scalar.width();
  const int h = scalar.height();
  const int r = kernel.radius;
  std::vector<Complex> acc(scalar.pixel_count(), Complex(0.0));
  std::vector<Complex> tmp(scalar.pixel_count());
  const auto src = scalar.values();
  std::vector<int> xs(w + 2 * r), ys(h + 2 * r);
  for (int i = -r; i < w + r; ++i) xs[i + r] = mirror_index(i, w);
  for (int i = -r; i < h + r; ++i) ys[i + r] = mirror_index(i, h);

  for (const auto& term : kernel.terms) {
    for (int y = 0; y < h; ++y) {
      const std::size_t row = static_cast<std::size_t>(y) * w;
      for (int x = 0; x < w; ++x) {
        Complex s = 0.0;
        for (int d = -r; d <= r; ++d) s += term.kx[d + r] * src[row + xs[x + d + r]];
        tmp[row + x] = s;
      }
    }
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        Complex s = 0.0;
        for (int d = -r; d <= r; ++d) s += term.ky[d + r] * tmp[static_cast<std::size_t>(ys[y + d + r]) * w + x];
        acc[static_cast<std::size_t>(y) * w + x] += s;
      }
    }
  }

  ImageGrid out(w, h, 1);
  auto dst = out.values();
  for (std::size_t i = 0; i < acc.size(); ++i) dst[i] = kernel.complex_output ? std::abs(acc[i]) : acc[i].real();
  return out;
}

// FFTW planning is not thread safe.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

void WindowSpec::validate(GridExtent extent) const {
  if (half_width < 0) throw std::invalid_argument("WindowSpec: half-width s must be >= 0");
  if (side() > std::min(extent.width, extent.height)) {
    throw std::invalid_argument("WindowSpec: window side " + std::to_string(side()) +
                                " exceeds image extent " + std::to_string(extent.width) + "x" +
                                std::to_string(extent.height));
  }
}

std::string Filter::describe() const {
  std::ostringstream os;
  switch (kind) {
    case FilterKind::kIntensity: os << "intensity"; break;
    case FilterKind::kChannelIntensity: os << "channel(" << channel << ")"; break;
    case FilterKind::kGabor: os << "gabor(" << scale << "," << orientation << ")"; break;
    case FilterKind::kGaussian: os << "gaussian(" << scale << ")"; break;
    case FilterKind::kLaplacianOfGaussian: os << "log(" << scale << ")"; break;
  }
  return os.str();
}

FilterBank FilterBank::gabor_bank(const std::vector<double>& sizes, const std::vector<double>& orientations,
                                  int bins, bool include_intensity) {
  FilterBank bank;
  bank.bins = bins;
  if (include_intensity) bank.filters.push_back(Filter::intensity());
  for (double size : sizes)
    for (double theta : orientations) bank.filters.push_back(Filter::gabor(size, theta));
  return bank;
}

ImageGrid apply_filter(const ImageGrid& image, const Filter& filter) {
  if ((filter.kind == FilterKind::kGabor || filter.kind == FilterKind::kGaussian ||
       filter.kind == FilterKind::kLaplacianOfGaussian) &&
      !(filter.scale > 0.0)) {
    throw std::invalid_argument("apply_filter: " + filter.describe() + " needs a positive scale");
  }
  if (filter.kind == FilterKind::kChannelIntensity) return image.channel(filter.channel);
  const ImageGrid scalar = image.luminance();
  if (filter.kind == FilterKind::kIntensity) return scalar;
  return correlate(scalar, make_kernel(filter));
}

int histogram_bin(double value, double lo, double hi, int bins) {
  if (!(hi > lo)) return bins - 1;
  const int b = static_cast<int>(std::floor((value - lo) / (hi - lo) * bins));
  return std::clamp(b, 0, bins - 1);
}

FeatureMatrix spectral_histogram(const ImageGrid& image, const FilterBank& bank, const WindowSpec& window) {
  if (bank.bins < 1) throw std::invalid_argument("spectral_histogram: bins must be >= 1");
  if (bank.filters.empty()) throw std::invalid_argument("spectral_histogram: empty filter bank");
  image.require_finite("spectral_histogram");
  window.validate(image.extent());

  const int w = image.width();
  const int h = image.height();
  const int s = window.half_width;
  const int q = bank.bins;
  const int pw = w + 2 * s;
  const int ph = h + 2 * s;
  const double norm = 1.0 / (static_cast<double>(window.side()) * window.side());
  auto pad = window.padding == Padding::kMirror ? mirror_index : clamp_index;

  FeatureMatrix out;
  out.extent = image.extent();
  out.margin = 0;
  out.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(bank.filters.size()) * q,
                                     static_cast<Eigen::Index>(image.pixel_count()));

  std::vector<int> bin_of(static_cast<std::size_t>(pw) * ph);
  std::vector<int> integral(static_cast<std::size_t>(pw + 1) * (ph + 1));
  for (std::size_t fi = 0; fi < bank.filters.size(); ++fi) {
    const ImageGrid filtered = apply_filter(image, bank.filters[fi]);
    const double lo = filtered.min_value();
    const double hi = filtered.max_value();
    if (!(hi > lo)) {
      out.warnings.push_back("degenerate bin range for filter " + bank.filters[fi].describe() +
                             ": all mass in last bin");
    }
    for (int y = 0; y < ph; ++y) {
      const int sy = pad(y - s, h);
      for (int x = 0; x < pw; ++x) {
        bin_of[static_cast<std::size_t>(y) * pw + x] = histogram_bin(filtered.at(pad(x - s, w), sy), lo, hi, q);
      }
    }
    for (int b = 0; b < q; ++b) {
      // Summed-area table of the indicator of bin b on the padded grid.
      for (int y = 0; y <= ph; ++y) {
        for (int x = 0; x <= pw; ++x) {
          int& cell = integral[static_cast<std::size_t>(y) * (pw + 1) + x];
          if (x == 0 || y == 0) {
            cell = 0;
            continue;
          }
          const int hit = bin_of[static_cast<std::size_t>(y - 1) * pw + (x - 1)] == b ? 1 : 0;
          cell = hit + integral[static_cast<std::size_t>(y - 1) * (pw + 1) + x] +
                 integral[static_cast<std::size_t>(y) * (pw + 1) + x - 1] -
                 integral[static_cast<std::size_t>(y - 1) * (pw + 1) + x - 1];
        }
      }
      const Eigen::Index row = static_cast<Eigen::Index>(fi) * q + b;
      const int side = window.side();
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          // Window of pixel (x, y) spans padded [x, x + side) x [y, y + side).
          auto at = [&](int xx, int yy) { return integral[static_cast<std::size_t>(yy) * (pw + 1) + xx]; };
          const int count = at(x + side, y + side) - at(x, y + side) - at(x + side, y) + at(x, y);
          out.values(row, static_cast<Eigen::Index>(y) * w + x) = count * norm;
        }
      }
    }
  }
  return out;
}

FeatureMatrix fft_modulus(const ImageGrid& image, const WindowSpec& window) {
  if (image.channels() != 1) throw std::invalid_argument("fft_modulus: expects a single-channel image");
  image.require_finite("fft_modulus");
  window.validate(image.extent());

  const int s = window.half_width;
  const int side = window.side();
  const int half = side / 2 + 1;
  const GridExtent interior{image.width() - 2 * s, image.height() - 2 * s};

  FeatureMatrix out;
  out.extent = interior;
  out.margin = s;
  out.values.resize(static_cast<Eigen::Index>(side) * side, static_cast<Eigen::Index>(interior.size()));

  double* in = fftw_alloc_real(static_cast<std::size_t>(side) * side);
  fftw_complex* spec = fftw_alloc_complex(static_cast<std::size_t>(side) * half);
  std::unique_ptr<double, decltype(&fftw_free)> in_guard(in, &fftw_free);
  std::unique_ptr<fftw_complex, decltype(&fftw_free)> spec_guard(spec, &fftw_free);
  fftw_plan plan;
  {
    // FFTW_ESTIMATE: the algorithm choice must not depend on timing so that
    // repeated runs are bit-identical.
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_2d(side, side, in, spec, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("fft_modulus: FFTW planning failed");

  std::vector<double> half_modulus(static_cast<std::size_t>(side) * half);
  for (int cy = 0; cy < interior.height; ++cy) {
    for (int cx = 0; cx < interior.width; ++cx) {
      for (int wy = 0; wy < side; ++wy)
        for (int wx = 0; wx < side; ++wx) in[wy * side + wx] = image.at(cx + wx, cy + wy);
      fftw_execute(plan);
      for (std::size_t j = 0; j < half_modulus.size(); ++j) half_modulus[j] = std::hypot(spec[j][0], spec[j][1]);
      auto col = out.values.col(static_cast<Eigen::Index>(interior.index(cx, cy)));
      for (int ky = 0; ky < side; ++ky) {
        for (int kx = 0; kx < side; ++kx) {
          // Real input: |F(ky, kx)| = |F(-ky, -kx)|.
          const double v = kx < half ? half_modulus[static_cast<std::size_t>(ky) * half + kx]
                                     : half_modulus[static_cast<std::size_t>((side - ky) % side) * half + (side - kx)];
          col[ky * side + kx] = v;
        }
      }
    }
  }
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

FeatureMatrix stack_features(const std::vector<std::pair<FeatureMatrix, double>>& parts) {
  if (parts.empty()) throw std::invalid_argument("stack_features: no parts");
  const auto& first = parts.front().first;
  Eigen::Index rows = 0;
  for (const auto& [part, weight] : parts) {
    if (part.pixels() != first.pixels() || !(part.extent == first.extent) || part.margin != first.margin) {
      throw std::invalid_argument("stack_features: parts disagree on the pixel grid");
    }
    if (!(weight > 0.0)) throw std::invalid_argument("stack_features: weights must be > 0");
    rows += part.dimension();
  }
  FeatureMatrix out;
  out.extent = first.extent;
  out.margin = first.margin;
  out.values.resize(rows, first.pixels());
  Eigen::Index offset = 0;
  for (const auto& [part, weight] : parts) {
    out.values.middleRows(offset, part.dimension()) = weight * part.values;
    offset += part.dimension();
    out.warnings.insert(out.warnings.end(), part.warnings.begin(), part.warnings.end());
  }
  return out;
}

}  // namespace mpseg
