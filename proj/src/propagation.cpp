// SPDX-License-Identifier: Apache-2.0
//
// oamheal: OAM beam self-healing link simulator
// Copyright (C) 2026 The oamheal authors
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

#include "oamheal/propagation.hpp"

#include <cmath>
#include <list>
#include <memory>
#include <mutex>
#include <string>

#include "fft.hpp"
#include "oamheal/error.hpp"
#include "oamheal/units.hpp"

namespace oamheal::propagation {

namespace {

struct TransferKey {
  std::size_t side;
  double spacing;
  double wavelength;
  double dz;
  bool operator==(const TransferKey&) const = default;
};

struct Transfer {
  aligned_vector<cplx> values;
  std::vector<unsigned char> passes;  // 1 where the component is kept
};

// Small LRU of transfer functions; a 2048² table costs 64 MB, so keep a few.
class TransferCache {
 public:
  std::shared_ptr<const Transfer> get(const TransferKey& key) {
    {
      std::lock_guard lock(mutex_);
      for (auto it = entries_.begin(); it != entries_.end(); ++it) {
        if (it->first == key) {
          entries_.splice(entries_.begin(), entries_, it);
          return entries_.front().second;
        }
      }
    }
    auto built = build(key);
    std::lock_guard lock(mutex_);
    entries_.emplace_front(key, built);
    while (entries_.size() > kCapacity) entries_.pop_back();
    return built;
  }

 private:
  static constexpr std::size_t kCapacity = 4;

  static std::shared_ptr<const Transfer> build(const TransferKey& key) {
    auto t = std::make_shared<Transfer>();
    const std::size_t m = key.side;
    t->values.assign(m * m, cplx{0.0, 0.0});
    t->passes.assign(m * m, 0);
    const double df = 1.0 / (static_cast<double>(m) * key.spacing);
    const double inv_lambda_sq = 1.0 / (key.wavelength * key.wavelength);
    const double limit = band_limit(key.wavelength, m * key.spacing, key.dz);
    std::vector<double> freq(m);
    for (std::size_t k = 0; k < m; ++k) {
      const auto signed_k = k < m / 2 ? static_cast<double>(k)
                                      : static_cast<double>(k) - static_cast<double>(m);
      freq[k] = signed_k * df;
    }
    for (std::size_t ky = 0; ky < m; ++ky) {
      const double fy = freq[ky];
      if (std::abs(fy) > limit) continue;
      for (std::size_t kx = 0; kx < m; ++kx) {
        const double fx = freq[kx];
        if (std::abs(fx) > limit) continue;
        const double arg = inv_lambda_sq - fx * fx - fy * fy;
        if (arg <= 0.0) continue;  // evanescent
        const double phase = kTwoPi * key.dz * std::sqrt(arg);
        t->values[ky * m + kx] = cplx{std::cos(phase), std::sin(phase)};
        t->passes[ky * m + kx] = 1;
      }
    }
    return t;
  }

  std::mutex mutex_;
  std::list<std::pair<TransferKey, std::shared_ptr<const Transfer>>> entries_;
};

TransferCache& transfer_cache() {
  static TransferCache cache;
  return cache;
}

// Index of sample i of an n-grid inside an m-grid with the origin at 0.
inline std::size_t wrap_index(std::size_t i, std::size_t n, std::size_t m) {
  return (i + m - n / 2) % m;
}

void single_step(ScalarField& field, double dz, const PropagationOptions& options,
                 aligned_vector<cplx>& buffer, PropagationStats& stats) {
  const std::size_t n = field.side();
  const std::size_t m = n * static_cast<std::size_t>(options.padding);
  buffer.assign(m * m, cplx{0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t row = wrap_index(j, n, m) * m;
    for (std::size_t i = 0; i < n; ++i) {
      buffer[row + wrap_index(i, n, m)] = field.at(i, j);
    }
  }

  detail::fft2d(buffer, m, false);
  const auto transfer = transfer_cache().get(
      TransferKey{m, field.spacing(), field.wavelength(), dz});
  double total = 0.0;
  double removed = 0.0;
  for (std::size_t k = 0; k < m * m; ++k) {
    const double e = std::norm(buffer[k]);
    total += e;
    if (!transfer->passes[k]) removed += e;
    buffer[k] *= transfer->values[k];
  }
  const double truncated = total > 0.0 ? removed / total : 0.0;
  if (truncated > options.max_truncated_fraction) {
    fail(ErrorCode::Sampling,
         "propagate: " + std::to_string(truncated) +
             " of the angular spectrum lies outside the band limit for a " +
             std::to_string(dz) + " m step; refine the grid or shorten steps");
  }
  stats.truncated_fraction = std::max(stats.truncated_fraction, truncated);
  detail::fft2d(buffer, m, true);

  const double norm = 1.0 / static_cast<double>(m * m);
  double kept = 0.0;
  double all = 0.0;
  for (const auto& v : buffer) all += std::norm(v);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t row = wrap_index(j, n, m) * m;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx v = buffer[row + wrap_index(i, n, m)];
      kept += std::norm(v);
      field.at(i, j) = v * norm;
    }
  }
  if (all > 0.0) stats.cropped_fraction += (all - kept) / all;
  field.set_z(field.z() + dz);
  ++stats.steps;
}

}  // namespace

double band_limit(double wavelength_m, double transform_extent_m, double dz_m) {
  const double df = 1.0 / transform_extent_m;
  const double t = 2.0 * df * dz_m;
  return 1.0 / (wavelength_m * std::sqrt(t * t + 1.0));
}

PropagationResult propagate_detailed(const ScalarField& field, double dz_m,
                                     const PropagationOptions& options) {
  if (!(dz_m > 0.0) || !std::isfinite(dz_m)) {
    fail(ErrorCode::InvalidArgument, "propagate: dz must be positive");
  }
  if (options.padding != 1 && options.padding != 2 && options.padding != 4) {
    fail(ErrorCode::InvalidArgument, "propagate: padding must be 1, 2 or 4");
  }
  if (!(options.max_step_m > 0.0)) {
    fail(ErrorCode::InvalidArgument, "propagate: max_step_m must be positive");
  }
  const int steps =
      std::max(1, static_cast<int>(std::ceil(dz_m / options.max_step_m - 1e-9)));
  const double step = dz_m / steps;
  const double z_final = field.z() + dz_m;

  PropagationResult result{field, {}};
  aligned_vector<cplx> buffer;
  for (int s = 0; s < steps; ++s) {
    single_step(result.field, step, options, buffer, result.stats);
  }
  result.field.set_z(z_final);
  return result;
}

ScalarField propagate(const ScalarField& field, double dz_m,
                      const PropagationOptions& options) {
  return propagate_detailed(field, dz_m, options).field;
}

void ObstructionMask::validate() const {
  if (!(width_m > 0.0) || (shape == MaskShape::Rectangle && !(height_m > 0.0))) {
    fail(ErrorCode::InvalidArgument, "obstruction: size must be positive");
  }
  if (!(transmittance >= 0.0 && transmittance <= 1.0)) {
    fail(ErrorCode::InvalidArgument, "obstruction: transmittance must be in [0, 1]");
  }
}

bool ObstructionMask::covers(double x, double y) const {
  const double dx = x - center_x_m;
  const double dy = y - center_y_m;
  if (shape == MaskShape::Disk) {
    const double radius = 0.5 * width_m;
    return dx * dx + dy * dy <= radius * radius;
  }
  return std::abs(dx) <= 0.5 * width_m && std::abs(dy) <= 0.5 * height_m;
}

ScalarField apply_mask(const ScalarField& field, const ObstructionMask& mask) {
  mask.validate();
  if (std::abs(mask.z_m - field.z()) > 1e-9 * std::max(1.0, std::abs(field.z()))) {
    fail(ErrorCode::PlaneMismatch,
         "apply_mask: mask plane z=" + std::to_string(mask.z_m) +
             " m differs from field plane z=" + std::to_string(field.z()) + " m");
  }
  ScalarField out = field;
  const auto& g = field.grid();
  for (std::size_t j = 0; j < g.side; ++j) {
    const double y = g.coord(j);
    for (std::size_t i = 0; i < g.side; ++i) {
      if (mask.covers(g.coord(i), y)) out.at(i, j) *= mask.transmittance;
    }
  }
  return out;
}

std::vector<cplx> sample_points(const ScalarField& field,
                                const std::vector<Point>& points) {
  const std::size_t n = field.side();
  const double half = static_cast<double>(n / 2);
  const double last = static_cast<double>(n - 1);
  std::vector<cplx> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    const double fi = p.x / field.spacing() + half;
    const double fj = p.y / field.spacing() + half;
    if (!(fi >= 0.0 && fi <= last && fj >= 0.0 && fj <= last)) {
      fail(ErrorCode::OutOfExtent, "sample_points: (" + std::to_string(p.x) + ", " +
                                       std::to_string(p.y) + ") outside the grid");
    }
    const auto i0 = std::min(static_cast<std::size_t>(fi), n - 2);
    const auto j0 = std::min(static_cast<std::size_t>(fj), n - 2);
    const double a = fi - static_cast<double>(i0);
    const double b = fj - static_cast<double>(j0);
    out.push_back(field.at(i0, j0) * ((1 - a) * (1 - b)) +
                  field.at(i0 + 1, j0) * (a * (1 - b)) +
                  field.at(i0, j0 + 1) * ((1 - a) * b) +
                  field.at(i0 + 1, j0 + 1) * (a * b));
  }
  return out;
}

}  // namespace oamheal::propagation
