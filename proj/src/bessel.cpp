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

#include "oamheal/bessel.hpp"

#include <cmath>
#include <string>

#include "oamheal/error.hpp"

namespace oamheal {

namespace {
// The recurrence itself is valid far beyond the public bessel_j range.
constexpr double kMaxTableArgument = 1e4;
}  // namespace

std::vector<double> bessel_j_table(int max_order, double x) {
  if (max_order < 0) {
    fail(ErrorCode::Domain, "bessel_j_table: negative order");
  }
  if (!(std::abs(x) <= kMaxTableArgument)) {
    fail(ErrorCode::Domain, "bessel_j_table: |x| beyond supported range");
  }
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
  const double ax = std::abs(x);
  if (ax == 0.0) {
    out[0] = 1.0;
    return out;
  }

  // Miller's algorithm: recur downward from well above max(n, x) and
  // normalize with J0 + 2*sum(J_2k) = 1.
  const double top = std::max(static_cast<double>(max_order), ax);
  int start = static_cast<int>(top + 30.0 + std::sqrt(60.0 * top));
  start += start % 2;

  constexpr double kBig = 1e250;
  double next = 0.0;      // J_{m+1}
  double current = 1e-300;  // J_m
  double norm = 0.0;
  for (int m = start; m >= 1; --m) {
    const double prev = (2.0 * m / ax) * current - next;  // J_{m-1}
    next = current;
    current = prev;
    if (m - 1 <= max_order) {
      out[static_cast<std::size_t>(m - 1)] = current;
    }
    if ((m - 1) % 2 == 0 && m - 1 > 0) {
      norm += 2.0 * current;
    }
    if (std::abs(current) > kBig) {
      const double s = 1.0 / kBig;
      current *= s;
      next *= s;
      norm *= s;
      for (int k = m - 1; k <= max_order; ++k) {
        out[static_cast<std::size_t>(k)] *= s;
      }
    }
  }
  norm += current;  // J_0 term
  for (double& v : out) {
    v /= norm;
  }
  if (x < 0.0) {
    for (int k = 1; k <= max_order; k += 2) {
      out[static_cast<std::size_t>(k)] = -out[static_cast<std::size_t>(k)];
    }
  }
  return out;
}

double bessel_j(int order, double x) {
  if (order < 0 || order > kMaxBesselOrder) {
    fail(ErrorCode::Domain,
         "bessel_j: order " + std::to_string(order) + " outside [0, 16]");
  }
  if (!(std::abs(x) <= kMaxBesselArgument)) {
    fail(ErrorCode::Domain, "bessel_j: |x| > 100 is not supported");
  }
  return bessel_j_table(order, x)[static_cast<std::size_t>(order)];
}

double bessel_first_max(int order) {
  if (order < 1 || order > kMaxBesselOrder) {
    fail(ErrorCode::Domain, "bessel_first_max: order must be in [1, 16]");
  }
  // 2 J'_n = J_{n-1} - J_{n+1}; positive below the first maximum, which
  // lies above x = n.
  auto slope = [order](double x) {
    const auto t = bessel_j_table(order + 1, x);
    return t[static_cast<std::size_t>(order - 1)] -
           t[static_cast<std::size_t>(order + 1)];
  };
  double lo = static_cast<double>(order);
  double hi = lo + 0.25;
  while (slope(hi) > 0.0) {
    lo = hi;
    hi += 0.25;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (slope(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oamheal
