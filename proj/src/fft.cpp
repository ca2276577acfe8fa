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

#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "oamheal/error.hpp"

namespace oamheal::detail {

namespace {

struct PlanCache {
  std::mutex mutex;
  std::map<std::pair<std::size_t, bool>, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

fftw_plan plan_for(std::size_t side, bool inverse) {
  auto& c = cache();
  std::lock_guard lock(c.mutex);
  const auto key = std::make_pair(side, inverse);
  if (auto it = c.plans.find(key); it != c.plans.end()) return it->second;
  // FFTW_ESTIMATE does not touch the scratch buffer.
  auto* scratch = fftw_alloc_complex(side * side);
  const int n = static_cast<int>(side);
  fftw_plan plan = fftw_plan_dft_2d(n, n, scratch, scratch,
                                    inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                    FFTW_ESTIMATE);
  fftw_free(scratch);
  if (plan == nullptr) fail(ErrorCode::InvalidArgument, "FFTW planning failed");
  c.plans.emplace(key, plan);
  return plan;
}

}  // namespace

void fft2d(std::span<std::complex<double>> data, std::size_t side, bool inverse) {
  if (data.size() != side * side) {
    fail(ErrorCode::InvalidArgument, "fft2d: buffer does not match side");
  }
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  // New-array execute requires the same alignment class as the planning buffer.
  if (fftw_alignment_of(reinterpret_cast<double*>(ptr)) != 0) {
    fail(ErrorCode::InvalidArgument, "fft2d: buffer is not SIMD aligned");
  }
  fftw_execute_dft(plan_for(side, inverse), ptr, ptr);
}

const char* fft_library_version() { return fftw_version; }

}  // namespace oamheal::detail
