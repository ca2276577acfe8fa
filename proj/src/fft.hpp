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

#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace oamheal::detail {

// In-place square 2-D DFT backed by FFTW. Plans are created once per size
// with FFTW_ESTIMATE (deterministic algorithm choice) and shared across
// threads; execution uses the new-array interface and is thread-safe.
// The inverse transform is unnormalized.
void fft2d(std::span<std::complex<double>> data, std::size_t side, bool inverse);

// Version string of the FFT library, for reports.
const char* fft_library_version();

}  // namespace oamheal::detail
