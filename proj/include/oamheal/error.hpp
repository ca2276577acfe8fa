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

#include <stdexcept>
#include <string>
#include <string_view>

namespace oamheal {

enum class ErrorCode {
  InvalidArgument,
  Domain,              // outside supported numerical range
  DegenerateGeometry,
  BeamRadiusTooLarge,
  Unmatched,           // mode order 0 has no off-axis first maximum
  Nyquist,             // ring under-samples the azimuthal mode
  Cutoff,
  Sampling,            // angular bandwidth not representable on the grid
  PlaneMismatch,
  OutOfExtent,
  RingOutsideGrid,
  UndersampledRing,
  GeometryMismatch,
  Length,
  DegeneratePilot,
  ZeroChannel,
  Config,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace oamheal
