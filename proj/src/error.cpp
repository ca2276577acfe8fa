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

#include "oamheal/error.hpp"

namespace oamheal {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::DegenerateGeometry: return "degenerate_geometry";
    case ErrorCode::BeamRadiusTooLarge: return "beam_radius_too_large";
    case ErrorCode::Unmatched: return "unmatched";
    case ErrorCode::Nyquist: return "nyquist";
    case ErrorCode::Cutoff: return "cutoff";
    case ErrorCode::Sampling: return "sampling";
    case ErrorCode::PlaneMismatch: return "plane_mismatch";
    case ErrorCode::OutOfExtent: return "out_of_extent";
    case ErrorCode::RingOutsideGrid: return "ring_outside_grid";
    case ErrorCode::UndersampledRing: return "undersampled_ring";
    case ErrorCode::GeometryMismatch: return "geometry_mismatch";
    case ErrorCode::Length: return "length";
    case ErrorCode::DegeneratePilot: return "degenerate_pilot";
    case ErrorCode::ZeroChannel: return "zero_channel";
    case ErrorCode::Config: return "config";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

}  // namespace oamheal
