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

#include <vector>

namespace oamheal {

inline constexpr int kMaxBesselOrder = 16;
inline constexpr double kMaxBesselArgument = 100.0;

/// Bessel function of the first kind J_n(x) for 0 <= n <= 16, |x| <= 100.
/// Throws ErrorCode::Domain outside that range.
double bessel_j(int order, double x);

/// J_0(x) ... J_{max_order}(x) from one normalized backward recurrence.
/// Used for pattern evaluation beyond the accuracy-checked bessel_j domain;
/// |x| up to 1e4.
std::vector<double> bessel_j_table(int max_order, double x);

/// Abscissa of the first maximum of J_order, i.e. the first positive zero of
/// J'_order, for order >= 1 (j'_{1,1} = 1.8412, j'_{2,1} = 3.0542, ...).
double bessel_first_max(int order);

}  // namespace oamheal
