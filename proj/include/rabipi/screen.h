// Copyright 2026 The rabipi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RABIPI_SCREEN_H
#define RABIPI_SCREEN_H

#include <optional>
#include <string>

#include "rabipi/simulate.h"

namespace rabipi {

struct ScreenVerdict {
    bool accepted = true;
    std::string reason;             // empty when accepted
    std::optional<double> location;  // later time of the worst offending pair
    double threshold = 0.0;          // tolerated jump at the reported pair
    double c_used = 0.0;
};

/// Rejects datasets containing a level shift no smooth model curve explains.
///
/// An adjacent pair (t_i, t_{i+1}) is flagged when |f_{i+1} - f_i| exceeds
/// c * dt / 2 (the largest change of the model curve over dt) plus five
/// binomial standard deviations at p = 1/2, sqrt(0.25 / shots). c comes from
/// a provisional model fit.
ScreenVerdict screen_dataset(const Dataset &ds);

}  // namespace rabipi

#endif  // RABIPI_SCREEN_H
