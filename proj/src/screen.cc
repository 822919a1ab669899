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

#include "rabipi/screen.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "rabipi/fit.h"

namespace rabipi {

ScreenVerdict screen_dataset(const Dataset &ds) {
    ScreenVerdict v;
    double c = 0.0;
    try {
        c = fit_model(ds).model.c;
    } catch (const FitNotConverged &e) {
        c = e.best().model.c;
    } catch (const std::exception &e) {
        v.accepted = false;
        v.reason = fmt::format("provisional fit failed: {}", e.what());
        return v;
    }
    v.c_used = c;

    // Report the pair exceeding its threshold by the widest margin.
    const auto &rs = ds.records();
    double worst_excess = 0.0;
    for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
        const double dt = rs[i + 1].t - rs[i].t;
        const auto shots = static_cast<double>(std::min(rs[i].shots, rs[i + 1].shots));
        const double threshold = c * dt / 2.0 + 5.0 * std::sqrt(0.25 / shots);
        if (i == 0) {
            v.threshold = threshold;
        }
        const double jump = rs[i + 1].fraction() - rs[i].fraction();
        const double excess = std::abs(jump) - threshold;
        if (excess > worst_excess) {
            worst_excess = excess;
            v.accepted = false;
            v.location = rs[i + 1].t;
            v.threshold = threshold;
            v.reason = fmt::format("jump of {:+.4f} between t={:g} and t={:g} exceeds {:.4f}", jump, rs[i].t,
                                   rs[i + 1].t, threshold);
        }
    }
    return v;
}

}  // namespace rabipi
