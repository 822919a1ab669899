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

#ifndef RABIPI_ESTIMATE_H
#define RABIPI_ESTIMATE_H

#include <stdexcept>
#include <string>
#include <string_view>

#include "rabipi/curve.h"
#include "rabipi/simulate.h"

namespace rabipi {

struct EstimateConfig {
    double delta = 0.1;          // half-width of the extremum averaging windows (strict)
    double root_start_1 = 1.5;
    double root_start_2 = 4.5;
    double refine_window = 0.5;  // half-width of the linear-fit windows (inclusive)
    double level = 0.5;

    void check() const;
};

/// Readout distortion estimate: fraction = alpha * normalized + beta.
struct AlphaBeta {
    double alpha = 1.0;
    double beta = 0.0;
};

struct EstimateResult {
    double alpha_hat = 0.0;
    double beta_hat = 0.0;
    double t1_hat = 0.0;
    double t2_hat = 0.0;
    double integral_I = 0.0;
    double pi_hat = 0.0;
    double c_hat = 0.0;
    // Diagnostics.
    double t1_rough = 0.0;
    double t2_rough = 0.0;
    double t_minval = 0.0;
    double t_maxval = 0.0;
};

enum class Step {
    kRoughAlphaBeta = 1,
    kNormalize = 2,
    kInterpolate = 3,
    kFindCrossings = 4,
    kRefineAlphaBeta = 5,
    kRenormalize = 6,
    kRefineCrossings = 7,
    kIntegrate = 8,
    kEstimatePi = 9,
};

std::string_view step_name(Step step);

/// Failure of one pipeline step; what() names the step and the cause.
class EstimateError : public std::runtime_error {
  public:
    EstimateError(Step step, const std::string &cause);
    Step step() const { return step_; }

  private:
    Step step_;
};

/// beta = min f, alpha = max f - min f. Throws std::domain_error if alpha == 0.
AlphaBeta rough_alpha_beta(const Curve<double> &fractions);
AlphaBeta rough_alpha_beta(const Dataset &ds);

/// f1 = (f - beta) / alpha, unclamped.
NormalizedCurve normalize(const Curve<double> &fractions, const AlphaBeta &ab);
NormalizedCurve normalize(const Dataset &ds, const AlphaBeta &ab);

struct RefinedAlphaBeta {
    AlphaBeta ab;     // on the scale of the input curve
    double t_minval;  // first minimum location used
    double t_maxval;
};

/// Means of the curve over |t - t_min| < delta and |t - t_max| < delta.
///
/// t_maxval is the midpoint of the crossings. The minimum sits half a period
/// to either side of it, at (3 t1 - t2) / 2 and (3 t2 - t1) / 2; every one of
/// those that lies inside the data range contributes its window to the
/// minimum mean. If neither does, the lower one is clamped into the range.
RefinedAlphaBeta refine_alpha_beta(const NormalizedCurve &curve, double t1_hat, double t2_hat, double delta);

/// Runs the full estimation pipeline on observed fractions.
///
/// Integration runs over the re-normalized curve, so that I estimates 1/c
/// independently of the readout distortion.
EstimateResult estimate_pi(const Curve<double> &fractions, const EstimateConfig &cfg = {});
EstimateResult estimate_pi(const Dataset &ds, const EstimateConfig &cfg = {});

}  // namespace rabipi

#endif  // RABIPI_ESTIMATE_H
