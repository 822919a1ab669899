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

#ifndef RABIPI_FIT_H
#define RABIPI_FIT_H

#include <stdexcept>

#include "rabipi/curve.h"
#include "rabipi/model.h"
#include "rabipi/simulate.h"

namespace rabipi {

struct FitResult {
    NoiseModeld model;
    NoiseModeld initial;
    double residual = 0.0;          // sum of squared residuals at `model`
    double initial_residual = 0.0;  // same, at `initial`
    int evaluations = 0;
};

/// The optimizer ran out of budget; best() holds the best model found.
class FitNotConverged : public std::runtime_error {
  public:
    explicit FitNotConverged(FitResult best);
    const FitResult &best() const { return best_; }

  private:
    FitResult best_;
};

struct FitOptions {
    double rel_tol = 1e-9;
    int max_evals = 10000;
};

/// Least-squares fit of all four model parameters to the fractions.
///
/// Starts from the rough alpha/beta, c = pi / (t2 - t1) and phi0 placing the
/// first half crossing at t1, where t1, t2 are the crossings of the
/// normalized curve nearest 1.5 and 4.5. Parameters are projected onto the
/// valid model region before every evaluation.
FitResult fit_model(const Curve<double> &fractions, const FitOptions &opts = {});
FitResult fit_model(const Dataset &ds, const FitOptions &opts = {});

/// Sum of squared differences between fractions and the model curve.
double sum_squared_residuals(const NoiseModeld &model, const Curve<double> &fractions);

}  // namespace rabipi

#endif  // RABIPI_FIT_H
