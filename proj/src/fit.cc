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

#include "rabipi/fit.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rabipi/estimate.h"
#include "rabipi/nelder_mead.h"

namespace rabipi {

namespace {

using Params = Eigen::Vector4d;

NoiseModeld project(const Params &p) {
    NoiseModeld m;
    m.alpha = std::clamp(p[0], 0.0, 1.0);
    m.beta = std::clamp(p[1], 0.0, 1.0 - m.alpha);
    m.phi0 = p[2];
    m.c = std::max(p[3], 1e-6);
    return m;
}

Params to_params(const NoiseModeld &m) { return {m.alpha, m.beta, m.phi0, m.c}; }

}  // namespace

FitNotConverged::FitNotConverged(FitResult best)
    : std::runtime_error("fit did not converge within the evaluation budget"), best_(best) {}

double sum_squared_residuals(const NoiseModeld &model, const Curve<double> &fractions) {
    return (noisy_prob(model, fractions.times()) - fractions.values()).square().sum();
}

FitResult fit_model(const Curve<double> &fractions, const FitOptions &opts) {
    const AlphaBeta rough = rough_alpha_beta(fractions);
    const NormalizedCurve f1 = normalize(fractions, rough);

    NoiseModeld init;
    init.alpha = rough.alpha;
    init.beta = rough.beta;
    init.c = 1.0;
    init.phi0 = 0.0;
    try {
        const double t1 = find_crossing(f1, std::clamp(1.5, f1.t_min(), f1.t_max()), 0.5);
        const double t2 = find_crossing(f1, std::clamp(4.5, f1.t_min(), f1.t_max()), 0.5);
        if (t2 > t1) {
            init.c = std::numbers::pi / (t2 - t1);
            init.phi0 = std::numbers::pi / 2.0 - init.c * t1;
        }
    } catch (const NoCrossingError &) {
        // Keep the unit-rate default.
    }
    init = project(to_params(init));

    const auto objective = [&](const Params &p) { return sum_squared_residuals(project(p), fractions); };
    const Params step(0.05, 0.02, 0.1, 0.05);

    FitResult out;
    out.initial = init;
    out.initial_residual = objective(to_params(init));

    // Restart from the optimum until a fresh simplex makes no progress.
    Params x = to_params(init);
    double value = out.initial_residual;
    bool converged = false;
    int evals = 0;
    for (int restart = 0; restart < 8 && evals < opts.max_evals; ++restart) {
        const auto res = nelder_mead<double, 4>(objective, x, step, opts.rel_tol, 1e-30, opts.max_evals - evals);
        evals += res.evaluations;
        const bool improved = res.value < value * (1.0 - opts.rel_tol);
        if (res.value <= value) {
            x = res.x;
            value = res.value;
        }
        converged = res.converged;
        if (!improved || value == 0.0) {
            break;
        }
    }

    out.model = project(x);
    out.residual = value;
    out.evaluations = evals;
    if (!converged) {
        throw FitNotConverged(out);
    }
    return out;
}

FitResult fit_model(const Dataset &ds, const FitOptions &opts) { return fit_model(ds.fraction_curve(), opts); }

}  // namespace rabipi
