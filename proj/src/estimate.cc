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

#include "rabipi/estimate.h"

#include <algorithm>
#include <cmath>
#include <vector>

namespace rabipi {

void EstimateConfig::check() const {
    if (!(delta > 0.0) || !(refine_window > 0.0)) {
        throw std::invalid_argument("estimate config: delta and refine window must be positive");
    }
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("estimate config: level must lie in (0, 1)");
    }
    if (!(root_start_1 < root_start_2)) {
        throw std::invalid_argument("estimate config: root starts must be increasing");
    }
}

std::string_view step_name(Step step) {
    switch (step) {
        case Step::kRoughAlphaBeta:
            return "rough alpha/beta";
        case Step::kNormalize:
            return "normalize";
        case Step::kInterpolate:
            return "interpolate";
        case Step::kFindCrossings:
            return "find crossings";
        case Step::kRefineAlphaBeta:
            return "refine alpha/beta";
        case Step::kRenormalize:
            return "re-normalize";
        case Step::kRefineCrossings:
            return "refine crossings";
        case Step::kIntegrate:
            return "integrate";
        case Step::kEstimatePi:
            return "estimate pi";
    }
    return "unknown";
}

EstimateError::EstimateError(Step step, const std::string &cause)
    : std::runtime_error("step " + std::to_string(static_cast<int>(step)) + " (" + std::string(step_name(step)) +
                         "): " + cause),
      step_(step) {}

AlphaBeta rough_alpha_beta(const Curve<double> &fractions) {
    const double lo = fractions.values().minCoeff();
    const double hi = fractions.values().maxCoeff();
    if (!(hi > lo)) {
        throw std::domain_error("all fractions are equal, no oscillation signal");
    }
    return {hi - lo, lo};
}

AlphaBeta rough_alpha_beta(const Dataset &ds) { return rough_alpha_beta(ds.fraction_curve()); }

NormalizedCurve normalize(const Curve<double> &fractions, const AlphaBeta &ab) {
    if (!(ab.alpha > 0.0) || !std::isfinite(ab.alpha) || !std::isfinite(ab.beta)) {
        throw std::domain_error("normalize: alpha must be positive and finite");
    }
    return NormalizedCurve(fractions.times(), (fractions.values() - ab.beta) / ab.alpha);
}

NormalizedCurve normalize(const Dataset &ds, const AlphaBeta &ab) { return normalize(ds.fraction_curve(), ab); }

RefinedAlphaBeta refine_alpha_beta(const NormalizedCurve &curve, double t1_hat, double t2_hat, double delta) {
    if (!(delta > 0.0)) {
        throw std::invalid_argument("refine_alpha_beta: delta must be positive");
    }
    if (!(t1_hat < t2_hat)) {
        throw std::invalid_argument("refine_alpha_beta: need t1 < t2");
    }
    const auto &ts = curve.times();
    const auto &ys = curve.values();
    const double lo = curve.t_min();
    const double hi = curve.t_max();

    const double t_maxval = (t1_hat + t2_hat) / 2.0;
    std::vector<double> min_centers;
    for (double c : {(3.0 * t1_hat - t2_hat) / 2.0, (3.0 * t2_hat - t1_hat) / 2.0}) {
        if (c >= lo && c <= hi) {
            min_centers.push_back(c);
        }
    }
    if (min_centers.empty()) {
        min_centers.push_back(std::clamp((3.0 * t1_hat - t2_hat) / 2.0, lo, hi));
    }

    Eigen::Array<bool, Eigen::Dynamic, 1> in_min = Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(ts.size(), false);
    for (double c : min_centers) {
        in_min = in_min || ((ts - c).abs() < delta);
    }
    const auto in_max = (ts - t_maxval).abs() < delta;

    const Eigen::Index n_min = in_min.count();
    const Eigen::Index n_max = in_max.count();
    if (n_min == 0 || n_max == 0) {
        throw std::domain_error("refine_alpha_beta: empty extremum window, increase delta");
    }
    const double mean_min = in_min.select(ys, 0.0).sum() / static_cast<double>(n_min);
    const double mean_max = in_max.select(ys, 0.0).sum() / static_cast<double>(n_max);
    return {{mean_max - mean_min, mean_min}, min_centers.front(), t_maxval};
}

EstimateResult estimate_pi(const Curve<double> &fractions, const EstimateConfig &cfg) {
    cfg.check();
    EstimateResult r;

    auto run = [](Step step, auto &&fn) {
        try {
            return fn();
        } catch (const EstimateError &) {
            throw;
        } catch (const std::exception &e) {
            throw EstimateError(step, e.what());
        }
    };

    const AlphaBeta rough = run(Step::kRoughAlphaBeta, [&] { return rough_alpha_beta(fractions); });
    const NormalizedCurve f1 = run(Step::kNormalize, [&] { return normalize(fractions, rough); });

    // Step 3 is the interpolant itself; crossings are searched on it.
    r.t1_rough = run(Step::kFindCrossings, [&] { return find_crossing(f1, cfg.root_start_1, cfg.level); });
    r.t2_rough = run(Step::kFindCrossings, [&] { return find_crossing(f1, cfg.root_start_2, cfg.level); });
    const double grid_step = (f1.t_max() - f1.t_min()) / static_cast<double>(f1.size() - 1);
    if (!(r.t2_rough - r.t1_rough > grid_step)) {
        throw EstimateError(Step::kFindCrossings, "both searches converged to the same crossing");
    }

    const RefinedAlphaBeta refined =
        run(Step::kRefineAlphaBeta, [&] { return refine_alpha_beta(f1, r.t1_rough, r.t2_rough, cfg.delta); });
    r.t_minval = refined.t_minval;
    r.t_maxval = refined.t_maxval;

    // Compose the correction measured on the f1 scale with the rough estimate
    // so the second normalization again starts from raw fractions.
    r.alpha_hat = rough.alpha * refined.ab.alpha;
    r.beta_hat = rough.beta + rough.alpha * refined.ab.beta;
    const NormalizedCurve f1_refined =
        run(Step::kRenormalize, [&] { return normalize(fractions, {r.alpha_hat, r.beta_hat}); });

    r.t1_hat = run(Step::kRefineCrossings,
                   [&] { return refine_crossing_linear(f1_refined, r.t1_rough, cfg.refine_window, cfg.level); });
    r.t2_hat = run(Step::kRefineCrossings,
                   [&] { return refine_crossing_linear(f1_refined, r.t2_rough, cfg.refine_window, cfg.level); });
    if (!(r.t1_hat < r.t2_hat)) {
        throw EstimateError(Step::kRefineCrossings, "refined crossings are out of order");
    }

    r.integral_I =
        run(Step::kIntegrate, [&] { return trapezoid_integral(f1_refined, r.t1_hat, r.t2_hat, cfg.level); });
    if (!(r.integral_I > 0.0)) {
        throw EstimateError(Step::kIntegrate, "integral is not positive");
    }
    r.pi_hat = (r.t2_hat - r.t1_hat) / r.integral_I;
    r.c_hat = 1.0 / r.integral_I;
    return r;
}

EstimateResult estimate_pi(const Dataset &ds, const EstimateConfig &cfg) {
    return estimate_pi(ds.fraction_curve(), cfg);
}

}  // namespace rabipi
