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

#include <cmath>

#include "gtest/gtest.h"
#include "rabipi/nelder_mead.h"

using namespace rabipi;

TEST(NelderMead, rosenbrock) {
    const auto f = [](const Eigen::Vector2d &x) {
        return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
    };
    const auto r = nelder_mead<double, 2>(f, Eigen::Vector2d(-1.2, 1.0), Eigen::Vector2d(0.1, 0.1), 1e-14, 1e-20, 20000);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.x[0], 1.0, 1e-4);
    EXPECT_NEAR(r.x[1], 1.0, 1e-4);
}

TEST(NelderMead, budget_exhaustion_reports_best) {
    const auto f = [](const Eigen::Vector2d &x) { return std::pow(x[0] - 1, 2) + 10 * std::pow(x[1] + 2, 2); };
    const auto r = nelder_mead<double, 2>(f, Eigen::Vector2d(5, 5), Eigen::Vector2d(1, 1), 0.0, 0.0, 30);
    EXPECT_FALSE(r.converged);
    EXPECT_LT(r.value, 506.0);
    EXPECT_LE(r.evaluations, 32);
}

TEST(FitModel, recovers_ideal_model_from_exact_fractions) {
    const TimeGrid g = TimeGrid::standard();
    const Curve<double> exact(g.points(), noisy_prob(NoiseModeld::ideal(), g.points()));
    const FitResult r = fit_model(exact);
    EXPECT_NEAR(r.model.alpha, 1.0, 1e-3);
    EXPECT_NEAR(r.model.beta, 0.0, 1e-3);
    EXPECT_NEAR(r.model.phi0, 0.0, 1e-3);
    EXPECT_NEAR(r.model.c, 1.0, 1e-3);
    EXPECT_LE(r.residual, r.initial_residual);
    EXPECT_TRUE(r.model.valid());
}

TEST(FitModel, recovers_distorted_model_under_shot_noise) {
    const NoiseModeld truth{0.8, 0.1, 0.2, 1.05};
    const TimeGrid g = TimeGrid::standard();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const FitResult r = fit_model(sample_dataset(truth, g, 8192, seed));
        EXPECT_NEAR(r.model.alpha, truth.alpha, 0.02) << seed;
        EXPECT_NEAR(r.model.beta, truth.beta, 0.02) << seed;
        EXPECT_NEAR(r.model.phi0, truth.phi0, 0.02) << seed;
        EXPECT_NEAR(r.model.c, truth.c, 0.02) << seed;
        EXPECT_LE(r.residual, r.initial_residual);
    }
}

TEST(FitModel, constant_fractions_are_unidentifiable) {
    const Dataset ds({{0, 100, 40}, {1, 100, 40}, {2, 100, 40}});
    EXPECT_THROW(fit_model(ds), std::domain_error);
}

TEST(FitModel, tiny_budget_reports_best_so_far) {
    const Dataset ds = sample_dataset({0.9, 0.05, 0.1, 1.0}, TimeGrid::standard(), 8192, 3);
    try {
        fit_model(ds, {1e-9, 12});
        FAIL();
    } catch (const FitNotConverged &e) {
        EXPECT_LE(e.best().residual, e.best().initial_residual);
        EXPECT_TRUE(e.best().model.valid());
    }
}
