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

#ifndef RABIPI_MONTECARLO_H
#define RABIPI_MONTECARLO_H

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rabipi/estimate.h"
#include "rabipi/model.h"
#include "rabipi/simulate.h"

namespace rabipi {

struct McConfig {
    int runs_per_model = 50;
    std::int64_t shots = 8192;
    TimeGrid grid = TimeGrid::standard();
    std::uint64_t base_seed = 0;
    EstimateConfig estimate{};
    unsigned threads = 0;  // 0: hardware concurrency

    void check() const;
};

struct RunOutcome {
    std::size_t model_index = 0;
    int run_index = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    EstimateResult result{};
    std::string error;  // set when !ok
};

struct McSummary {
    std::size_t n_runs = 0;  // successful + failed
    std::size_t failures = 0;
    double mean_pi = 0.0;
    double std_pi = 0.0;
    double mean_dt = 0.0;
    double std_dt = 0.0;  // of t2_hat - t1_hat
    // std_* are pooled within-model standard deviations.
    double mean_I = 0.0;
    double std_I = 0.0;
    std::vector<RunOutcome> outcomes;  // ordered by (model index, run index)
};

/// Seed of run `run_index` for `model`, whose identical copies earlier in the
/// model list number `occurrence`. Depends on the model's value rather than
/// its list position, so permuting the list permutes whole runs.
std::uint64_t run_seed(std::uint64_t base_seed, const NoiseModeld &model, int occurrence, int run_index);

/// Samples runs_per_model datasets per model and estimates pi on each.
///
/// Standard deviations are pooled over all successful runs: squared
/// deviations from each model's own mean, divided by (runs - models). With a
/// single model this is the ordinary sample standard deviation.
McSummary run_mc(const std::vector<NoiseModeld> &models, const McConfig &cfg = {});

/// One model per dataset: (alpha, beta) from the refined estimates,
/// c = 1 / I and phi0 = pi/2 - c t1. Every dataset must pass screening.
std::vector<NoiseModeld> models_from_datasets(const std::vector<Dataset> &datasets,
                                              const EstimateConfig &cfg = {});

struct AggregateReport {
    std::vector<std::pair<std::string, EstimateResult>> per_qubit;
    double mean_pi = 0.0;
    double sigma = 0.0;
    double error_bar = 0.0;  // 2 sigma
    std::string sigma_source;
};

/// Mean of the per-qubit estimates with a 2 sigma error bar, where sigma is
/// the Monte Carlo standard deviation of a single-run estimate.
AggregateReport aggregate(std::vector<std::pair<std::string, EstimateResult>> results, double sigma);

/// Sample standard deviation (n - 1 denominator); order independent.
double sample_std(std::vector<double> values);

}  // namespace rabipi

#endif  // RABIPI_MONTECARLO_H
