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

#include "rabipi/montecarlo.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "rabipi/screen.h"

namespace rabipi {

void McConfig::check() const {
    if (runs_per_model < 2) {
        throw std::invalid_argument("mc: runs per model must be >= 2 for a standard deviation");
    }
    if (shots < 1) {
        throw std::invalid_argument("mc: shots must be >= 1");
    }
    estimate.check();
}

std::uint64_t run_seed(std::uint64_t base_seed, const NoiseModeld &model, int occurrence, int run_index) {
    return derive_seed(base_seed, {std::bit_cast<std::uint64_t>(model.alpha), std::bit_cast<std::uint64_t>(model.beta),
                                   std::bit_cast<std::uint64_t>(model.phi0), std::bit_cast<std::uint64_t>(model.c),
                                   static_cast<std::uint64_t>(occurrence), static_cast<std::uint64_t>(run_index)});
}

namespace {

// Sorted before summation so the result does not depend on input order.
double sorted_mean(std::vector<double> &values) {
    std::sort(values.begin(), values.end());
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double pooled_mean(const std::vector<std::vector<double>> &groups) {
    std::vector<double> all;
    for (const auto &g : groups) {
        all.insert(all.end(), g.begin(), g.end());
    }
    return sorted_mean(all);
}

// sqrt(sum of squared deviations from each group's mean / (N - groups)).
double pooled_std(const std::vector<std::vector<double>> &groups) {
    std::vector<double> sq;
    std::size_t dof = 0;
    for (auto g : groups) {
        if (g.size() < 2) {
            continue;
        }
        const double mean = sorted_mean(g);
        for (double v : g) {
            sq.push_back((v - mean) * (v - mean));
        }
        dof += g.size() - 1;
    }
    if (dof == 0) {
        return 0.0;
    }
    std::sort(sq.begin(), sq.end());
    return std::sqrt(std::accumulate(sq.begin(), sq.end(), 0.0) / static_cast<double>(dof));
}

}  // namespace

double sample_std(std::vector<double> values) {
    if (values.size() < 2) {
        throw std::invalid_argument("sample_std: need at least 2 values");
    }
    const double mean = sorted_mean(values);
    std::vector<double> sq(values.size());
    std::transform(values.begin(), values.end(), sq.begin(), [mean](double v) { return (v - mean) * (v - mean); });
    std::sort(sq.begin(), sq.end());
    return std::sqrt(std::accumulate(sq.begin(), sq.end(), 0.0) / static_cast<double>(values.size() - 1));
}

McSummary run_mc(const std::vector<NoiseModeld> &models, const McConfig &cfg) {
    cfg.check();
    if (models.empty()) {
        throw std::invalid_argument("mc: no models");
    }
    for (const auto &m : models) {
        m.check();
    }

    McSummary s;
    s.outcomes.resize(models.size() * static_cast<std::size_t>(cfg.runs_per_model));
    for (std::size_t m = 0; m < models.size(); ++m) {
        const int occurrence =
            static_cast<int>(std::count(models.begin(), models.begin() + static_cast<std::ptrdiff_t>(m), models[m]));
        for (int r = 0; r < cfg.runs_per_model; ++r) {
            RunOutcome &o = s.outcomes[m * static_cast<std::size_t>(cfg.runs_per_model) + static_cast<std::size_t>(r)];
            o.model_index = m;
            o.run_index = r;
            o.seed = run_seed(cfg.base_seed, models[m], occurrence, r);
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < s.outcomes.size(); i = next++) {
            RunOutcome &o = s.outcomes[i];
            try {
                const Dataset ds = sample_dataset(models[o.model_index], cfg.grid, cfg.shots, o.seed);
                o.result = estimate_pi(ds, cfg.estimate);
                o.ok = true;
            } catch (const std::exception &e) {
                o.error = e.what();
            }
        }
    };
    unsigned n_threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, s.outcomes.size()));
    {
        std::vector<std::jthread> pool;
        for (unsigned i = 1; i < n_threads; ++i) {
            pool.emplace_back(worker);
        }
        worker();
    }

    // Per-model samples; statistics pool the within-model deviations so that
    // differences between the models' true values do not count as noise.
    const std::size_t n_models = models.size();
    std::vector<std::vector<double>> pis(n_models), dts(n_models), integrals(n_models);
    for (const RunOutcome &o : s.outcomes) {
        if (o.ok) {
            pis[o.model_index].push_back(o.result.pi_hat);
            dts[o.model_index].push_back(o.result.t2_hat - o.result.t1_hat);
            integrals[o.model_index].push_back(o.result.integral_I);
        }
    }
    s.n_runs = s.outcomes.size();
    std::size_t successes = 0;
    for (const auto &v : pis) {
        successes += v.size();
    }
    s.failures = s.n_runs - successes;
    if (successes == 0) {
        throw std::runtime_error(fmt::format("mc: all {} runs failed; first error: {}", s.n_runs,
                                             s.outcomes.front().error));
    }
    s.mean_pi = pooled_mean(pis);
    s.mean_dt = pooled_mean(dts);
    s.mean_I = pooled_mean(integrals);
    s.std_pi = pooled_std(pis);
    s.std_dt = pooled_std(dts);
    s.std_I = pooled_std(integrals);
    return s;
}

std::vector<NoiseModeld> models_from_datasets(const std::vector<Dataset> &datasets, const EstimateConfig &cfg) {
    std::vector<NoiseModeld> models;
    models.reserve(datasets.size());
    for (std::size_t i = 0; i < datasets.size(); ++i) {
        const Dataset &ds = datasets[i];
        const std::string name = ds.label().empty() ? fmt::format("#{}", i) : ds.label();
        const ScreenVerdict verdict = screen_dataset(ds);
        if (!verdict.accepted) {
            throw std::runtime_error(fmt::format("dataset {} failed screening: {}", name, verdict.reason));
        }
        EstimateResult r;
        try {
            r = estimate_pi(ds, cfg);
        } catch (const std::exception &e) {
            throw std::runtime_error(fmt::format("dataset {}: {}", name, e.what()));
        }
        NoiseModeld m;
        m.alpha = r.alpha_hat;
        m.beta = r.beta_hat;
        m.c = r.c_hat;
        m.phi0 = std::numbers::pi / 2.0 - m.c * r.t1_hat;
        if (!m.valid()) {
            throw std::runtime_error(fmt::format("dataset {}: recovered model is not a valid noise model", name));
        }
        models.push_back(m);
    }
    return models;
}

AggregateReport aggregate(std::vector<std::pair<std::string, EstimateResult>> results, double sigma) {
    if (results.empty()) {
        throw std::invalid_argument("aggregate: no results");
    }
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("aggregate: sigma must be positive");
    }
    AggregateReport rep;
    double sum = 0.0;
    for (const auto &[label, r] : results) {
        sum += r.pi_hat;
    }
    rep.mean_pi = sum / static_cast<double>(results.size());
    rep.per_qubit = std::move(results);
    rep.sigma = sigma;
    rep.error_bar = 2.0 * sigma;
    rep.sigma_source = "Monte Carlo standard deviation of a single-run estimate (not divided by sqrt(n_qubits))";
    return rep;
}

}  // namespace rabipi
