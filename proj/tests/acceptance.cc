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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "rabipi/curve.h"
#include "rabipi/estimate.h"
#include "rabipi/io.h"
#include "rabipi/model.h"
#include "rabipi/montecarlo.h"
#include "rabipi/screen.h"
#include "rabipi/simulate.h"

using namespace rabipi;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass;
    std::string detail;
};

Curve<double> exact_fractions(const NoiseModeld &m) {
    const TimeGrid g = TimeGrid::standard();
    return Curve<double>(g.points(), noisy_prob(m, g.points()));
}

McConfig mc_config(int runs, std::uint64_t seed) {
    McConfig cfg;
    cfg.runs_per_model = runs;
    cfg.shots = 8192;
    cfg.base_seed = seed;
    return cfg;
}

Outcome trapezoid_benchmark() {
    const double v = trapezoid_integral(exact_fractions(NoiseModeld::ideal()), kPi / 2, 3 * kPi / 2, 0.5);
    return {std::abs(v - 0.99917) <= 1e-4, fmt::format("I = {:.6f} (target 0.99917 +/- 1e-4)", v)};
}

Outcome ideal_mc_sigma() {
    const McSummary s = run_mc({NoiseModeld::ideal()}, mc_config(150, 20240101));
    const bool ok = s.n_runs == 150 && s.std_I >= 0.0018 && s.std_I <= 0.0029;
    return {ok, fmt::format("std_I = {:.5f} over {} runs, {} failures (band [0.0018, 0.0029])", s.std_I, s.n_runs,
                            s.failures)};
}

Outcome noisy_mc_plausibility() {
    const NoiseModeld noisy{0.9, 0.05, 0.0, 1.0};
    const McSummary s = run_mc({noisy}, mc_config(150, 20240102));
    const bool ok = s.std_dt >= 0.004 && s.std_dt <= 0.018 && s.std_I >= 0.003 && s.std_I <= 0.012;
    return {ok, fmt::format("std_dt = {:.5f} (band [0.004, 0.018]), std_I = {:.5f} (band [0.003, 0.012])", s.std_dt,
                            s.std_I)};
}

Outcome end_to_end_accuracy() {
    const McSummary s = run_mc({NoiseModeld::ideal()}, mc_config(150, 20240103));
    const double mean_tol = 2 * s.std_pi / std::sqrt(150.0) + 0.005;
    std::size_t ok_runs = 0, total = 0;
    for (const RunOutcome &o : s.outcomes) {
        if (o.ok) {
            ++total;
            ok_runs += std::abs(o.result.pi_hat - kPi) <= 2 * s.std_pi;
        }
    }
    const double frac = static_cast<double>(ok_runs) / static_cast<double>(total);
    const bool ok = std::abs(s.mean_pi - kPi) <= mean_tol && frac >= 0.93;
    return {ok, fmt::format("mean_pi = {:.5f}, |mean - pi| = {:.5f} <= {:.5f}; std_pi = {:.5f}; "
                            "{:.1f}% of runs within 2 std (need >= 93%)",
                            s.mean_pi, std::abs(s.mean_pi - kPi), mean_tol, s.std_pi, 100 * frac)};
}

Outcome noiseless_bias() {
    const EstimateResult r = estimate_pi(exact_fractions(NoiseModeld::ideal()));
    // Independent numpy oracle of the same steps: 3.141075423157013.
    const bool ok = r.pi_hat >= 3.13 && r.pi_hat <= 3.16 && std::abs(r.pi_hat - 3.141075423157013) <= 1e-8;
    return {ok, fmt::format("pi_hat = {:.9f} (band [3.13, 3.16]; oracle 3.141075423)", r.pi_hat)};
}

Outcome invariant_suite() {
    std::vector<std::string> failed;
    const EstimateResult base = estimate_pi(exact_fractions(NoiseModeld::ideal()));

    double worst_affine = 0;
    for (int i = 0; i <= 10; ++i) {
        for (int j = 0; j <= 10; ++j) {
            const NoiseModeld m{0.8 + 0.02 * i, 0.01 * j, 0.0, 1.0};
            if (!m.valid()) {
                continue;
            }
            worst_affine = std::max(worst_affine, std::abs(estimate_pi(exact_fractions(m)).pi_hat - base.pi_hat));
        }
    }
    if (worst_affine > 0.01) {
        failed.push_back(fmt::format("affine {:.4g}", worst_affine));
    }

    double worst_phase = 0;
    for (int i = -20; i <= 20; ++i) {
        const EstimateResult r = estimate_pi(exact_fractions({1.0, 0.0, 0.005 * i, 1.0}));
        worst_phase = std::max(worst_phase, std::abs((r.t2_hat - r.t1_hat) - (base.t2_hat - base.t1_hat)));
    }
    if (worst_phase > 0.005) {
        failed.push_back(fmt::format("phase {:.4g}", worst_phase));
    }

    double worst_residual = 0;
    bool fixed_points = true;
    bool round_trip = true;
    std::mt19937_64 rng(77);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Dataset ds = sample_dataset({0.9, 0.05, 0.02, 1.0}, TimeGrid::standard(), 8192, rng(), "q");
        const NormalizedCurve f1 = normalize(ds, rough_alpha_beta(ds));
        const AlphaBeta unit = rough_alpha_beta(f1);
        fixed_points = fixed_points && unit.beta == 0.0 && std::abs(unit.alpha - 1.0) <= 1e-15;
        for (double start : {1.5, 4.5}) {
            const double t = find_crossing(f1, start, 0.5);
            worst_residual = std::max(worst_residual, std::abs(interpolate(f1, t) - 0.5));
        }
        round_trip = round_trip && parse_csv(write_csv(ds)) == ds;
    }
    if (!fixed_points) {
        failed.push_back("normalization fixed points");
    }
    if (worst_residual > 1e-9) {
        failed.push_back(fmt::format("crossing residual {:.3g}", worst_residual));
    }
    if (!round_trip) {
        failed.push_back("csv round trip");
    }

    std::vector<NoiseModeld> models{{0.9, 0.05, 0.0, 1.0}, {0.85, 0.08, 0.03, 1.0}, {0.95, 0.02, -0.02, 1.0}};
    const McSummary a = run_mc(models, mc_config(20, 9));
    const McSummary b = run_mc(models, mc_config(20, 9));
    std::reverse(models.begin(), models.end());
    const McSummary c = run_mc(models, mc_config(20, 9));
    if (!(a.std_pi == b.std_pi && a.std_dt == b.std_dt && a.std_I == b.std_I && a.mean_pi == b.mean_pi)) {
        failed.push_back("mc determinism");
    }
    if (!(a.std_pi == c.std_pi && a.std_dt == c.std_dt && a.std_I == c.std_I)) {
        failed.push_back("mc order independence");
    }

    std::string detail = fmt::format("affine {:.2e} <= 0.01, phase {:.2e} <= 0.005, residual {:.1e} <= 1e-9",
                                     worst_affine, worst_phase, worst_residual);
    for (const auto &f : failed) {
        detail += "; FAILED " + f;
    }
    return {failed.empty(), detail};
}

Outcome screening() {
    const Dataset base = sample_dataset(NoiseModeld::ideal(), TimeGrid::standard(), 8192, 4, "q5");
    const ScreenVerdict jump = screen_dataset(inject_step(base, 4.0, 0.15));
    const bool jump_ok = !jump.accepted && jump.location && std::abs(*jump.location - 4.0) <= 0.2;

    int false_rejects = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        false_rejects += !screen_dataset(sample_dataset(NoiseModeld::ideal(), TimeGrid::standard(), 8192,
                                                        1000 + seed))
                               .accepted;
    }
    return {jump_ok && false_rejects <= 1,
            fmt::format("0.15 step at t=4: {} at t={}; clean false rejections {}/50 (allowed 1)",
                        jump.accepted ? "accepted" : "rejected",
                        jump.location ? fmt::format("{:.2f}", *jump.location) : std::string("-"), false_rejects)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"AC1 trapezoid benchmark", trapezoid_benchmark},
        {"AC2 ideal-case Monte Carlo sigma", ideal_mc_sigma},
        {"AC3 noisy-case plausibility", noisy_mc_plausibility},
        {"AC4 end-to-end accuracy", end_to_end_accuracy},
        {"AC5 noiseless pipeline bias", noiseless_bias},
        {"AC6 invariant suite", invariant_suite},
        {"AC7 screening", screening},
    };
    int failures = 0;
    for (const auto &[name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception &e) {
            o = {false, fmt::format("exception: {}", e.what())};
        }
        failures += !o.pass;
        fmt::print("[{}] {}: {}\n", o.pass ? "PASS" : "FAIL", name, o.detail);
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
    return failures == 0 ? 0 : 1;
}
