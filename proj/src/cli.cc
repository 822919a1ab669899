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

#include "rabipi/cli.h"

#include <cstdint>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rabipi/estimate.h"
#include "rabipi/fit.h"
#include "rabipi/io.h"
#include "rabipi/montecarlo.h"
#include "rabipi/screen.h"
#include "rabipi/simulate.h"

namespace rabipi {

namespace {

struct GridFlags {
    double start = 0.0;
    double stop = 6.3;
    double step = 0.1;

    void add(CLI::App *app) {
        app->add_option("--grid-start", start, "first time instant")->capture_default_str();
        app->add_option("--grid-stop", stop, "last time instant")->capture_default_str();
        app->add_option("--grid-step", step, "time step")->capture_default_str();
    }
    TimeGrid grid() const { return TimeGrid(start, stop, step); }
};

struct ModelFlags {
    NoiseModeld model;

    void add(CLI::App *app) {
        app->add_option("--alpha", model.alpha, "amplitude")->capture_default_str();
        app->add_option("--beta", model.beta, "offset")->capture_default_str();
        app->add_option("--phi0", model.phi0, "phase offset (rad)")->capture_default_str();
        app->add_option("--c", model.c, "angular rate")->capture_default_str();
    }
};

void add_estimate_flags(CLI::App *app, EstimateConfig &cfg) {
    app->add_option("--delta", cfg.delta, "half-width of the extremum windows")->capture_default_str();
    app->add_option("--root-start1", cfg.root_start_1, "start of the first crossing search")->capture_default_str();
    app->add_option("--root-start2", cfg.root_start_2, "start of the second crossing search")->capture_default_str();
    app->add_option("--window", cfg.refine_window, "half-width of the linear refinement window")
        ->capture_default_str();
}

void emit(std::ostream &out, const std::string &path, const std::string &text) {
    if (path.empty()) {
        out << text;
    } else {
        write_text_file(path, text);
    }
}

std::string format_model(const NoiseModeld &m) {
    return fmt::format("alpha = {:.17g}\nbeta = {:.17g}\nphi0 = {:.17g}\nc = {:.17g}\n", m.alpha, m.beta, m.phi0,
                       m.c);
}

std::vector<Dataset> read_all(const std::vector<std::string> &paths) {
    std::vector<Dataset> out;
    for (const auto &p : paths) {
        out.push_back(read_csv_file(p));
    }
    return out;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Estimate pi from simulated or measured Rabi oscillation fractions.", "rabipi"};
    app.require_subcommand(1);

    GridFlags grid;
    ModelFlags model;
    EstimateConfig est;
    std::int64_t shots = 8192;
    std::uint64_t seed = 0;
    int runs = 50;
    unsigned threads = 0;
    std::string out_path;
    std::string label;
    std::vector<std::string> inputs;
    std::optional<double> inject_t;
    double inject_offset = 0.0;
    bool no_fit = false;

    auto *simulate = app.add_subcommand("simulate", "sample a synthetic dataset and write it as CSV");
    model.add(simulate);
    grid.add(simulate);
    simulate->add_option("--shots", shots, "measurements per time instant")->capture_default_str();
    simulate->add_option("--seed", seed, "random seed")->capture_default_str();
    simulate->add_option("--label", label, "dataset label");
    simulate->add_option("--inject-t", inject_t, "add a level shift from this time on");
    simulate->add_option("--inject-offset", inject_offset, "size of the level shift (fraction)");
    simulate->add_option("--out", out_path, "output CSV (default stdout)");

    auto *estimate = app.add_subcommand("estimate", "run the estimation pipeline on CSV datasets");
    estimate->add_option("inputs", inputs, "CSV files")->required();
    add_estimate_flags(estimate, est);
    estimate->add_option("--out", out_path, "write the results here instead of stdout");

    auto *fit = app.add_subcommand("fit", "least-squares fit of the four-parameter model");
    fit->add_option("inputs", inputs, "CSV files")->required();
    fit->add_option("--out", out_path, "write the results here instead of stdout");

    auto *screen = app.add_subcommand("screen", "flag datasets with unexplained level shifts");
    screen->add_option("inputs", inputs, "CSV files")->required();
    screen->add_option("--out", out_path, "write the verdicts here instead of stdout");

    auto *mc = app.add_subcommand("mc", "Monte Carlo spread of the estimator");
    model.add(mc);
    grid.add(mc);
    add_estimate_flags(mc, est);
    mc->add_option("--from", inputs, "derive models from these CSV datasets instead of the model flags");
    mc->add_option("--runs", runs, "runs per model")->capture_default_str();
    mc->add_option("--shots", shots, "measurements per time instant")->capture_default_str();
    mc->add_option("--seed", seed, "base seed")->capture_default_str();
    mc->add_option("--threads", threads, "worker threads (0: all cores)")->capture_default_str();
    mc->add_option("--out", out_path, "write the summary here instead of stdout");

    auto *plot = app.add_subcommand("plot", "render a dataset, its fitted curve and crossings as SVG");
    plot->add_option("input", inputs, "CSV file")->required()->expected(1);
    add_estimate_flags(plot, est);
    plot->add_flag("--no-fit", no_fit, "plot the points only");
    plot->add_option("--out", out_path, "output SVG (default stdout)");

    auto *report = app.add_subcommand("report", "screen, estimate, Monte Carlo and aggregate over datasets");
    report->add_option("inputs", inputs, "CSV files, one per qubit")->required();
    add_estimate_flags(report, est);
    grid.add(report);
    report->add_option("--runs", runs, "Monte Carlo runs per model")->capture_default_str();
    report->add_option("--shots", shots, "Monte Carlo measurements per time instant")->capture_default_str();
    report->add_option("--seed", seed, "Monte Carlo base seed")->capture_default_str();
    report->add_option("--threads", threads, "worker threads (0: all cores)")->capture_default_str();
    report->add_option("--out", out_path, "write the report here instead of stdout");

    std::vector<const char *> argv{"rabipi"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (simulate->parsed()) {
            Dataset ds = sample_dataset(model.model, grid.grid(), shots, seed, label);
            if (inject_t) {
                ds = inject_step(ds, *inject_t, inject_offset);
            }
            emit(out, out_path, write_csv(ds));
            if (!out_path.empty()) {
                out << fmt::format("wrote {} ({} records, seed {})\n", out_path, ds.size(), seed);
            }
        } else if (estimate->parsed()) {
            std::string text;
            for (const Dataset &ds : read_all(inputs)) {
                text += fmt::format("[{}]\n{}", ds.label(), format_estimate(estimate_pi(ds, est)));
            }
            emit(out, out_path, text);
        } else if (fit->parsed()) {
            std::string text;
            for (const Dataset &ds : read_all(inputs)) {
                FitResult fr;
                try {
                    fr = fit_model(ds);
                } catch (const FitNotConverged &e) {
                    err << fmt::format("warning: {}: {}; reporting best model found\n", ds.label(), e.what());
                    fr = e.best();
                }
                text += fmt::format("[{}]\n{}residual = {:.6g}\n", ds.label(), format_model(fr.model), fr.residual);
            }
            emit(out, out_path, text);
        } else if (screen->parsed()) {
            std::string text;
            for (const Dataset &ds : read_all(inputs)) {
                const ScreenVerdict v = screen_dataset(ds);
                text += v.accepted ? fmt::format("{}: accept\n", ds.label())
                                   : fmt::format("{}: reject: {}\n", ds.label(), v.reason);
            }
            emit(out, out_path, text);
        } else if (mc->parsed()) {
            const std::vector<NoiseModeld> models =
                inputs.empty() ? std::vector<NoiseModeld>{model.model} : models_from_datasets(read_all(inputs), est);
            McConfig cfg;
            cfg.runs_per_model = runs;
            cfg.shots = shots;
            cfg.grid = grid.grid();
            cfg.base_seed = seed;
            cfg.estimate = est;
            cfg.threads = threads;
            const McSummary s = run_mc(models, cfg);
            std::string text = fmt::format("models {}, runs per model {}, shots {}, seed {}\n", models.size(), runs,
                                           shots, seed);
            text += format_mc_summary(s);
            emit(out, out_path, text);
        } else if (plot->parsed()) {
            const Dataset ds = read_csv_file(inputs.front());
            std::optional<NoiseModeld> fitted;
            std::optional<EstimateResult> result;
            if (!no_fit) {
                try {
                    fitted = fit_model(ds).model;
                } catch (const FitNotConverged &e) {
                    fitted = e.best().model;
                }
                try {
                    result = estimate_pi(ds, est);
                } catch (const EstimateError &e) {
                    err << fmt::format("warning: {}: {}\n", ds.label(), e.what());
                }
            }
            emit(out, out_path, render_svg(ds, fitted, result));
        } else if (report->parsed()) {
            const std::vector<Dataset> datasets = read_all(inputs);
            ReportDocument doc;
            std::vector<Dataset> accepted;
            std::vector<std::pair<std::string, EstimateResult>> results;
            for (const Dataset &ds : datasets) {
                QubitReport q;
                q.label = ds.label();
                q.records = ds.size();
                q.shots = ds.records().front().shots;
                q.verdict = screen_dataset(ds);
                if (q.verdict.accepted) {
                    try {
                        q.estimate = estimate_pi(ds, est);
                        accepted.push_back(ds);
                        results.emplace_back(q.label, *q.estimate);
                    } catch (const std::exception &e) {
                        q.error = e.what();
                    }
                }
                doc.qubits.push_back(std::move(q));
            }
            if (!accepted.empty()) {
                McConfig cfg;
                cfg.runs_per_model = runs;
                cfg.shots = shots;
                cfg.grid = grid.grid();
                cfg.base_seed = seed;
                cfg.estimate = est;
                cfg.threads = threads;
                doc.mc = run_mc(models_from_datasets(accepted, est), cfg);
                doc.mc_config = cfg;
                doc.aggregate = aggregate(results, doc.mc->std_pi);
            }
            emit(out, out_path, format_report(doc));
            if (accepted.empty()) {
                err << "error: no dataset passed screening and estimation\n";
                return 1;
            }
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace rabipi
