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

#include "rabipi/io.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include <fmt/format.h>

namespace rabipi {

CsvError::CsvError(std::size_t line, const std::string &message)
    : std::runtime_error(line ? fmt::format("line {}: {}", line, message) : message), line_(line) {}

namespace {

constexpr std::string_view kHeader = "t,shots,ones";
constexpr std::string_view kLabelPrefix = "# label:";

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_field(std::string_view field, std::size_t line, const char *name) {
    field = trim(field);
    T value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
        throw CsvError(line, fmt::format("field '{}' is not a valid number: '{}'", name, field));
    }
    return value;
}

std::string shortest(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

}  // namespace

Dataset parse_csv(std::string_view text, std::string fallback_label) {
    std::string label = std::move(fallback_label);
    std::vector<ShotRecord> records;
    bool seen_header = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.starts_with('#')) {
            if (!seen_header && records.empty() && line.starts_with(kLabelPrefix)) {
                label = std::string(trim(line.substr(kLabelPrefix.size())));
            }
            continue;
        }
        if (trim(line).empty()) {
            continue;
        }
        if (!seen_header) {
            if (trim(line) != kHeader) {
                throw CsvError(line_no, fmt::format("expected header '{}', got '{}'", kHeader, line));
            }
            seen_header = true;
            continue;
        }

        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
            throw CsvError(line_no, "expected 3 comma-separated fields");
        }
        ShotRecord r;
        r.t = parse_field<double>(line.substr(0, c1), line_no, "t");
        r.shots = parse_field<std::int64_t>(line.substr(c1 + 1, c2 - c1 - 1), line_no, "shots");
        r.ones = parse_field<std::int64_t>(line.substr(c2 + 1), line_no, "ones");
        if (!std::isfinite(r.t)) {
            throw CsvError(line_no, "time is not finite");
        }
        if (r.shots < 1) {
            throw CsvError(line_no, "shots must be >= 1");
        }
        if (r.ones < 0) {
            throw CsvError(line_no, "ones must be >= 0");
        }
        if (r.ones > r.shots) {
            throw CsvError(line_no, fmt::format("ones > shots ({} > {})", r.ones, r.shots));
        }
        if (!records.empty() && !(r.t > records.back().t)) {
            throw CsvError(line_no, fmt::format("non-increasing time {} after {}", r.t, records.back().t));
        }
        records.push_back(r);
    }
    if (!seen_header) {
        throw CsvError(0, fmt::format("missing header '{}'", kHeader));
    }
    if (records.size() < 2) {
        throw CsvError(0, "need at least 2 data rows");
    }
    return Dataset(std::move(records), std::move(label));
}

std::string write_csv(const Dataset &ds) {
    std::string out;
    if (!ds.label().empty()) {
        out += fmt::format("{} {}\n", kLabelPrefix, ds.label());
    }
    out += kHeader;
    out += '\n';
    for (const ShotRecord &r : ds.records()) {
        out += fmt::format("{},{},{}\n", shortest(r.t), r.shots, r.ones);
    }
    return out;
}

Dataset read_csv_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open '{}'", path));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string stem = path;
    if (const auto slash = stem.find_last_of('/'); slash != std::string::npos) {
        stem = stem.substr(slash + 1);
    }
    try {
        return parse_csv(buf.str(), stem);
    } catch (const CsvError &e) {
        throw CsvError(e.line(), fmt::format("{}: {}", path, e.what()));
    }
}

void write_text_file(const std::string &path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error(fmt::format("cannot write '{}'", path));
    }
    out << text;
    if (!out) {
        throw std::runtime_error(fmt::format("write to '{}' failed", path));
    }
}

std::string render_svg(const Dataset &ds, const std::optional<NoiseModeld> &model,
                       const std::optional<EstimateResult> &result) {
    constexpr double kWidth = 640, kHeight = 400;
    constexpr double kLeft = 60, kRight = 20, kTop = 30, kBottom = 50;
    const double t_lo = ds.records().front().t;
    const double t_hi = ds.records().back().t;
    const auto x_of = [&](double t) { return kLeft + (t - t_lo) / (t_hi - t_lo) * (kWidth - kLeft - kRight); };
    const auto y_of = [&](double f) { return kHeight - kBottom - f * (kHeight - kTop - kBottom); };

    std::string svg;
    svg += fmt::format(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n",
        kWidth, kHeight);
    svg += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!ds.label().empty()) {
        std::string escaped;
        for (char ch : ds.label()) {
            switch (ch) {
                case '<': escaped += "&lt;"; break;
                case '>': escaped += "&gt;"; break;
                case '&': escaped += "&amp;"; break;
                case '"': escaped += "&quot;"; break;
                default: escaped += ch;
            }
        }
        svg += fmt::format("<text class=\"title\" x=\"{:.2f}\" y=\"20\" text-anchor=\"middle\">{}</text>\n",
                           kWidth / 2, escaped);
    }

    // Axes with ticks at 0, 0.5, 1 and at integer times.
    svg += fmt::format("<line class=\"axis\" x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"black\"/>\n",
                       kLeft, kHeight - kBottom, kWidth - kRight);
    svg += fmt::format("<line class=\"axis\" x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>\n",
                       kLeft, kHeight - kBottom, kTop);
    for (double f : {0.0, 0.5, 1.0}) {
        svg += fmt::format("<text class=\"tick\" x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\" font-size=\"11\">{:g}</text>\n",
                           kLeft - 6, y_of(f) + 4, f);
    }
    for (double t = std::ceil(t_lo); t <= t_hi; t += 1.0) {
        svg += fmt::format("<text class=\"tick\" x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"11\">{:g}</text>\n",
                           x_of(t), kHeight - kBottom + 16, t);
    }
    svg += fmt::format("<text class=\"xlabel\" x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">rotation angle t</text>\n",
                       (kLeft + kWidth - kRight) / 2, kHeight - 10);
    svg += fmt::format(
        "<text class=\"ylabel\" x=\"15\" y=\"{0:.2f}\" text-anchor=\"middle\" transform=\"rotate(-90 15 {0:.2f})\">"
        "fraction of |1⟩</text>\n",
        (kTop + kHeight - kBottom) / 2);

    if (result) {
        svg += fmt::format(
            "<line class=\"guide\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"gray\" "
            "stroke-dasharray=\"4 3\"/>\n",
            kLeft, y_of(0.5), kWidth - kRight, y_of(0.5));
        for (double t : {result->t1_hat, result->t2_hat}) {
            const double x = x_of(std::clamp(t, t_lo, t_hi));
            svg += fmt::format(
                "<line class=\"crossing\" x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"red\"/>\n",
                x, kHeight - kBottom, kTop);
        }
    }
    if (model) {
        constexpr int kSamples = 200;
        svg += "<polyline class=\"model\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
        for (int i = 0; i < kSamples; ++i) {
            const double t = t_lo + (t_hi - t_lo) * static_cast<double>(i) / (kSamples - 1);
            svg += fmt::format("{}{:.2f},{:.2f}", i ? " " : "", x_of(t), y_of(noisy_prob(*model, t)));
        }
        svg += "\"/>\n";
    }
    for (const ShotRecord &r : ds.records()) {
        svg += fmt::format("<circle class=\"point\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2.5\" fill=\"black\"/>\n",
                           x_of(r.t), y_of(r.fraction()));
    }
    svg += "</svg>\n";
    return svg;
}

std::string format_estimate(const EstimateResult &r) {
    std::string out;
    const auto field = [&](std::string_view name, double v) { out += fmt::format("{} = {:.17g}\n", name, v); };
    field("pi_hat", r.pi_hat);
    field("t1_hat", r.t1_hat);
    field("t2_hat", r.t2_hat);
    field("integral_I", r.integral_I);
    field("c_hat", r.c_hat);
    field("alpha_hat", r.alpha_hat);
    field("beta_hat", r.beta_hat);
    field("t1_rough", r.t1_rough);
    field("t2_rough", r.t2_rough);
    field("t_minval", r.t_minval);
    field("t_maxval", r.t_maxval);
    return out;
}

std::string format_mc_summary(const McSummary &s) {
    return fmt::format(
        "runs         {}\n"
        "failures     {}\n"
        "mean pi      {:.4f}\n"
        "std pi       {:.4f}\n"
        "std t2-t1    {:.4f}\n"
        "std I        {:.4f}\n",
        s.n_runs, s.failures, s.mean_pi, s.std_pi, s.std_dt, s.std_I);
}

std::string format_report(const ReportDocument &doc) {
    std::string out;
    out += "== input ==\n";
    for (const QubitReport &q : doc.qubits) {
        out += fmt::format("{:<12} records={} shots={}\n", q.label, q.records, q.shots);
    }

    out += "\n== screening ==\n";
    for (const QubitReport &q : doc.qubits) {
        if (q.verdict.accepted) {
            out += fmt::format("{:<12} accept (c={:.4f})\n", q.label, q.verdict.c_used);
        } else if (q.verdict.location) {
            out += fmt::format("{:<12} reject at t={:.4f}: {}\n", q.label, *q.verdict.location, q.verdict.reason);
        } else {
            out += fmt::format("{:<12} reject: {}\n", q.label, q.verdict.reason);
        }
    }

    out += "\n== estimates ==\n";
    out += fmt::format("{:<12} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}\n", "label", "pi_hat", "t1", "t2", "I", "c",
                       "alpha", "beta");
    for (const QubitReport &q : doc.qubits) {
        if (q.estimate) {
            const EstimateResult &r = *q.estimate;
            out += fmt::format("{:<12} {:>8.4f} {:>8.4f} {:>8.4f} {:>8.4f} {:>8.4f} {:>8.4f} {:>8.4f}\n", q.label,
                               r.pi_hat, r.t1_hat, r.t2_hat, r.integral_I, r.c_hat, r.alpha_hat, r.beta_hat);
        } else if (!q.error.empty()) {
            out += fmt::format("{:<12} failed: {}\n", q.label, q.error);
        } else {
            out += fmt::format("{:<12} skipped\n", q.label);
        }
    }

    if (doc.mc) {
        out += "\n== monte carlo ==\n";
        if (doc.mc_config) {
            out += fmt::format("runs per model {}, shots {}, seed {}\n", doc.mc_config->runs_per_model,
                               doc.mc_config->shots, doc.mc_config->base_seed);
        }
        out += format_mc_summary(*doc.mc);
    }

    if (doc.aggregate) {
        const AggregateReport &a = *doc.aggregate;
        out += "\n== result ==\n";
        out += fmt::format("pi = {:.4f} +/- {:.4f} (2 sigma, sigma = {:.4f}, {} qubits)\n", a.mean_pi, a.error_bar,
                           a.sigma, a.per_qubit.size());
        out += fmt::format("sigma: {}\n", a.sigma_source);
    }
    return out;
}

}  // namespace rabipi
