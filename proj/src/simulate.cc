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

#include "rabipi/simulate.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <system_error>

namespace rabipi {

namespace {

// Nearest double to x rounded at decimal exponent `exponent`.
double snap_decimal(double x, int exponent) {
    const long long mantissa = std::llround(x * std::pow(10.0, -exponent));
    const std::string text = std::to_string(mantissa) + "e" + std::to_string(exponent);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc{}) {
        return x;
    }
    return out;
}

}  // namespace

TimeGrid::TimeGrid(double start, double stop, double step) : start_(start), stop_(stop), step_(step) {
    if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
        throw std::invalid_argument("grid: bounds and step must be finite");
    }
    if (!(step > 0.0)) {
        throw std::invalid_argument("grid: step must be positive");
    }
    if (!(stop > start)) {
        throw std::invalid_argument("grid: stop must exceed start");
    }
    const auto n = static_cast<Eigen::Index>(std::floor((stop - start) / step + 0.5)) + 1;
    const double scale = std::max({std::abs(start), std::abs(stop), step});
    const int exponent = static_cast<int>(std::floor(std::log10(scale))) - 9;
    points_.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        points_[i] = snap_decimal(start + static_cast<double>(i) * step, exponent);
    }
}

Dataset::Dataset(std::vector<ShotRecord> records, std::string label)
    : records_(std::move(records)), label_(std::move(label)) {
    if (records_.size() < 2) {
        throw std::invalid_argument("dataset: need at least 2 records");
    }
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const ShotRecord &r = records_[i];
        if (!std::isfinite(r.t)) {
            throw std::invalid_argument("dataset: non-finite time in record " + std::to_string(i));
        }
        if (r.shots < 1 || r.ones < 0 || r.ones > r.shots) {
            throw std::invalid_argument("dataset: need 0 <= ones <= shots and shots >= 1 in record " +
                                        std::to_string(i));
        }
        if (i > 0 && !(r.t > records_[i - 1].t)) {
            throw std::invalid_argument("dataset: times must be strictly increasing at record " + std::to_string(i));
        }
    }
}

Eigen::ArrayXd Dataset::times() const {
    Eigen::ArrayXd t(static_cast<Eigen::Index>(records_.size()));
    for (std::size_t i = 0; i < records_.size(); ++i) {
        t[static_cast<Eigen::Index>(i)] = records_[i].t;
    }
    return t;
}

Eigen::ArrayXd Dataset::fractions() const {
    Eigen::ArrayXd f(static_cast<Eigen::Index>(records_.size()));
    for (std::size_t i = 0; i < records_.size(); ++i) {
        f[static_cast<Eigen::Index>(i)] = records_[i].fraction();
    }
    return f;
}

Curve<double> Dataset::fraction_curve() const { return Curve<double>(times(), fractions()); }

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
    std::uint64_t h = mix64(seed);
    for (std::uint64_t k : keys) {
        h = mix64(h ^ mix64(k));
    }
    return h;
}

Dataset sample_dataset(const NoiseModeld &model, const TimeGrid &grid, std::int64_t shots, std::uint64_t seed,
                       std::string label) {
    model.check();
    if (shots < 1) {
        throw std::invalid_argument("sample_dataset: shots must be >= 1");
    }
    const Eigen::ArrayXd p = noisy_prob(model, grid.points());
    std::vector<ShotRecord> records;
    records.reserve(static_cast<std::size_t>(grid.size()));
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        std::mt19937_64 gen(derive_seed(seed, {static_cast<std::uint64_t>(i)}));
        const double prob = std::clamp(p[i], 0.0, 1.0);
        std::binomial_distribution<std::int64_t> draw(shots, prob);
        records.push_back({grid.points()[i], shots, draw(gen)});
    }
    return Dataset(std::move(records), std::move(label));
}

Dataset inject_step(const Dataset &ds, double t_jump, double offset) {
    const auto &in = ds.records();
    if (!(t_jump >= in.front().t && t_jump <= in.back().t)) {
        throw std::out_of_range("inject_step: t_jump outside the dataset time range");
    }
    std::vector<ShotRecord> out = in;
    for (ShotRecord &r : out) {
        if (r.t >= t_jump) {
            const double shifted = std::round(static_cast<double>(r.ones) + offset * static_cast<double>(r.shots));
            r.ones = static_cast<std::int64_t>(std::clamp(shifted, 0.0, static_cast<double>(r.shots)));
        }
    }
    return Dataset(std::move(out), ds.label());
}

}  // namespace rabipi
