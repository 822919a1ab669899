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

#ifndef RABIPI_SIMULATE_H
#define RABIPI_SIMULATE_H

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rabipi/curve.h"
#include "rabipi/model.h"

namespace rabipi {

/// Uniform grid {start, start + step, ...} up to the largest point not
/// exceeding stop + step / 2. Points are snapped to 10 significant decimal
/// digits so that 0.1-style grids serialize as short decimals.
class TimeGrid {
  public:
    TimeGrid(double start, double stop, double step);

    static TimeGrid standard() { return TimeGrid(0.0, 6.3, 0.1); }

    double start() const { return start_; }
    double stop() const { return stop_; }
    double step() const { return step_; }
    Eigen::Index size() const { return points_.size(); }
    const Eigen::ArrayXd &points() const { return points_; }

  private:
    double start_;
    double stop_;
    double step_;
    Eigen::ArrayXd points_;
};

inline TimeGrid make_grid(double start, double stop, double step) { return TimeGrid(start, stop, step); }

struct ShotRecord {
    double t = 0.0;
    std::int64_t shots = 1;
    std::int64_t ones = 0;

    double fraction() const { return static_cast<double>(ones) / static_cast<double>(shots); }
    bool operator==(const ShotRecord &) const = default;
};

/// Measurement counts for one qubit, ordered by strictly increasing time.
class Dataset {
  public:
    Dataset(std::vector<ShotRecord> records, std::string label = {});

    const std::vector<ShotRecord> &records() const { return records_; }
    const std::string &label() const { return label_; }
    std::size_t size() const { return records_.size(); }

    Eigen::ArrayXd times() const;
    Eigen::ArrayXd fractions() const;
    /// Fractions f(t) as a sampled curve.
    Curve<double> fraction_curve() const;

    bool operator==(const Dataset &) const = default;

  private:
    std::vector<ShotRecord> records_;
    std::string label_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed of an independent stream identified by `keys` under `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys);

/// Draws ones ~ Binomial(shots, P(t)) at every grid time. The draw for the
/// i-th grid time uses its own generator seeded from (seed, i).
Dataset sample_dataset(const NoiseModeld &model, const TimeGrid &grid, std::int64_t shots, std::uint64_t seed,
                       std::string label = {});

/// Shifts every fraction with t >= t_jump by `offset` (counts are rounded and
/// clamped to [0, shots]).
Dataset inject_step(const Dataset &ds, double t_jump, double offset);

}  // namespace rabipi

#endif  // RABIPI_SIMULATE_H
