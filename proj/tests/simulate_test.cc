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

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

using namespace rabipi;

TEST(TimeGrid, standard_grid_has_64_points) {
    const TimeGrid g = make_grid(0, 6.3, 0.1);
    ASSERT_EQ(g.size(), 64);
    EXPECT_EQ(g.points()[0], 0.0);
    EXPECT_EQ(g.points()[63], 6.3);
    // Snapped to the decimal grid, not accumulated.
    EXPECT_EQ(g.points()[3], 0.3);
    EXPECT_EQ(g.points()[7], 0.7);
}

TEST(TimeGrid, small_grids) {
    const TimeGrid g = make_grid(0, 1, 0.5);
    ASSERT_EQ(g.size(), 3);
    EXPECT_EQ(g.points()[0], 0.0);
    EXPECT_EQ(g.points()[1], 0.5);
    EXPECT_EQ(g.points()[2], 1.0);
    // Last point is the largest one not beyond stop + step / 2.
    EXPECT_EQ(make_grid(0, 1.2, 0.5).size(), 3);
    EXPECT_EQ(make_grid(0, 1.3, 0.5).size(), 4);
    EXPECT_EQ(make_grid(-0.3, 0.3, 0.1).points()[3], 0.0);
}

TEST(TimeGrid, rejects_bad_bounds) {
    EXPECT_THROW(make_grid(0, 1, -0.1), std::invalid_argument);
    EXPECT_THROW(make_grid(0, 1, 0), std::invalid_argument);
    EXPECT_THROW(make_grid(1, 1, 0.1), std::invalid_argument);
    EXPECT_THROW(make_grid(2, 1, 0.1), std::invalid_argument);
}

TEST(Dataset, invariants) {
    EXPECT_THROW(Dataset({{0.0, 10, 1}}), std::invalid_argument);
    EXPECT_THROW(Dataset({{0.0, 10, 1}, {0.0, 10, 1}}), std::invalid_argument);
    EXPECT_THROW(Dataset({{0.0, 10, 1}, {0.1, 10, 11}}), std::invalid_argument);
    EXPECT_THROW(Dataset({{0.0, 0, 0}, {0.1, 10, 1}}), std::invalid_argument);
    EXPECT_THROW(Dataset({{0.0, 10, -1}, {0.1, 10, 1}}), std::invalid_argument);
    const Dataset ds({{0.0, 10, 1}, {0.1, 10, 5}}, "q");
    EXPECT_DOUBLE_EQ(ds.fractions()[1], 0.5);
    EXPECT_EQ(ds.label(), "q");
}

TEST(SampleDataset, zero_probability_is_deterministic) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Dataset ds = sample_dataset(NoiseModeld::ideal(), TimeGrid::standard(), 8192, seed);
        EXPECT_EQ(ds.records()[0].ones, 0);
        EXPECT_EQ(ds.records()[0].shots, 8192);
    }
}

TEST(SampleDataset, near_full_flip_stays_above_99_percent) {
    // Grid point 3.1 has p = 0.99957; P(ones/8192 <= 0.99) ~ 5e-80.
    const TimeGrid g = TimeGrid::standard();
    ASSERT_GT(noisy_prob(NoiseModeld::ideal(), g.points()[31]), 0.999);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Dataset ds = sample_dataset(NoiseModeld::ideal(), g, 8192, seed);
        EXPECT_GT(ds.records()[31].fraction(), 0.99);
    }
}

TEST(SampleDataset, binomial_moments_at_one_half) {
    const NoiseModeld flat{0.0, 0.5, 0.0, 1.0};
    const TimeGrid g = make_grid(0, 1, 1);
    double sum = 0, sum_sq = 0;
    const int n = 1000;
    for (int seed = 0; seed < n; ++seed) {
        const auto ones = static_cast<double>(sample_dataset(flat, g, 8192, static_cast<std::uint64_t>(seed)).records()[0].ones);
        sum += ones;
        sum_sq += ones * ones;
    }
    const double mean = sum / n;
    const double sd = std::sqrt((sum_sq - n * mean * mean) / (n - 1));
    EXPECT_NEAR(mean, 4096, 5);
    EXPECT_NEAR(sd, std::sqrt(8192 * 0.25), 3);
}

TEST(SampleDataset, deterministic_per_seed) {
    const NoiseModeld m{0.9, 0.05, 0.1, 1.02};
    const TimeGrid g = TimeGrid::standard();
    EXPECT_EQ(sample_dataset(m, g, 8192, 42, "a"), sample_dataset(m, g, 8192, 42, "a"));
}

TEST(SampleDataset, distinct_seeds_differ) {
    const NoiseModeld m{0.9, 0.05, 0.0, 1.0};
    const TimeGrid g = TimeGrid::standard();
    for (std::uint64_t s = 0; s < 100; ++s) {
        EXPECT_NE(sample_dataset(m, g, 8192, 2 * s), sample_dataset(m, g, 8192, 2 * s + 1)) << s;
    }
}

TEST(SampleDataset, law_of_large_numbers) {
    const TimeGrid g = TimeGrid::standard();
    const Dataset ds = sample_dataset(NoiseModeld::ideal(), g, 1'000'000, 3);
    const Eigen::ArrayXd p = noisy_prob(NoiseModeld::ideal(), g.points());
    EXPECT_LT((ds.fractions() - p).abs().maxCoeff(), 0.005);
}

TEST(SampleDataset, rejects_bad_inputs) {
    EXPECT_THROW(sample_dataset({0.9, 0.2, 0, 1}, TimeGrid::standard(), 10, 0), std::invalid_argument);
    EXPECT_THROW(sample_dataset(NoiseModeld::ideal(), TimeGrid::standard(), 0, 0), std::invalid_argument);
}

TEST(InjectStep, zero_offset_is_identity) {
    const Dataset ds = sample_dataset(NoiseModeld::ideal(), TimeGrid::standard(), 8192, 1);
    EXPECT_EQ(inject_step(ds, 4.0, 0.0), ds);
}

TEST(InjectStep, shifts_records_from_t_jump) {
    const Dataset ds = sample_dataset(NoiseModeld::ideal(), TimeGrid::standard(), 8192, 1);
    const Dataset shifted = inject_step(ds, 4.0, 0.15);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const ShotRecord &a = ds.records()[i];
        const ShotRecord &b = shifted.records()[i];
        if (a.t < 4.0) {
            EXPECT_EQ(a, b);
        } else {
            const auto expected = std::min<std::int64_t>(a.ones + std::llround(0.15 * 8192), 8192);
            EXPECT_EQ(b.ones, expected) << "t=" << a.t;
        }
    }
}

TEST(InjectStep, clamps_to_shots) {
    const Dataset ds({{0.0, 100, 10}, {1.0, 100, 90}});
    const Dataset up = inject_step(ds, 1.0, 1.0);
    EXPECT_EQ(up.records()[1].ones, 100);
    EXPECT_EQ(up.records()[0].ones, 10);
    const Dataset down = inject_step(ds, 0.0, -0.5);
    EXPECT_EQ(down.records()[0].ones, 0);
    EXPECT_EQ(down.records()[1].ones, 40);
}

TEST(InjectStep, rejects_out_of_range) {
    const Dataset ds({{0.0, 100, 10}, {1.0, 100, 90}});
    EXPECT_THROW(inject_step(ds, 1.5, 0.1), std::out_of_range);
    EXPECT_THROW(inject_step(ds, -0.1, 0.1), std::out_of_range);
}
