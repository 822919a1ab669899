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

#include "rabipi/screen.h"

#include <cmath>

#include "gtest/gtest.h"

using namespace rabipi;

TEST(Screen, accepts_clean_dataset) {
    const Dataset ds = sample_dataset(NoiseModeld::ideal(), TimeGrid::standard(), 8192, 7);
    const ScreenVerdict v = screen_dataset(ds);
    EXPECT_TRUE(v.accepted) << v.reason;
    EXPECT_FALSE(v.location.has_value());
    // c dt / 2 + 5 sqrt(0.25 / 8192) with c ~ 1.
    EXPECT_NEAR(v.threshold, 0.05 + 5 * std::sqrt(0.25 / 8192), 0.002);
}

TEST(Screen, rejects_level_shift_near_injection) {
    const Dataset ds = sample_dataset(NoiseModeld::ideal(), TimeGrid::standard(), 8192, 7);
    const ScreenVerdict v = screen_dataset(inject_step(ds, 4.0, 0.15));
    EXPECT_FALSE(v.accepted);
    ASSERT_TRUE(v.location.has_value());
    EXPECT_NEAR(*v.location, 4.0, 0.2);
    EXPECT_FALSE(v.reason.empty());
}

TEST(Screen, small_shift_is_below_threshold) {
    // 0.005 plus the largest clean step (~0.036 at t = 4) stays under ~0.078.
    const Dataset ds = sample_dataset(NoiseModeld::ideal(), TimeGrid::standard(), 8192, 7);
    EXPECT_TRUE(screen_dataset(inject_step(ds, 4.0, 0.005)).accepted);
}

TEST(Screen, step_near_pi_is_flagged) {
    const Dataset ds = sample_dataset({0.9, 0.05, 0.0, 1.0}, TimeGrid::standard(), 8192, 9);
    const ScreenVerdict v = screen_dataset(inject_step(ds, 3.1, -0.2));
    EXPECT_FALSE(v.accepted);
    EXPECT_NEAR(*v.location, 3.1, 0.2);
}

TEST(Screen, degenerate_dataset_rejected_without_throwing) {
    const Dataset ds({{0, 100, 40}, {1, 100, 40}, {2, 100, 40}});
    const ScreenVerdict v = screen_dataset(ds);
    EXPECT_FALSE(v.accepted);
    EXPECT_FALSE(v.location.has_value());
}
