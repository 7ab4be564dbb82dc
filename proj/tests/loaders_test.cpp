// Copyright 2026 The qenm Authors
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

#include "qenm/loaders.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace qenm::circuits {
namespace {

TEST(TwoBucketLoader, AmplitudesFollowParityKey) {
    const BucketKey key{0b1011, 1, 4};
    const Loader loader = velocity_loader_two_bucket(key, {0.6, -0.3});
    const LoadResult res = run_loader(loader);
    ASSERT_EQ(res.amplitudes.size(), 16u);
    double total = 0;
    for (std::uint64_t j = 0; j < 16; j++) {
        const double v = bucket_assignment(j, key) == 0 ? 0.6 : -0.3;
        EXPECT_NEAR(res.amplitudes[j].real(), v / 4, 1e-12) << j;
        EXPECT_NEAR(res.amplitudes[j].imag(), 0, 1e-12);
        total += v * v / 16;
    }
    EXPECT_NEAR(res.success_probability, total, 1e-12);
    EXPECT_LT(res.scratch_leak, 1e-12);
}

TEST(TwoBucketLoader, RejectsBadInputs) {
    EXPECT_THROW(velocity_loader_two_bucket({1, 0, 2}, {1.5, 0}), std::invalid_argument);
    EXPECT_THROW(velocity_loader_two_bucket({8, 0, 2}, {0.1, 0}), std::invalid_argument);
}

TEST(InequalityLoader, SignedAmplitudes) {
    const std::vector<std::int64_t> values{3, -7, 0, 5};
    const int r = 3;
    const LoadResult res = run_loader(inequality_test_loader(values, r));
    ASSERT_EQ(res.amplitudes.size(), 4u);
    double total = 0;
    for (std::size_t j = 0; j < values.size(); j++) {
        const double want = static_cast<double>(values[j]) / (8.0 * 2.0);
        EXPECT_NEAR(res.amplitudes[j].real(), want, 1e-12) << j;
        total += want * want;
    }
    EXPECT_NEAR(res.success_probability, total, 1e-12);
    EXPECT_LT(res.scratch_leak, 1e-12);
}

TEST(InequalityLoader, RejectsOverflowAndBadLength) {
    EXPECT_THROW(inequality_test_loader({8, 0}, 3), std::invalid_argument);
    EXPECT_THROW(inequality_test_loader({1, 2, 3}, 3), std::invalid_argument);
}

TEST(Quantize, RoundsAndClamps) {
    Eigen::VectorXd v(3);
    v << 0.5, -1.0, 0.26;
    const auto q = quantize_velocities(v, 2);
    EXPECT_EQ(q, (std::vector<std::int64_t>{2, -3, 1}));
    v[0] = 1.2;
    EXPECT_THROW(quantize_velocities(v, 2), std::invalid_argument);
}

TEST(QuantizedLoader, ErrorShrinksWithPrecision) {
    Eigen::VectorXd v(8);
    v << 0.9, -0.4, 0.13, 0.0, -0.77, 0.5, 0.31, -0.05;
    double prev = 1;
    for (int r : {2, 4, 6}) {
        const auto q = quantize_velocities(v, r);
        const LoadResult res = run_loader(inequality_test_loader(q, r));
        double err = 0;
        for (int j = 0; j < 8; j++) {
            err = std::max(err, std::abs(res.amplitudes[j].real() * std::sqrt(8.0) - v[j]));
        }
        EXPECT_LE(err, std::ldexp(1.0, -r) + 1e-12);
        EXPECT_LT(err, prev);
        prev = err;
    }
}

}  // namespace
}  // namespace qenm::circuits
