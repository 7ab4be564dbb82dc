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

#include "qenm/boltzmann.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "qenm/stats.hpp"

namespace qenm {
namespace {

// Composite Simpson rule, independent of the library's quadrature.
template <typename F>
double simpson(F f, double a, double b, int n = 20000) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; i++) {
        s += f(a + i * h) * (i % 2 ? 4 : 2);
    }
    return s * h / 3;
}

double gauss_pdf(double v, double sigma) {
    return std::exp(-v * v / (2 * sigma * sigma)) / (sigma * std::sqrt(2 * std::numbers::pi));
}

TEST(MBParams, Validation) {
    EXPECT_THROW((MBParams{1, -1, 1, 2}.validate()), std::invalid_argument);
    EXPECT_THROW((MBParams{0, 1, 1, 2}.validate()), std::invalid_argument);
    EXPECT_THROW((MBParams{1, 1, 1, 0}.validate()), std::invalid_argument);
    EXPECT_NEAR((MBParams{2, 3, 0.5, 2}.sigma()), std::sqrt(0.75), 1e-15);
}

TEST(TwoBucket, MatchesMomentsThroughThree) {
    for (double T : {0.1, 1.0, 300.0}) {
        const MBParams p{1.5, T, 1.0, 2};
        const DiscretizedMB d = discretize_two_bucket(p);
        const double s2 = p.k_B * p.T / p.m;
        EXPECT_NEAR(d.moment(0), 1, 1e-15);
        EXPECT_LE(std::abs(d.moment(1)), 1e-12);
        EXPECT_NEAR(d.moment(2), s2, 1e-9 * s2);
        EXPECT_LE(std::abs(d.moment(3)), 1e-12);
        // The Gaussian fourth moment is 3 sigma^4; two symmetric atoms only give sigma^4.
        EXPECT_NEAR(d.moment(4), s2 * s2, 1e-9 * s2 * s2);
        EXPECT_EQ(d.matched_moments, 3);
    }
}

TEST(TwoBucket, ZeroTemperatureIsRest) {
    const DiscretizedMB d = discretize_two_bucket({1, 0, 1, 2});
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d.velocities[0], 0);
}

TEST(KBucket, SymmetricAndNormalized) {
    const MBParams p{1, 1, 1, 2};
    for (int k : {2, 3, 8, 33}) {
        const DiscretizedMB d = discretize_k_bucket(p, k);
        EXPECT_NEAR(d.moment(0), 1, 1e-12);
        EXPECT_LE(std::abs(d.moment(1)), 1e-14);
        EXPECT_LE(std::abs(d.moment(3)), 1e-13);
        for (int i = 0; i < k; i++) {
            EXPECT_NEAR(d.velocities[i], -d.velocities[k - 1 - i], 1e-15);
        }
    }
    // Variance approaches sigma^2 from below as the buckets refine.
    const double v8 = discretize_k_bucket(p, 8).moment(2);
    const double v64 = discretize_k_bucket(p, 64).moment(2);
    EXPECT_LT(v8, v64);
    EXPECT_LT(v64, 1.0);
    EXPECT_GT(v64, 0.99);
    EXPECT_THROW(discretize_k_bucket({1, 0, 1, 2}, 4), std::invalid_argument);
}

TEST(KBucket, BucketMeansMatchNumericalIntegration) {
    const double sigma = 1.3;
    const MBParams p{1, sigma * sigma, 1, 1};
    const DiscretizedMB d = discretize_k_bucket(p, 4);
    // Quartile edges of the normal distribution: 0 and +-0.6744897501960817 sigma.
    const double q = 0.6744897501960817 * sigma;
    const double cut = kTailCutSigmas * sigma;
    const double edges[] = {-cut, -q, 0, q, cut};
    for (int i = 0; i < 4; i++) {
        const double a = edges[i];
        const double b = edges[i + 1];
        const double mass = simpson([&](double v) { return gauss_pdf(v, sigma); }, a, b);
        const double first = simpson([&](double v) { return v * gauss_pdf(v, sigma); }, a, b);
        EXPECT_NEAR(d.velocities[i], first / mass, 1e-6);
        EXPECT_NEAR(gaussian_conditional_mean(a, b, sigma), first / mass, 1e-8);
    }
}

TEST(BucketKey, ParityAssignment) {
    const BucketKey zero{0, 0, 4};
    for (std::uint64_t j = 0; j < 16; j++) {
        EXPECT_EQ(bucket_assignment(j, zero), 0);
    }
    const BucketKey key{0b1010, 1, 4};
    EXPECT_EQ(bucket_assignment(0b0000, key), 1);
    EXPECT_EQ(bucket_assignment(0b0010, key), 0);
    EXPECT_EQ(bucket_assignment(0b1010, key), 1);
    EXPECT_EQ(bucket_assignment(0b1111, key), 1);
    const BucketKey r = random_bucket_key(6, 42);
    EXPECT_EQ(r.n, 6);
    EXPECT_EQ(r.s >> 6, 0u);
    EXPECT_EQ(random_bucket_key(6, 42).s, r.s);
}

TEST(TwoBucket, VelocitiesFollowBuckets) {
    const MBParams p{2, 8, 1, 2};
    const BucketKey key{0b101, 0, 3};
    const Eigen::VectorXd v = two_bucket_velocities(p, key, {0, 1, 5, 7}, 8);
    EXPECT_EQ(v[0], 2.0);
    EXPECT_EQ(v[1], -2.0);
    EXPECT_EQ(v[5], 2.0);
    EXPECT_EQ(v[7], 2.0);
    EXPECT_EQ(v[2], 0.0);
}

TEST(Thermal, MeanKineticAndAlpha) {
    const MBParams p{3, 2, 0.5, 3};
    EXPECT_NEAR(mean_kinetic(p, 10), 10 * 3 * 0.5 * 2 / 2.0, 1e-15);
    EXPECT_NEAR(alpha(p, 10), std::sqrt(10 * 3 * 0.5 * 2), 1e-15);
    EXPECT_NEAR(kinetic_rel_fluctuation(2, 4), 0.5, 1e-15);
}

TEST(KineticFluctuation, MonteCarloRelativeFluctuation) {
    const MBParams p{1, 1, 1, 2};
    const auto k = sample_kinetic_energies(p, 8, 100000, 7);
    const RatioEstimate r = relative_fluctuation(k);
    EXPECT_LE(std::abs(r.value - kinetic_rel_fluctuation(2, 8)), 3 * r.std_error);
    const SampleSummary s = summarize(k);
    EXPECT_LE(std::abs(s.mean - mean_kinetic(p, 8)), 4 * s.std_error);
}

TEST(Prf, RangeAndDeterminism) {
    for (std::uint64_t i = 0; i < 1000; i++) {
        EXPECT_LT(prf(99, i, 10), 1024u);
        EXPECT_EQ(prf(99, i, 10), prf(99, i, 10));
    }
    EXPECT_NE(prf(1, 5, 32), prf(2, 5, 32));
    EXPECT_THROW(prf(1, 1, 0), std::invalid_argument);
}

TEST(InverseCdf, TableAndLookup) {
    DiscretizedMB d;
    d.probabilities = {0.25, 0.5, 0.25};
    d.velocities = {-1, 0, 1};
    const auto cdf = cdf_table(d, 4);
    EXPECT_EQ(cdf, (std::vector<std::uint64_t>{4, 12, 16}));
    EXPECT_EQ(inverse_cdf_bucket(0, cdf), 0u);
    EXPECT_EQ(inverse_cdf_bucket(3, cdf), 0u);
    EXPECT_EQ(inverse_cdf_bucket(4, cdf), 1u);
    EXPECT_EQ(inverse_cdf_bucket(15, cdf), 2u);
    EXPECT_THROW(inverse_cdf_bucket(16, cdf), std::out_of_range);
}

TEST(InverseCdf, PrfVelocityFrequencies) {
    const DiscretizedMB d = discretize_k_bucket({1, 1, 1, 1}, 4);
    std::vector<std::uint64_t> nodes(1 << 14);
    for (std::size_t i = 0; i < nodes.size(); i++) {
        nodes[i] = i;
    }
    const Eigen::VectorXd v = prf_velocities(d, 1234, 16, nodes, nodes.size());
    std::map<double, int> counts;
    for (Eigen::Index i = 0; i < v.size(); i++) {
        counts[v[i]]++;
    }
    ASSERT_EQ(counts.size(), 4u);
    const double expected = nodes.size() / 4.0;
    for (const auto &[vel, c] : counts) {
        EXPECT_LE(std::abs(c - expected), 5 * std::sqrt(expected * 0.75)) << vel;
    }
}

TEST(Seeds, DerivedStreamsDiffer) {
    EXPECT_NE(derive_seed(0, streams::kBoltzmannKey), derive_seed(0, streams::kShotSampler));
    EXPECT_EQ(derive_seed(5, 1), splitmix64(5 ^ splitmix64(1)));
}

}  // namespace
}  // namespace qenm
