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

#ifndef QENM_BOLTZMANN_HPP
#define QENM_BOLTZMANN_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace qenm {

/// Maxwell-Boltzmann parameters. Each velocity component is Normal(0, k_B T / m).
struct MBParams {
    double m = 1;
    double T = 1;
    double k_B = 1;
    int D = 2;

    void validate() const;
    double sigma() const;
};

struct DiscretizedMB {
    std::vector<double> probabilities;
    std::vector<double> velocities;
    /// Highest moment order reproduced exactly; moments 0..matched_moments match.
    int matched_moments = 0;
    std::string label;

    std::size_t size() const { return probabilities.size(); }
    double moment(int order) const;
    std::string json() const;
};

/// Median split: two equiprobable buckets at +sigma and -sigma.
DiscretizedMB discretize_two_bucket(const MBParams &params);

/// k equiprobable quantile buckets of the Gaussian truncated at 6 sigma, each
/// represented by its conditional mean.
DiscretizedMB discretize_k_bucket(const MBParams &params, int k);

constexpr double kTailCutSigmas = 6.0;

/// Gaussian mean of v over [a, b] divided by the probability of [a, b], in closed form.
double gaussian_conditional_mean(double a, double b, double sigma);

/// Parity key for two-bucket assignment: b_j = popcount(j & s) mod 2 xor r.
struct BucketKey {
    std::uint64_t s = 0;
    int r = 0;
    int n = 0;
};

int bucket_assignment(std::uint64_t j, const BucketKey &key);
BucketKey random_bucket_key(int n, std::uint64_t seed);

double kinetic_rel_fluctuation(int D, std::uint64_t N);
double mean_kinetic(const MBParams &params, std::uint64_t N);
double alpha(const MBParams &params, std::uint64_t N);

/// Keyed pseudorandom function with `bits` output bits.
std::uint64_t prf(std::uint64_t key, std::uint64_t i, int bits);

/// Cumulative table C(j) scaled to 2^bits, with C(k-1) = 2^bits.
std::vector<std::uint64_t> cdf_table(const DiscretizedMB &dist, int bits);

/// Smallest j with prf_output < C(j).
std::size_t inverse_cdf_bucket(std::uint64_t prf_output, const std::vector<std::uint64_t> &cdf);

/// Two-bucket velocities for the listed nodes; other entries stay zero.
Eigen::VectorXd two_bucket_velocities(
    const MBParams &params, const BucketKey &key, const std::vector<std::uint64_t> &nodes, std::size_t size);

/// Velocities drawn through the PRF and inverse-CDF table.
Eigen::VectorXd prf_velocities(
    const DiscretizedMB &dist,
    std::uint64_t key,
    int bits,
    const std::vector<std::uint64_t> &nodes,
    std::size_t size);

/// Kinetic energies of independent continuous Maxwell-Boltzmann draws of N
/// particles in D dimensions.
std::vector<double> sample_kinetic_energies(
    const MBParams &params, std::uint64_t N, std::size_t samples, std::uint64_t seed);

}  // namespace qenm

#endif
