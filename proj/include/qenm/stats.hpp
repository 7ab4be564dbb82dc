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

#ifndef QENM_STATS_HPP
#define QENM_STATS_HPP

#include <cstdint>
#include <vector>

namespace qenm {

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
};

/// Ordinary least squares y = slope * x + intercept.
LinearFit fit_line(const std::vector<double> &x, const std::vector<double> &y);
/// Fit of log y against log x.
LinearFit fit_power_law(const std::vector<double> &x, const std::vector<double> &y);

struct SampleSummary {
    double mean = 0;
    double std_dev = 0;
    /// Standard error of the mean.
    double std_error = 0;
};

SampleSummary summarize(const std::vector<double> &samples);

/// Ratio std/mean with a batch-means standard error estimate.
struct RatioEstimate {
    double value = 0;
    double std_error = 0;
};
RatioEstimate relative_fluctuation(const std::vector<double> &samples, std::size_t batches = 100);

/// SplitMix64 step. Used for seed derivation and as the keyed PRF.
std::uint64_t splitmix64(std::uint64_t x);

/// Independent stream seed derived from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

namespace streams {
constexpr std::uint64_t kBoltzmannKey = 1;
constexpr std::uint64_t kVelocitySampler = 2;
constexpr std::uint64_t kShotSampler = 3;
constexpr std::uint64_t kSubsets = 4;
constexpr std::uint64_t kPerturbation = 5;
}  // namespace streams

}  // namespace qenm

#endif
