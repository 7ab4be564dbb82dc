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

#include "qenm/stats.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qenm {

LinearFit fit_line(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("fit_line needs at least two matching points");
    }
    const auto n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); i++) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0) {
        throw std::invalid_argument("fit_line needs distinct x values");
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0 ? 1.0 : sxy * sxy / (sxx * syy);
    return fit;
}

LinearFit fit_power_law(const std::vector<double> &x, const std::vector<double> &y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); i++) {
        if (!(x[i] > 0) || !(y.at(i) > 0)) {
            throw std::invalid_argument("power-law fit needs positive data");
        }
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    return fit_line(lx, ly);
}

SampleSummary summarize(const std::vector<double> &samples) {
    if (samples.size() < 2) {
        throw std::invalid_argument("summarize needs at least two samples");
    }
    const auto n = static_cast<double>(samples.size());
    SampleSummary out;
    out.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    double ss = 0;
    for (double v : samples) {
        ss += (v - out.mean) * (v - out.mean);
    }
    out.std_dev = std::sqrt(ss / (n - 1));
    out.std_error = out.std_dev / std::sqrt(n);
    return out;
}

RatioEstimate relative_fluctuation(const std::vector<double> &samples, std::size_t batches) {
    if (batches < 2 || samples.size() < 2 * batches) {
        throw std::invalid_argument("relative_fluctuation needs at least two samples per batch");
    }
    const SampleSummary all = summarize(samples);
    RatioEstimate out;
    out.value = all.std_dev / all.mean;
    const std::size_t per = samples.size() / batches;
    std::vector<double> ratios;
    for (std::size_t b = 0; b < batches; b++) {
        std::vector<double> chunk(samples.begin() + static_cast<std::ptrdiff_t>(b * per),
                                  samples.begin() + static_cast<std::ptrdiff_t>((b + 1) * per));
        const SampleSummary s = summarize(chunk);
        ratios.push_back(s.std_dev / s.mean);
    }
    out.std_error = summarize(ratios).std_error;
    return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ splitmix64(stream));
}

}  // namespace qenm
