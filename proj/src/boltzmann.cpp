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

#include <bit>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qenm/io.hpp"
#include "qenm/stats.hpp"

namespace qenm {

void MBParams::validate() const {
    if (!(m > 0)) {
        throw std::invalid_argument("mass must be positive");
    }
    if (!(T >= 0)) {
        throw std::invalid_argument("temperature must be nonnegative");
    }
    if (!(k_B > 0)) {
        throw std::invalid_argument("Boltzmann constant must be positive");
    }
    if (D < 1) {
        throw std::invalid_argument("dimension must be at least 1");
    }
}

double MBParams::sigma() const {
    validate();
    return std::sqrt(k_B * T / m);
}

double DiscretizedMB::moment(int order) const {
    double sum = 0;
    for (std::size_t i = 0; i < size(); i++) {
        sum += probabilities[i] * std::pow(velocities[i], order);
    }
    return sum;
}

std::string DiscretizedMB::json() const {
    std::ostringstream out;
    out << "{\"k\": " << size() << ", \"probabilities\": [";
    for (std::size_t i = 0; i < size(); i++) {
        out << (i ? ", " : "") << io::format_double(probabilities[i]);
    }
    out << "], \"velocities\": [";
    for (std::size_t i = 0; i < size(); i++) {
        out << (i ? ", " : "") << io::format_double(velocities[i]);
    }
    out << "], \"matched_moments\": " << matched_moments << "}";
    return out.str();
}

DiscretizedMB discretize_two_bucket(const MBParams &params) {
    const double sigma = params.sigma();
    DiscretizedMB out;
    if (sigma == 0) {
        out.probabilities = {1.0};
        out.velocities = {0.0};
        out.matched_moments = 3;
        out.label = "rest";
        return out;
    }
    out.probabilities = {0.5, 0.5};
    out.velocities = {sigma, -sigma};
    out.matched_moments = 3;
    out.label = "median-split";
    return out;
}

double gaussian_conditional_mean(double a, double b, double sigma) {
    boost::math::normal_distribution<double> unit(0.0, 1.0);
    const double za = a / sigma;
    const double zb = b / sigma;
    const double mass = boost::math::cdf(unit, zb) - boost::math::cdf(unit, za);
    return sigma * (boost::math::pdf(unit, za) - boost::math::pdf(unit, zb)) / mass;
}

DiscretizedMB discretize_k_bucket(const MBParams &params, int k) {
    if (k < 2 || k > (1 << 20)) {
        throw std::invalid_argument("bucket count must lie in [2, 2^20]");
    }
    const double sigma = params.sigma();
    if (sigma == 0) {
        throw std::invalid_argument("quantile buckets need a positive temperature");
    }
    boost::math::normal_distribution<double> dist(0.0, sigma);
    const double lo = boost::math::cdf(dist, -kTailCutSigmas * sigma);
    const double hi = boost::math::cdf(dist, kTailCutSigmas * sigma);
    std::vector<double> edges(static_cast<std::size_t>(k) + 1);
    edges.front() = -kTailCutSigmas * sigma;
    edges.back() = kTailCutSigmas * sigma;
    for (int i = 1; i < k; i++) {
        edges[i] = boost::math::quantile(dist, lo + (hi - lo) * i / k);
    }

    DiscretizedMB out;
    out.matched_moments = 1;
    out.label = "quantile-mean-" + std::to_string(k);
    using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
    for (int i = 0; i < k; i++) {
        const double a = edges[i];
        const double b = edges[i + 1];
        double err = 0;
        const double mass = Quad::integrate([&](double v) { return boost::math::pdf(dist, v); }, a, b, 20, 1e-12, &err);
        const double first =
            Quad::integrate([&](double v) { return v * boost::math::pdf(dist, v); }, a, b, 20, 1e-12, &err);
        if (!(mass > 0) || !std::isfinite(first)) {
            throw std::runtime_error("moment integration failed on bucket " + std::to_string(i));
        }
        out.probabilities.push_back(1.0 / k);
        out.velocities.push_back(first / mass);
    }
    // Mirror to make the odd moments vanish exactly.
    for (int i = 0; i < k / 2; i++) {
        const double v = 0.5 * (out.velocities[k - 1 - i] - out.velocities[i]);
        out.velocities[i] = -v;
        out.velocities[k - 1 - i] = v;
    }
    if (k % 2 == 1) {
        out.velocities[k / 2] = 0;
    }
    return out;
}

int bucket_assignment(std::uint64_t j, const BucketKey &key) {
    return (std::popcount(j & key.s) & 1) ^ (key.r & 1);
}

BucketKey random_bucket_key(int n, std::uint64_t seed) {
    if (n < 1 || n > 63) {
        throw std::invalid_argument("key width must lie in [1, 63]");
    }
    std::mt19937_64 rng(seed);
    BucketKey key;
    key.n = n;
    key.s = rng() & ((std::uint64_t{1} << n) - 1);
    key.r = static_cast<int>(rng() & 1);
    return key;
}

double kinetic_rel_fluctuation(int D, std::uint64_t N) {
    if (D < 1 || N < 1) {
        throw std::invalid_argument("dimension and particle count must be positive");
    }
    return std::sqrt(2.0 / (static_cast<double>(D) * static_cast<double>(N)));
}

double mean_kinetic(const MBParams &params, std::uint64_t N) {
    params.validate();
    return static_cast<double>(N) * params.D * params.k_B * params.T / 2;
}

double alpha(const MBParams &params, std::uint64_t N) {
    return std::sqrt(2 * mean_kinetic(params, N));
}

std::uint64_t prf(std::uint64_t key, std::uint64_t i, int bits) {
    if (bits < 1 || bits > 63) {
        throw std::invalid_argument("prf width must lie in [1, 63]");
    }
    return splitmix64(key ^ splitmix64(i)) >> (64 - bits);
}

std::vector<std::uint64_t> cdf_table(const DiscretizedMB &dist, int bits) {
    if (bits < 1 || bits > 62) {
        throw std::invalid_argument("cdf width must lie in [1, 62]");
    }
    const double scale = std::ldexp(1.0, bits);
    std::vector<std::uint64_t> out;
    double acc = 0;
    for (std::size_t i = 0; i < dist.size(); i++) {
        acc += dist.probabilities[i];
        out.push_back(static_cast<std::uint64_t>(std::llround(acc * scale)));
    }
    out.back() = std::uint64_t{1} << bits;
    for (std::size_t i = 1; i < out.size(); i++) {
        if (out[i] < out[i - 1]) {
            throw std::logic_error("cdf table is not monotone");
        }
    }
    return out;
}

std::size_t inverse_cdf_bucket(std::uint64_t prf_output, const std::vector<std::uint64_t> &cdf) {
    if (cdf.empty() || prf_output >= cdf.back()) {
        throw std::out_of_range("prf output beyond the cdf table");
    }
    std::size_t j = 0;
    while (!(prf_output < cdf[j])) {
        j++;
    }
    return j;
}

Eigen::VectorXd two_bucket_velocities(
    const MBParams &params, const BucketKey &key, const std::vector<std::uint64_t> &nodes, std::size_t size) {
    const DiscretizedMB dist = discretize_two_bucket(params);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size));
    for (std::uint64_t j : nodes) {
        const auto b = static_cast<std::size_t>(bucket_assignment(j, key));
        v[static_cast<Eigen::Index>(j)] = dist.size() == 1 ? 0.0 : dist.velocities[b];
    }
    return v;
}

Eigen::VectorXd prf_velocities(
    const DiscretizedMB &dist,
    std::uint64_t key,
    int bits,
    const std::vector<std::uint64_t> &nodes,
    std::size_t size) {
    const auto cdf = cdf_table(dist, bits);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size));
    for (std::uint64_t j : nodes) {
        v[static_cast<Eigen::Index>(j)] = dist.velocities[inverse_cdf_bucket(prf(key, j, bits), cdf)];
    }
    return v;
}

std::vector<double> sample_kinetic_energies(
    const MBParams &params, std::uint64_t N, std::size_t samples, std::uint64_t seed) {
    const double sigma = params.sigma();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, sigma);
    std::vector<double> out;
    out.reserve(samples);
    const std::uint64_t components = N * static_cast<std::uint64_t>(params.D);
    for (std::size_t s = 0; s < samples; s++) {
        double sum = 0;
        for (std::uint64_t c = 0; c < components; c++) {
            const double v = normal(rng);
            sum += v * v;
        }
        out.push_back(0.5 * params.m * sum);
    }
    return out;
}

}  // namespace qenm
