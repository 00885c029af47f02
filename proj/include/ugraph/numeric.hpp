#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace ugraph {

/// Riemann zeta for real s > 1: direct series plus Euler-Maclaurin tail
/// (integral term, half-term and first Bernoulli correction), absolute
/// error below 1e-10 even for s close to 1.
inline double riemann_zeta(double s) {
    if (s <= 1.0) throw std::domain_error("zeta(s) requires s > 1");
    const std::uint64_t terms = s < 1.2 ? 10'000'000 : 2'000'000;
    double sum = 0.0;
    for (std::uint64_t k = terms; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
    const double N = static_cast<double>(terms + 1);
    // tail: integral from N, + f(N)/2, + s/(12 N^{s+1})
    sum += std::pow(N, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(N, -s) + s / 12.0 * std::pow(N, -s - 1.0);
    return sum;
}

/// Shannon entropy in bits of a non-negative weight vector (normalized
/// internally; zero-sum input has entropy 0).
inline double shannon_entropy_bits(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (total <= 0.0) return 0.0;
    double h = 0.0;
    for (double w : weights) {
        if (w <= 0.0) continue;
        double p = w / total;
        h -= p * std::log2(p);
    }
    return h;
}

inline double pearson_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("pearson: need matched series");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

inline double mean_of(std::span<const double> xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

inline double stddev_of(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    double m = mean_of(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

}  // namespace ugraph
