#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ugraph {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Reproducible random stream identified by (master seed, stream id).
/// Distinct stream ids derived from the same master seed are independent,
/// which lets parallel code draw from per-task streams and stay
/// deterministic regardless of scheduling. Bounded ints and doubles are
/// generated from raw engine words so results do not depend on the
/// standard library's distribution implementations.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id = 0)
        : master_seed_(master_seed), stream_id_(stream_id) {
        std::uint64_t s = master_seed ^ (stream_id * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL);
        std::seed_seq seq{static_cast<unsigned>(splitmix64(s)),       static_cast<unsigned>(splitmix64(s)),
                          static_cast<unsigned>(splitmix64(s) >> 32), static_cast<unsigned>(splitmix64(s)),
                          static_cast<unsigned>(splitmix64(s) >> 32), static_cast<unsigned>(splitmix64(s))};
        engine_.seed(seq);
    }

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Child stream for parallel subtasks; substream(i) != substream(j) for i != j.
    RngStream substream(std::uint64_t id) const {
        return RngStream(master_seed_, stream_id_ * 0x100000001b3ULL + id + 1);
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in {0, ..., bound-1}; bound > 0. Lemire's rejection method.
    std::uint64_t uniform_below(std::uint64_t bound) {
        __uint128_t m = static_cast<__uint128_t>(engine_()) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            std::uint64_t threshold = (0 - bound) % bound;
            while (lo < threshold) {
                m = static_cast<__uint128_t>(engine_()) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {  // inclusive range
        return lo + static_cast<std::int64_t>(uniform_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool bernoulli(double p) { return uniform01() < p; }

    /// N(0, sigma) via Marsaglia's polar method (spare value cached).
    double normal(double sigma) {
        if (has_spare_) {
            has_spare_ = false;
            return spare_ * sigma;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f * sigma;
    }

    /// Geometric: number of failures before first success, P(success) = p.
    std::uint64_t geometric(double p) {
        double u = uniform01();
        if (u == 0.0) u = 0x1.0p-53;
        return static_cast<std::uint64_t>(std::log(u) / std::log1p(-p));
    }

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace ugraph
