#pragma once
#include <cstdint>
#include <random>

namespace iastab {

// Reproducible random stream: (seed, stream id) fully determine the sample
// sequence, and distinct stream ids give independently seeded engines.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
        std::seed_seq seq{split(x), split(x), split(x), split(x)};
        eng_.seed(seq);
    }

    std::mt19937_64& engine() { return eng_; }

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
    double exponential(double rate = 1.0) { return std::exponential_distribution<double>(rate)(eng_); }
    // shape/rate parameterization
    double gamma(double shape, double rate) {
        return std::gamma_distribution<double>(shape, 1.0 / rate)(eng_);
    }
    double beta(double a, double b) {
        const double x = std::gamma_distribution<double>(a, 1.0)(eng_);
        const double y = std::gamma_distribution<double>(b, 1.0)(eng_);
        return x / (x + y);
    }
    long long poisson(double mean) {
        if (mean <= 0.0) return 0;
        return std::poisson_distribution<long long>(mean)(eng_);
    }
    bool bernoulli(double p) { return std::bernoulli_distribution(p)(eng_); }

private:
    static std::uint32_t split(std::uint64_t& state) {
        // splitmix64 step, folded to 32 bits for seed_seq
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return static_cast<std::uint32_t>(z ^ (z >> 32));
    }
    std::mt19937_64 eng_;
};

} // namespace iastab
