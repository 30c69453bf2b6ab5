#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace maurey {

// Small deterministic generator (splitmix64).  All randomness in the toolkit
// flows from one root seed through named substreams, so results are
// bit-identical across runs and worker schedules.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t hash_label(const std::string& label) {
        std::uint64_t h = 1469598103934665603ull;  // FNV-1a
        for (unsigned char c : label) {
            h ^= c;
            h *= 1099511628211ull;
        }
        return h;
    }

    static Rng substream(std::uint64_t root, const std::string& label) {
        return Rng(root ^ hash_label(label));
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1]
    double uniform_pos() { return 1.0 - uniform(); }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Box-Muller; kept explicit so streams do not depend on the stdlib version
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = uniform_pos();
        double v = uniform();
        double r = std::sqrt(-2.0 * std::log(u));
        spare_ = r * std::sin(2.0 * M_PI * v);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * v);
    }

    double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace maurey
