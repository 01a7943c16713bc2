#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>

namespace surgact {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seeded generator with hand-rolled distributions so that streams are
// bit-identical across standard libraries. std::mt19937_64 itself is fully
// specified by the standard; the std:: distributions are not.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)), root_(seed) {}

    // Derive an independent child stream, e.g. per fold/epoch/batch.
    // Children are a pure function of (root seed, tag): drawing from one
    // stream never perturbs another.
    Rng child(std::uint64_t tag) const { return Rng(root_ ^ splitmix64(tag ^ 0xa5a5a5a5a5a5a5a5ULL)); }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Box-Muller; one value per call, the pair sibling is cached.
    double normal(double mean = 0.0, double sigma = 1.0) {
        if (has_spare_) {
            has_spare_ = false;
            return mean + sigma * spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return mean + sigma * r * std::cos(theta);
    }

    // Uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // Rejection-free modulo is fine here; n is always tiny vs 2^64.
        return engine_() % n;
    }

    template <class Vec>
    void shuffle(Vec& v) {
        // Fisher-Yates with our own index draws for portability.
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    std::string serialize() const {
        std::ostringstream os;
        os << engine_;
        return os.str();
    }

    void deserialize(const std::string& s) {
        std::istringstream is(s);
        is >> engine_;
        has_spare_ = false;
    }

private:
    std::mt19937_64 engine_;
    std::uint64_t root_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace surgact
