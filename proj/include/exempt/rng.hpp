#pragma once

#include <cstdint>
#include <vector>

namespace exempt {

// xoshiro256** seeded through splitmix64. Datasets must regenerate
// byte-identically across platforms, so no std:: distributions are used
// anywhere — bounded draws go through below().
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Unbiased draw in [0, n) via Lemire's multiply-shift with rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t threshold = (0ull - n) % n;
        while (true) {
            __uint128_t m = static_cast<__uint128_t>(next()) * n;
            if (static_cast<std::uint64_t>(m) >= threshold) {
                return static_cast<std::uint64_t>(m >> 64);
            }
        }
    }

    // Inclusive range.
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double unit() { return (next() >> 11) * (1.0 / 9007199254740992.0); }

    bool chance(double p) {
        if (p <= 0) return false;
        if (p >= 1) return true;
        return unit() < p;
    }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    // Independent deterministic substream; order of fork() calls does not
    // disturb the parent stream consumed afterwards only via next().
    Rng fork(std::uint64_t tag) {
        std::uint64_t mix = state_[0] ^ rotl(state_[3], 13) ^ (tag * 0x9E3779B97F4A7C15ull);
        next();
        return Rng(mix);
    }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    std::uint64_t state_[4];
};

} // namespace exempt
