#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace simplelogic {

// Philox4x32-10 counter-based generator (Salmon et al., Random123 family).
// A stream is addressed by (key, stream_id); blocks within a stream are
// addressed by a 64-bit block counter. Streams are statistically independent,
// which lets parallel workers draw from disjoint streams with no coordination
// and makes any candidate index reproducible in isolation.
class Philox4x32 {
public:
    using result_type = std::uint32_t;

    Philox4x32(std::uint64_t key, std::uint64_t stream_id)
        : key_lo_(static_cast<std::uint32_t>(key)),
          key_hi_(static_cast<std::uint32_t>(key >> 32)),
          stream_lo_(static_cast<std::uint32_t>(stream_id)),
          stream_hi_(static_cast<std::uint32_t>(stream_id >> 32)) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return 0xffffffffu; }

    result_type operator()() {
        if (index_ == 4) {
            block_ = generate_block(block_counter_++);
            index_ = 0;
        }
        return block_[index_++];
    }

    // Raw block function: maps (counter, key) to four output words.
    static std::array<std::uint32_t, 4> bijection(std::array<std::uint32_t, 4> ctr,
                                                  std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += 0x9E3779B9u;
                key[1] += 0xBB67AE85u;
            }
            const std::uint64_t p0 = static_cast<std::uint64_t>(0xD2511F53u) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(0xCD9E8D57u) * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }

private:
    std::array<std::uint32_t, 4> generate_block(std::uint64_t block) const {
        return bijection({static_cast<std::uint32_t>(block),
                          static_cast<std::uint32_t>(block >> 32), stream_lo_, stream_hi_},
                         {key_lo_, key_hi_});
    }

    std::uint32_t key_lo_, key_hi_;
    std::uint32_t stream_lo_, stream_hi_;
    std::uint64_t block_counter_ = 0;
    std::array<std::uint32_t, 4> block_{};
    int index_ = 4;
};

// Sampling helpers on top of the raw generator. std:: distributions are
// implementation-defined, so everything here is hand-rolled to keep outputs
// byte-identical across standard libraries.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id) : gen_(seed, stream_id) {}

    std::uint32_t next_u32() { return gen_(); }

    std::uint64_t next_u64() {
        const std::uint64_t hi = gen_();
        return (hi << 32) | gen_();
    }

    // Unbiased integer in [0, bound) via rejection.
    std::uint32_t uniform_below(std::uint32_t bound) {
        const std::uint32_t limit = (0xffffffffu / bound) * bound;
        std::uint32_t x = gen_();
        while (x >= limit) x = gen_();
        return x % bound;
    }

    // Inclusive integer range.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(uniform_below(static_cast<std::uint32_t>(hi - lo + 1)));
    }

    bool coin() { return (gen_() & 1u) != 0; }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal, Marsaglia polar method with a cached spare.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    // k distinct values from [0, n), in selection order (partial Fisher-Yates).
    std::vector<int> sample_indices(int n, int k) {
        scratch_.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) scratch_[static_cast<std::size_t>(i)] = i;
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
            const int j = i + static_cast<int>(uniform_below(static_cast<std::uint32_t>(n - i)));
            std::swap(scratch_[static_cast<std::size_t>(i)], scratch_[static_cast<std::size_t>(j)]);
            out.push_back(scratch_[static_cast<std::size_t>(i)]);
        }
        return out;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = uniform_below(static_cast<std::uint32_t>(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    Philox4x32 gen_;
    std::vector<int> scratch_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace simplelogic
