#pragma once

#include <cstdint>

namespace ma1est {

// Counter-based 64-bit generator (splitmix64 finalizer over a Weyl
// sequence). Seed protocol: the stream is fully determined by one
// 64-bit seed; replication r of a study uses seed = base_seed + r.
class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    result_type operator()() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~std::uint64_t{0}; }

    // Uniform on the open interval (0,1): 53 mantissa bits offset by half
    // an ulp, so inversion sampling never evaluates a quantile at 0 or 1.
    double uniform01() noexcept {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

} // namespace ma1est
