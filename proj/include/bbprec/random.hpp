#pragma once

#include <array>
#include <cstdint>

namespace bbprec {

// Seedable, splittable deterministic generator (xoshiro256** seeded through
// SplitMix64). Every stochastic routine takes one of these explicitly; there
// is no global random state.
//
// split(k) derives an independent child stream from this source's seed and
// the index k without advancing the parent, so work item k receives the same
// stream whichever thread runs it.
class RandomSource {
public:
    using result_type = std::uint64_t;

    explicit RandomSource(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform double on [0, 1) with 53 random bits.
    double uniform();

    /// Uniform double on (0, 1), never exactly zero.
    double uniform_open();

    /// Standard normal draw (Marsaglia polar method).
    double normal();

    RandomSource split(std::uint64_t index) const;

    std::uint64_t seed() const noexcept { return seed_; }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() { return next_u64(); }

private:
    std::uint64_t seed_;
    std::array<std::uint64_t, 4> state_{};
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 finalizer; used for seeding and stream splitting.
std::uint64_t mix64(std::uint64_t z);

}  // namespace bbprec
