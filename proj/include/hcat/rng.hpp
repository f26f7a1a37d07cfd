#pragma once

#include <cstdint>

namespace hcat {

// Counter based generator: the n-th draw of stream s under seed k is a pure
// function of (k, s, n), so batches can be evaluated in any order.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

    std::uint64_t next_u64();
    double uniform();                      // [0, 1)
    double uniform(double lo, double hi);  // [lo, hi)
    std::uint64_t index(std::uint64_t n);  // [0, n)
    double normal();

    CounterRng substream(std::uint64_t s) const;
    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x);

}  // namespace hcat
