#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace lppt {

// Bounded draw by rejection sampling. std::uniform_int_distribution is
// implementation-defined, so seeded runs would not reproduce across standard
// libraries; this does.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

// Uniform k-subset of {0,...,n-1} (Floyd), returned sorted.
std::vector<std::uint32_t> sample_subset(std::mt19937_64& rng, std::uint32_t n,
                                         std::uint32_t k);

// Runs fn(0..count-1) across at most `threads` workers. Work items must be
// independent; the first exception thrown by a worker is rethrown here.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t value);

std::string rfc3339_now();
inline constexpr const char* kEpochTimestamp = "1970-01-01T00:00:00Z";

// Exact C(n, k); throws if the value does not fit in uint64.
std::uint64_t binomial(unsigned n, unsigned k);

}  // namespace lppt
