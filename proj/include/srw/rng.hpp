#pragma once

#include <cstdint>
#include <random>

namespace srw {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t& state);

// Independent stream for replicate `index` of a run with master seed `master`.
Rng make_stream(std::uint64_t master, std::uint64_t index);

// Uniform on the open interval (0, 1).
double uniform_open(Rng& rng);

}  // namespace srw
