#pragma once

#include <cstdint>
#include <random>

#include "subclust/matrix.hpp"

namespace subclust {

using Rng = std::mt19937_64;

/// One step of the splitmix64 generator; advances `state`.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Seed for independent stream `stream` under master seed `seed`:
/// splitmix64 applied to seed + (stream + 1)·0x9E3779B97F4A7C15.
/// Every restart, replication and grid draw takes its own stream so results
/// do not depend on execution order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// rows×cols matrix of i.i.d. N(0, 1) draws.
Matrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);

/// Uniform in [0, 1).
double uniform01(Rng& rng);

}  // namespace subclust
