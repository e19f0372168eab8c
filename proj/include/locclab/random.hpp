#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "locclab/hilbert.hpp"

namespace locc {

using Rng = std::mt19937_64;

// Derives an independent stream seed; used for per-trial and per-restart seeds.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// Uniform in [0, 1) from the top 53 bits; identical across standard libraries.
double uniform01(Rng& rng);
cplx gaussian_complex(Rng& rng);

Vec random_unit_vector(int dim, Rng& rng);
Mat random_unitary(int dim, Rng& rng);

// `count` pairwise orthogonal Haar-random pure states on `shape`.
std::vector<PureState> random_orthogonal_states(SpaceShape shape, int count, Rng& rng);

// Samples an index with probability weights[i] / sum(weights).
int sample_index(const std::vector<double>& weights, Rng& rng);

}  // namespace locc
