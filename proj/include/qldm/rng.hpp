#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace qldm {

// All randomness in the engine flows through named streams derived from one
// base seed, so that every consumer (parameter init, batch shuffling, time
// draws, noise draws, sampling, evaluation) advances independently and a
// checkpoint can restore each engine state exactly. Distributions are
// hand-rolled on top of mt19937_64 because the std:: distributions are
// implementation-defined and carry hidden state.
//
// Algorithm tag recorded in checkpoints: "mt19937_64/boxmuller/v1".

inline constexpr const char* kRngAlgorithm = "mt19937_64/boxmuller/v1";

enum class RngStream : std::uint64_t {
    ParamInit = 1,
    Shuffle = 2,
    TimeDraw = 3,
    NoiseDraw = 4,
    Sampling = 5,
    Evaluation = 6,
};

// Derives an independent engine for (seed, stream[, index]). `index` splits a
// stream further, e.g. one sub-stream per sampling chain or per KID subset.
std::mt19937_64 make_stream(std::uint64_t seed, RngStream stream, std::uint64_t index = 0);

// Uniform double in [0, 1).
double uniform01(std::mt19937_64& g);

// Uniform integer in [0, n). n must be > 0.
std::uint64_t bounded(std::mt19937_64& g, std::uint64_t n);

// Standard normal via Box-Muller. Stateless: draws two uniforms per call and
// discards the paired value, so the engine state alone captures the stream.
double normal(std::mt19937_64& g);

std::vector<double> normal_vector(std::mt19937_64& g, std::size_t n);

// Fisher-Yates using bounded(); deterministic for a given engine state.
void shuffle_indices(std::mt19937_64& g, std::vector<std::size_t>& idx);

// Engine state round trip for checkpoints.
std::string serialize_engine(const std::mt19937_64& g);
std::mt19937_64 deserialize_engine(const std::string& text);

}  // namespace qldm
