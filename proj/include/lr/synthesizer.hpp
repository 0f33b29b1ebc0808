#pragma once

#include <cstdint>
#include <vector>

#include "lr/data.hpp"
#include "lr/local_models.hpp"
#include "lr/rng.hpp"

namespace lr {

enum class Rounding { unbiased, paper_literal, none };
enum class Clipping { observed_range, schema_bounds, none };

/// Stream id of the subsample-id draws. Row t uses stream id t, so the tag
/// keeps this stream outside any realistic row range.
inline constexpr std::uint64_t kAuxStreamTag = 0x8000000000000000ull;

struct SynthConfig {
    int k = 15;
    std::int64_t n_prime = 0;  // target size; 0 resolves to the input size
    Family family = Family::mvn;
    bool resample_subsamples = true;   // off pins n_prime = n and keeps one row per subsample
    bool standardize_distances = true; // neighbor search in z-units; fitting always in raw units
    Rounding rounding = Rounding::unbiased;
    Clipping clipping = Clipping::observed_range;
    std::uint64_t seed = 0;
};

struct SynthResult {
    DataMatrix synthetic;
    std::vector<std::int64_t> subsample_ids;        // which subsample produced each row
    SynthConfig config;                             // echo of the resolved configuration
    std::vector<std::int64_t> neighbor_use_counts;  // per observation; sums to n_prime * k
};

/// n_prime draws with replacement and equal probability from {0..n-1}; with
/// resampling off, the identity sequence 0..n-1 instead.
std::vector<std::int64_t> resample_subsample_ids(std::int64_t n, std::int64_t n_prime,
                                                 bool resample, RandomStream& rng);

/// Randomized rounding to an adjacent integer. `unbiased` takes the ceiling
/// with probability value - floor(value), so the expectation equals the
/// input. `paper_literal` uses the flipped probabilities (floor with
/// probability value - floor(value)); its expectation of 2.3 is 2.7. The
/// result is returned as an integral double.
double stochastic_round(double value, RandomStream& rng, Rounding mode);

/// Componentwise clamp of `row` into [lo, hi]; +-infinity means unbounded.
Eigen::VectorXd clip(const Eigen::VectorXd& row, const Eigen::VectorXd& lo,
                     const Eigen::VectorXd& hi);

/// The full pipeline: neighbor subsamples, resampled subsample ids, one
/// locally fitted model and one draw per synthetic row, then stochastic
/// rounding of discrete columns and clipping. Deterministic for a given
/// (data, config): every row draws from its own seed-derived substream, so
/// the thread count never changes the output.
SynthResult synthesize(const DataMatrix& data, const SynthConfig& config, int threads = 0);

}  // namespace lr
