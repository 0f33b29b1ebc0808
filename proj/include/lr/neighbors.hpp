#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "lr/data.hpp"

namespace lr {

/// k-nearest-neighbor lists for every observation: row i holds the indices
/// of the k observations closest to i in nondecreasing distance order, with
/// i itself always in slot 0 (distance zero). Immutable once built.
class NeighborIndex {
public:
    NeighborIndex(int k, std::int64_t n, std::vector<std::int32_t> ids);

    int k() const { return k_; }
    std::int64_t n() const { return n_; }
    std::span<const std::int32_t> row(std::int64_t i) const;

private:
    int k_;
    std::int64_t n_;
    std::vector<std::int32_t> ids_;  // n*k, row-major
};

/// Exact k-nearest-neighbor search under Euclidean distance (squared
/// distances internally). Equal distances are broken by ascending
/// observation index so results are reproducible. Parallel over query rows.
NeighborIndex compute_neighbors(const DataMatrix& data, int k, int threads = 0);

/// The k-by-p matrix of neighbor rows of observation i, in neighbor-list
/// order. Rows are taken from `data` as passed, so callers who searched in
/// standardized units gather from the raw-unit matrix here.
Eigen::MatrixXd subsample(const NeighborIndex& index, const DataMatrix& data, std::int64_t i);

}  // namespace lr
