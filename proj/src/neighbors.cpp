#include "lr/neighbors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "lr/parallel.hpp"

namespace lr {

NeighborIndex::NeighborIndex(int k, std::int64_t n, std::vector<std::int32_t> ids)
    : k_(k), n_(n), ids_(std::move(ids)) {
    if (k_ < 1) throw std::invalid_argument("NeighborIndex: k must be at least 1");
    if (n_ < 1) throw std::invalid_argument("NeighborIndex: n must be at least 1");
    if (ids_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(k_)) {
        throw std::invalid_argument("NeighborIndex: id buffer size mismatch");
    }
}

std::span<const std::int32_t> NeighborIndex::row(std::int64_t i) const {
    if (i < 0 || i >= n_) throw std::out_of_range("NeighborIndex: row out of range");
    return {ids_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(k_),
            static_cast<std::size_t>(k_)};
}

NeighborIndex compute_neighbors(const DataMatrix& data, int k, int threads) {
    const std::int64_t n = data.rows();
    const std::int64_t p = data.cols();
    if (n < 1) throw std::invalid_argument("compute_neighbors: needs at least one row");
    if (k < 1) throw std::invalid_argument("compute_neighbors: k must be at least 1");
    if (k > n) {
        throw std::invalid_argument("compute_neighbors: k=" + std::to_string(k) +
                                    " exceeds the number of rows (" + std::to_string(n) + ")");
    }

    std::vector<std::int32_t> ids(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
    if (k == 1) {
        for (std::int64_t i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(i);
        return NeighborIndex(k, n, std::move(ids));
    }

    // Row-major copy so each candidate row is contiguous in the scan below.
    std::vector<double> rows(static_cast<std::size_t>(n) * static_cast<std::size_t>(p));
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = 0; j < p; ++j) {
            rows[static_cast<std::size_t>(i) * static_cast<std::size_t>(p) +
                 static_cast<std::size_t>(j)] = data.values()(i, j);
        }
    }

    parallel_for(n, threads, [&](std::int64_t begin, std::int64_t end) {
        std::vector<std::pair<double, std::int32_t>> cand(static_cast<std::size_t>(n));
        for (std::int64_t i = begin; i < end; ++i) {
            const double* qi = rows.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(p);
            for (std::int64_t c = 0; c < n; ++c) {
                const double* rc = rows.data() + static_cast<std::size_t>(c) * static_cast<std::size_t>(p);
                double d2 = 0;
                for (std::int64_t j = 0; j < p; ++j) {
                    const double diff = qi[j] - rc[j];
                    d2 += diff * diff;
                }
                cand[static_cast<std::size_t>(c)] = {d2, static_cast<std::int32_t>(c)};
            }
            // Sentinel key forces the observation itself into slot 0 even when
            // other rows are bitwise-identical to it.
            cand[static_cast<std::size_t>(i)].first = -1.0;
            const auto cmp = [](const auto& a, const auto& b) {
                return a.first != b.first ? a.first < b.first : a.second < b.second;
            };
            std::nth_element(cand.begin(), cand.begin() + (k - 1), cand.end(), cmp);
            std::sort(cand.begin(), cand.begin() + k, cmp);
            std::int32_t* out = ids.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(k);
            for (int s = 0; s < k; ++s) out[s] = cand[static_cast<std::size_t>(s)].second;
        }
    });

    return NeighborIndex(k, n, std::move(ids));
}

Eigen::MatrixXd subsample(const NeighborIndex& index, const DataMatrix& data, std::int64_t i) {
    if (data.rows() != index.n()) {
        throw std::invalid_argument("subsample: data row count does not match the index");
    }
    const auto neighbors = index.row(i);
    Eigen::MatrixXd out(static_cast<Eigen::Index>(neighbors.size()), data.cols());
    for (std::size_t s = 0; s < neighbors.size(); ++s) {
        out.row(static_cast<Eigen::Index>(s)) = data.values().row(neighbors[s]);
    }
    return out;
}

}  // namespace lr
