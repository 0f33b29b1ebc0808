#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "lr/data.hpp"
#include "lr/neighbors.hpp"
#include "lr/rng.hpp"

using lr::ColumnKind;
using lr::ColumnSpec;
using lr::DataMatrix;
using lr::NeighborIndex;

namespace {

DataMatrix from_columns(const std::vector<std::vector<double>>& cols) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(cols[0].size()),
                      static_cast<Eigen::Index>(cols.size()));
    std::vector<ColumnSpec> schema;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (std::size_t i = 0; i < cols[j].size(); ++i) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cols[j][i];
        }
        schema.push_back({"c" + std::to_string(j), ColumnKind::continuous, {}, {}});
    }
    return DataMatrix(std::move(m), std::move(schema));
}

DataMatrix random_table(std::int64_t n, Eigen::Index p, std::uint64_t seed) {
    lr::RandomStream rng(seed);
    Eigen::MatrixXd m(n, p);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < p; ++j) m(i, j) = rng.normal();
    }
    std::vector<ColumnSpec> schema;
    for (Eigen::Index j = 0; j < p; ++j) {
        schema.push_back({"c" + std::to_string(j), ColumnKind::continuous, {}, {}});
    }
    return DataMatrix(std::move(m), std::move(schema));
}

// Reference search: full pairwise distance table, one sort per query. Shares
// only the scalar difference-of-squares accumulation with the production
// code, so agreement is meaningful.
std::vector<std::vector<std::int32_t>> brute_force(const DataMatrix& data, int k) {
    const std::int64_t n = data.rows();
    std::vector<std::vector<std::int32_t>> result(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        std::vector<std::pair<double, std::int32_t>> cand;
        for (std::int64_t c = 0; c < n; ++c) {
            double d2 = 0;
            for (Eigen::Index j = 0; j < data.cols(); ++j) {
                const double diff = data.values()(i, j) - data.values()(c, j);
                d2 += diff * diff;
            }
            if (c == i) d2 = -1.0;
            cand.push_back({d2, static_cast<std::int32_t>(c)});
        }
        std::sort(cand.begin(), cand.end());
        for (int s = 0; s < k; ++s) result[static_cast<std::size_t>(i)].push_back(cand[static_cast<std::size_t>(s)].second);
    }
    return result;
}

}  // namespace

TEST_CASE("nearest neighbors on a 1-d line") {
    const auto d = from_columns({{0.0, 1.0, 10.0}});
    const NeighborIndex idx = lr::compute_neighbors(d, 2);
    CHECK(idx.row(0)[0] == 0);
    CHECK(idx.row(0)[1] == 1);
    CHECK(idx.row(1)[0] == 1);
    CHECK(idx.row(1)[1] == 0);
    CHECK(idx.row(2)[0] == 2);
    CHECK(idx.row(2)[1] == 1);
}

TEST_CASE("each observation is its own first neighbor, even under duplicates") {
    const auto d = from_columns({{5.0, 5.0, 7.0}});
    const NeighborIndex idx = lr::compute_neighbors(d, 2);
    CHECK(idx.row(0)[0] == 0);
    CHECK(idx.row(0)[1] == 1);
    CHECK(idx.row(1)[0] == 1);
    CHECK(idx.row(1)[1] == 0);
}

TEST_CASE("equal distances break toward the smaller index") {
    // Candidates 1 and 2 sit at the same distance from 0.
    const auto d = from_columns({{0.0, 1.0, 1.0, 5.0}});
    const NeighborIndex idx = lr::compute_neighbors(d, 3);
    CHECK(idx.row(0)[0] == 0);
    CHECK(idx.row(0)[1] == 1);
    CHECK(idx.row(0)[2] == 2);
}

TEST_CASE("k equal to one returns only the observation itself") {
    const auto d = random_table(20, 3, 11);
    const NeighborIndex idx = lr::compute_neighbors(d, 1);
    for (std::int64_t i = 0; i < 20; ++i) {
        CHECK(idx.row(i).size() == 1);
        CHECK(idx.row(i)[0] == static_cast<std::int32_t>(i));
    }
}

TEST_CASE("k equal to n lists every observation") {
    const auto d = random_table(12, 2, 13);
    const NeighborIndex idx = lr::compute_neighbors(d, 12);
    for (std::int64_t i = 0; i < 12; ++i) {
        std::vector<std::int32_t> ids(idx.row(i).begin(), idx.row(i).end());
        CHECK(ids[0] == static_cast<std::int32_t>(i));
        std::sort(ids.begin(), ids.end());
        for (std::int32_t c = 0; c < 12; ++c) CHECK(ids[static_cast<std::size_t>(c)] == c);
    }
}

TEST_CASE("k larger than n is rejected") {
    const auto d = random_table(5, 2, 17);
    CHECK_THROWS(lr::compute_neighbors(d, 6));
    CHECK_THROWS(lr::compute_neighbors(d, 0));
}

TEST_CASE("search matches the reference implementation exactly") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        lr::RandomStream pick(seed + 1000);
        const auto n = static_cast<std::int64_t>(10 + pick.uniform_int(60));
        const auto p = static_cast<Eigen::Index>(1 + pick.uniform_int(5));
        const int k = static_cast<int>(1 + pick.uniform_int(static_cast<std::uint64_t>(n)));
        const auto d = random_table(n, p, seed);
        const NeighborIndex idx = lr::compute_neighbors(d, k);
        const auto expected = brute_force(d, k);
        for (std::int64_t i = 0; i < n; ++i) {
            for (int s = 0; s < k; ++s) {
                REQUIRE(idx.row(i)[static_cast<std::size_t>(s)] ==
                        expected[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)]);
            }
        }
    }
}

TEST_CASE("duplicate-heavy integer grids match the reference exactly") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        lr::RandomStream rng(seed + 2000);
        const std::int64_t n = 50;
        Eigen::MatrixXd m(n, 2);
        for (Eigen::Index i = 0; i < n; ++i) {
            m(i, 0) = static_cast<double>(rng.uniform_int(4));
            m(i, 1) = static_cast<double>(rng.uniform_int(4));
        }
        const DataMatrix d(m, {{"a", ColumnKind::continuous, {}, {}},
                               {"b", ColumnKind::continuous, {}, {}}});
        const NeighborIndex idx = lr::compute_neighbors(d, 9);
        const auto expected = brute_force(d, 9);
        for (std::int64_t i = 0; i < n; ++i) {
            for (int s = 0; s < 9; ++s) {
                REQUIRE(idx.row(i)[static_cast<std::size_t>(s)] ==
                        expected[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)]);
            }
        }
    }
}

TEST_CASE("thread count does not change the result") {
    const auto d = random_table(300, 4, 23);
    const NeighborIndex a = lr::compute_neighbors(d, 10, 1);
    const NeighborIndex b = lr::compute_neighbors(d, 10, 7);
    for (std::int64_t i = 0; i < 300; ++i) {
        for (int s = 0; s < 10; ++s) {
            REQUIRE(a.row(i)[static_cast<std::size_t>(s)] == b.row(i)[static_cast<std::size_t>(s)]);
        }
    }
}

TEST_CASE("subsample gathers neighbor rows in list order") {
    const auto d = from_columns({{0.0, 1.0, 10.0}, {3.0, 4.0, 5.0}});
    const NeighborIndex idx = lr::compute_neighbors(d, 2);
    const Eigen::MatrixXd sub = lr::subsample(idx, d, 2);
    CHECK(sub.rows() == 2);
    CHECK(sub.cols() == 2);
    CHECK(sub(0, 0) == 10.0);  // row 2 itself
    CHECK(sub(0, 1) == 5.0);
    CHECK(sub(1, 0) == 1.0);  // its nearest neighbor, row 1
    CHECK(sub(1, 1) == 4.0);
}

TEST_CASE("subsample can gather from a different matrix than the search space") {
    // Search on one matrix, gather from another with the same row ids: the
    // standardized-search/raw-fit split relies on this.
    const auto raw = from_columns({{100.0, 101.0, 110.0}});
    const auto scaled = from_columns({{0.0, 0.1, 1.0}});
    const NeighborIndex idx = lr::compute_neighbors(scaled, 2);
    const Eigen::MatrixXd sub = lr::subsample(idx, raw, 0);
    CHECK(sub(0, 0) == 100.0);
    CHECK(sub(1, 0) == 101.0);
}
