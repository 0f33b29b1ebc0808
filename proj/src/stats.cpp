#include "lr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace lr {

namespace {

void require_rows(const DataMatrix& data, const char* op) {
    if (data.rows() < 1) {
        throw std::invalid_argument(std::string(op) + ": needs at least one row");
    }
}

}  // namespace

std::pair<DataMatrix, ScalingParams> standardize(const DataMatrix& data) {
    require_rows(data, "standardize");
    const Eigen::Index n = data.rows();
    const Eigen::Index p = data.cols();
    Eigen::MatrixXd out(n, p);
    ScalingParams params;
    params.means.resize(static_cast<std::size_t>(p));
    params.scales.resize(static_cast<std::size_t>(p));
    for (Eigen::Index j = 0; j < p; ++j) {
        const auto col = data.values().col(j);
        const bool constant = col.minCoeff() == col.maxCoeff();
        // a constant column's mean is its common value exactly, so the
        // inverse transform reproduces it without summation rounding
        const double mean = constant ? col(0) : col.mean();
        double scale = 1.0;
        if (!constant && n > 1) {
            scale = std::sqrt((col.array() - mean).square().sum() / static_cast<double>(n - 1));
        }
        params.means[static_cast<std::size_t>(j)] = mean;
        params.scales[static_cast<std::size_t>(j)] = scale;
        if (constant) {
            out.col(j).setZero();
        } else {
            out.col(j) = (col.array() - mean) / scale;
        }
    }
    return {DataMatrix(std::move(out), data.schema()), std::move(params)};
}

DescriptiveStats describe(const DataMatrix& data) {
    require_rows(data, "describe");
    const Eigen::Index n = data.rows();
    DescriptiveStats stats;
    stats.columns.reserve(static_cast<std::size_t>(data.cols()));
    std::vector<double> sorted(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
        const auto col = data.values().col(j);
        ColumnStats cs;
        cs.mean = col.mean();
        cs.std_dev = n > 1 ? std::sqrt((col.array() - cs.mean).square().sum() /
                                       static_cast<double>(n - 1))
                           : 0.0;
        cs.min = col.minCoeff();
        cs.max = col.maxCoeff();
        for (Eigen::Index i = 0; i < n; ++i) sorted[static_cast<std::size_t>(i)] = col(i);
        std::sort(sorted.begin(), sorted.end());
        const std::size_t mid = sorted.size() / 2;
        cs.median = sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
        stats.columns.push_back(cs);
    }
    return stats;
}

}  // namespace lr
