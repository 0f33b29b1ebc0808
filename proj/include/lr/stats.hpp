#pragma once

#include <utility>
#include <vector>

#include "lr/data.hpp"

namespace lr {

/// Column centering/scaling parameters. Constant columns get scale 1 so the
/// transform stays invertible.
struct ScalingParams {
    std::vector<double> means;
    std::vector<double> scales;
};

struct ColumnStats {
    double mean = 0;
    double std_dev = 0;  // n-1 denominator
    double median = 0;
    double min = 0;
    double max = 0;
};

struct DescriptiveStats {
    std::vector<ColumnStats> columns;
};

/// Z-standardizes every column: output columns have mean 0 and sample
/// standard deviation 1. A constant column maps to all zeros with scale 1.
/// The schema is carried over unchanged.
std::pair<DataMatrix, ScalingParams> standardize(const DataMatrix& data);

/// Per-column mean, sample std (n-1), median (midpoint rule for even n),
/// min and max. Requires at least one row.
DescriptiveStats describe(const DataMatrix& data);

}  // namespace lr
