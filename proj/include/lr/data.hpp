#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace lr {

enum class ColumnKind { continuous, discrete };

/// Per-column metadata. Bounds are optional and only consulted by
/// bound-aware clipping; absent bounds mean "unbounded on that side".
struct ColumnSpec {
    std::string name;
    ColumnKind kind = ColumnKind::continuous;
    std::optional<double> lower_bound;
    std::optional<double> upper_bound;
};

/// An n-by-p numeric table with a column schema. Values are validated to be
/// finite on construction and the object is immutable afterwards, so it can
/// be shared freely across threads.
class DataMatrix {
public:
    DataMatrix(Eigen::MatrixXd values, std::vector<ColumnSpec> schema);

    Eigen::Index rows() const { return values_.rows(); }
    Eigen::Index cols() const { return values_.cols(); }
    const Eigen::MatrixXd& values() const { return values_; }
    const std::vector<ColumnSpec>& schema() const { return schema_; }
    const ColumnSpec& column(Eigen::Index j) const { return schema_.at(static_cast<std::size_t>(j)); }

    /// Index of the column named `name`, or an exception naming it.
    Eigen::Index column_index(const std::string& name) const;

private:
    Eigen::MatrixXd values_;
    std::vector<ColumnSpec> schema_;
};

/// New matrix holding the named columns, in the order given.
DataMatrix select_columns(const DataMatrix& data, std::span<const std::string> names);

}  // namespace lr
