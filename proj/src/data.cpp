#include "lr/data.hpp"

#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace lr {

DataMatrix::DataMatrix(Eigen::MatrixXd values, std::vector<ColumnSpec> schema)
    : values_(std::move(values)), schema_(std::move(schema)) {
    if (schema_.empty()) {
        throw std::invalid_argument("DataMatrix: schema must have at least one column");
    }
    if (static_cast<std::size_t>(values_.cols()) != schema_.size()) {
        throw std::invalid_argument("DataMatrix: schema size does not match column count");
    }
    std::unordered_set<std::string> seen;
    for (const auto& spec : schema_) {
        if (spec.name.empty()) {
            throw std::invalid_argument("DataMatrix: empty column name");
        }
        if (!seen.insert(spec.name).second) {
            throw std::invalid_argument("DataMatrix: duplicate column name '" + spec.name + "'");
        }
        if (spec.lower_bound && spec.upper_bound && *spec.lower_bound > *spec.upper_bound) {
            throw std::invalid_argument("DataMatrix: bounds for column '" + spec.name +
                                        "' are inverted");
        }
    }
    if (!values_.allFinite()) {
        throw std::invalid_argument("DataMatrix: values must be finite");
    }
}

Eigen::Index DataMatrix::column_index(const std::string& name) const {
    for (std::size_t j = 0; j < schema_.size(); ++j) {
        if (schema_[j].name == name) return static_cast<Eigen::Index>(j);
    }
    throw std::out_of_range("DataMatrix: no column named '" + name + "'");
}

DataMatrix select_columns(const DataMatrix& data, std::span<const std::string> names) {
    Eigen::MatrixXd out(data.rows(), static_cast<Eigen::Index>(names.size()));
    std::vector<ColumnSpec> schema;
    schema.reserve(names.size());
    for (std::size_t j = 0; j < names.size(); ++j) {
        const auto idx = data.column_index(names[j]);
        out.col(static_cast<Eigen::Index>(j)) = data.values().col(idx);
        schema.push_back(data.schema()[static_cast<std::size_t>(idx)]);
    }
    return DataMatrix(std::move(out), std::move(schema));
}

}  // namespace lr
