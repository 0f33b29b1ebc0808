#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lr/data.hpp"

namespace lr {

/// Reads a comma-separated numeric table. The first line must be a header
/// row; every body cell must parse as a finite number with `.` as the
/// decimal separator. Missing (empty or non-finite) cells are a hard error:
/// imputation is out of scope and must happen upstream.
///
/// Without an explicit schema a column is inferred discrete iff every one of
/// its values is integral. With a schema, column count and names must match
/// the header and discrete-declared columns must hold integral values.
DataMatrix load_csv(const std::string& path,
                    const std::optional<std::vector<ColumnSpec>>& schema = std::nullopt);

/// Writes `data` as CSV with a header row and `\n` line endings. Values are
/// printed with shortest round-trip precision, so load_csv(write_csv(d))
/// reproduces d exactly.
void write_csv(const DataMatrix& data, const std::string& path);

/// Schema sidecar: one line per column, `name,kind,lower,upper`, where kind
/// is `continuous` or `discrete` and empty fields mean an absent bound.
std::vector<ColumnSpec> load_schema(const std::string& path);

}  // namespace lr
