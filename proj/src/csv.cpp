#include "lr/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

namespace lr {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& cell, const std::string& where) {
    const std::string t = trim(cell);
    if (t.empty()) {
        throw std::runtime_error("load_csv: empty cell at " + where +
                                 "; rows with missing values must be handled before loading");
    }
    double value = 0;
    const char* begin = t.data();
    const char* end = begin + t.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw std::runtime_error("load_csv: cannot parse '" + t + "' at " + where);
    }
    if (!std::isfinite(value)) {
        throw std::runtime_error("load_csv: non-finite value at " + where);
    }
    return value;
}

std::string format_value(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("write_csv: formatting failed");
    return std::string(buf, ptr);
}

bool is_integral(double v) { return std::nearbyint(v) == v; }

}  // namespace

DataMatrix load_csv(const std::string& path,
                    const std::optional<std::vector<ColumnSpec>>& schema) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv: cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("load_csv: '" + path + "' is empty; expected a header row");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header = split_line(line);
    for (auto& h : header) h = trim(h);
    const std::size_t p = header.size();

    if (schema) {
        if (schema->size() != p) {
            throw std::runtime_error("load_csv: schema has " + std::to_string(schema->size()) +
                                     " columns but the header has " + std::to_string(p));
        }
        for (std::size_t j = 0; j < p; ++j) {
            if ((*schema)[j].name != header[j]) {
                throw std::runtime_error("load_csv: header column '" + header[j] +
                                         "' does not match schema column '" + (*schema)[j].name +
                                         "'");
            }
        }
    }

    std::vector<double> cells;
    std::int64_t n = 0;
    std::int64_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
        const auto fields = split_line(line);
        if (fields.size() != p) {
            throw std::runtime_error("load_csv: line " + std::to_string(lineno) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(p));
        }
        for (std::size_t j = 0; j < p; ++j) {
            const std::string where =
                "line " + std::to_string(lineno) + ", column '" + header[j] + "'";
            cells.push_back(parse_number(fields[j], where));
        }
        ++n;
    }

    Eigen::MatrixXd values(n, static_cast<Eigen::Index>(p));
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            values(i, static_cast<Eigen::Index>(j)) = cells[static_cast<std::size_t>(i) * p + j];
        }
    }

    std::vector<ColumnSpec> out_schema;
    if (schema) {
        out_schema = *schema;
        for (std::size_t j = 0; j < p; ++j) {
            if (out_schema[j].kind != ColumnKind::discrete) continue;
            for (std::int64_t i = 0; i < n; ++i) {
                const double v = values(i, static_cast<Eigen::Index>(j));
                if (!is_integral(v)) {
                    throw std::runtime_error("load_csv: column '" + header[j] +
                                             "' is declared discrete but holds " +
                                             format_value(v));
                }
            }
        }
    } else {
        out_schema.reserve(p);
        for (std::size_t j = 0; j < p; ++j) {
            bool integral = n > 0;
            for (std::int64_t i = 0; i < n && integral; ++i) {
                integral = is_integral(values(i, static_cast<Eigen::Index>(j)));
            }
            out_schema.push_back(
                {header[j], integral ? ColumnKind::discrete : ColumnKind::continuous,
                 std::nullopt, std::nullopt});
        }
    }

    return DataMatrix(std::move(values), std::move(out_schema));
}

void write_csv(const DataMatrix& data, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_csv: cannot open '" + path + "' for writing");
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
        if (j > 0) out << ',';
        out << data.schema()[static_cast<std::size_t>(j)].name;
    }
    out << '\n';
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
        for (Eigen::Index j = 0; j < data.cols(); ++j) {
            if (j > 0) out << ',';
            out << format_value(data.values()(i, j));
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write_csv: write to '" + path + "' failed");
}

std::vector<ColumnSpec> load_schema(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_schema: cannot open '" + path + "'");
    std::vector<ColumnSpec> schema;
    std::string line;
    std::int64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto fields = split_line(line);
        if (fields.size() != 4) {
            throw std::runtime_error("load_schema: line " + std::to_string(lineno) +
                                     " must be 'name,kind,lower,upper'");
        }
        ColumnSpec spec;
        spec.name = trim(fields[0]);
        if (spec.name.empty()) {
            throw std::runtime_error("load_schema: empty column name at line " +
                                     std::to_string(lineno));
        }
        const std::string kind = trim(fields[1]);
        if (kind == "continuous") {
            spec.kind = ColumnKind::continuous;
        } else if (kind == "discrete") {
            spec.kind = ColumnKind::discrete;
        } else {
            throw std::runtime_error("load_schema: unknown kind '" + kind + "' at line " +
                                     std::to_string(lineno));
        }
        const std::string lo = trim(fields[2]);
        const std::string hi = trim(fields[3]);
        const std::string where = "line " + std::to_string(lineno);
        if (!lo.empty()) spec.lower_bound = parse_number(lo, where);
        if (!hi.empty()) spec.upper_bound = parse_number(hi, where);
        if (spec.lower_bound && spec.upper_bound && *spec.lower_bound > *spec.upper_bound) {
            throw std::runtime_error("load_schema: inverted bounds at " + where);
        }
        schema.push_back(std::move(spec));
    }
    if (schema.empty()) {
        throw std::runtime_error("load_schema: '" + path + "' holds no column entries");
    }
    return schema;
}

}  // namespace lr
