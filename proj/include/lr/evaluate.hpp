#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lr/data.hpp"
#include "lr/stats.hpp"

namespace lr {

/// Exact two-sample Kolmogorov-Smirnov distance: sup over the merged support
/// of |F_a - F_b| for the empirical CDFs. Symmetric, in [0, 1].
double ks_distance(std::span<const double> a, std::span<const double> b);

struct OlsFit {
    Eigen::VectorXd coefficients;  // intercept first, then terms in order
    Eigen::VectorXd std_errors;    // classical homoskedastic
    double r_squared = 0;
    double adj_r_squared = 0;
};

/// Least squares of y on X via a rank-revealing QR factorization. X is the
/// full design matrix; by convention its first column is the all-ones
/// intercept. Throws if X is rank deficient or n <= q.
OlsFit ols_fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& X);

struct RegressionSpec {
    std::string response;
    std::vector<std::string> terms;
};

/// Parses "response ~ term + term + ...". Whitespace around names is
/// ignored; names must be nonempty and distinct.
RegressionSpec parse_regression_spec(const std::string& text);

struct ColumnComparison {
    std::string name;
    ColumnStats original;
    ColumnStats synthetic;
    double ks = 0;
};

struct RegressionComparison {
    RegressionSpec spec;
    OlsFit original;
    OlsFit synthetic;
};

struct EvalReport {
    std::vector<ColumnComparison> columns;
    double mean_ks = 0;
    std::vector<RegressionComparison> regressions;
};

/// Column-by-column descriptive comparison plus KS distances, and one OLS
/// comparison per regression spec. Column sets of the two matrices must
/// match by name.
EvalReport build_report(const DataMatrix& original, const DataMatrix& synthetic,
                        std::span<const RegressionSpec> regressions);

void write_report_text(const EvalReport& report, std::ostream& out);
void write_report_json(const EvalReport& report, std::ostream& out);

}  // namespace lr
