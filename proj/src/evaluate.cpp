#include "lr/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <Eigen/QR>
#include <json.hpp>

namespace lr {

double ks_distance(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("ks_distance: both samples must be nonempty");
    }
    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    std::size_t ia = 0;
    std::size_t ib = 0;
    double sup = 0;
    // Evaluate |F_a - F_b| at every merged sample point; the ECDF difference
    // is constant between points, so this sweep is exact.
    while (ia < sa.size() && ib < sb.size()) {
        const double t = std::min(sa[ia], sb[ib]);
        while (ia < sa.size() && sa[ia] <= t) ++ia;
        while (ib < sb.size() && sb[ib] <= t) ++ib;
        sup = std::max(sup, std::abs(static_cast<double>(ia) / na -
                                     static_cast<double>(ib) / nb));
    }
    return sup;
}

OlsFit ols_fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& X) {
    const Eigen::Index n = X.rows();
    const Eigen::Index q = X.cols();
    if (y.size() != n) throw std::invalid_argument("ols_fit: y length must match the design rows");
    if (q < 1) throw std::invalid_argument("ols_fit: design needs at least one column");
    if (n <= q) {
        throw std::invalid_argument("ols_fit: needs more rows than coefficients (n=" +
                                    std::to_string(n) + ", q=" + std::to_string(q) + ")");
    }

    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < q) {
        throw std::runtime_error("ols_fit: design matrix is rank deficient (rank " +
                                 std::to_string(qr.rank()) + " of " + std::to_string(q) + ")");
    }

    OlsFit fit;
    fit.coefficients = qr.solve(y);
    const Eigen::VectorXd residuals = y - X * fit.coefficients;
    const double rss = residuals.squaredNorm();
    const double sigma2 = rss / static_cast<double>(n - q);

    // X P = Q R, so (X^T X)^{-1} = P R^{-1} R^{-T} P^T.
    const Eigen::MatrixXd r_inv = qr.matrixR()
                                      .topLeftCorner(q, q)
                                      .triangularView<Eigen::Upper>()
                                      .solve(Eigen::MatrixXd::Identity(q, q));
    const Eigen::MatrixXd cov_permuted = r_inv * r_inv.transpose();
    const Eigen::MatrixXd cov = qr.colsPermutation() * cov_permuted *
                                qr.colsPermutation().transpose();
    fit.std_errors = (sigma2 * cov.diagonal().array()).cwiseMax(0.0).sqrt();

    const double tss = (y.array() - y.mean()).square().sum();
    fit.r_squared = tss > 0 ? std::clamp(1.0 - rss / tss, 0.0, 1.0) : 0.0;
    fit.adj_r_squared = 1.0 - (1.0 - fit.r_squared) * static_cast<double>(n - 1) /
                                  static_cast<double>(n - q);
    return fit;
}

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

}  // namespace

RegressionSpec parse_regression_spec(const std::string& text) {
    const auto tilde = text.find('~');
    if (tilde == std::string::npos || text.find('~', tilde + 1) != std::string::npos) {
        throw std::invalid_argument(
            "regression spec must look like 'response ~ term + term', with one '~'");
    }
    RegressionSpec spec;
    spec.response = trim(text.substr(0, tilde));
    if (spec.response.empty()) {
        throw std::invalid_argument("regression spec: empty response name");
    }
    std::string rhs = text.substr(tilde + 1);
    std::string::size_type start = 0;
    std::unordered_set<std::string> seen{spec.response};
    while (true) {
        const auto plus = rhs.find('+', start);
        const std::string term =
            trim(plus == std::string::npos ? rhs.substr(start) : rhs.substr(start, plus - start));
        if (term.empty()) {
            throw std::invalid_argument("regression spec: empty term");
        }
        if (!seen.insert(term).second) {
            throw std::invalid_argument("regression spec: '" + term + "' appears twice");
        }
        spec.terms.push_back(term);
        if (plus == std::string::npos) break;
        start = plus + 1;
    }
    return spec;
}

namespace {

std::span<const double> column_span(const DataMatrix& data, Eigen::Index j) {
    // Column-major storage makes each column contiguous.
    return {data.values().col(j).data(), static_cast<std::size_t>(data.rows())};
}

OlsFit fit_spec(const DataMatrix& data, const RegressionSpec& spec) {
    const Eigen::VectorXd y = data.values().col(data.column_index(spec.response));
    Eigen::MatrixXd design(data.rows(), static_cast<Eigen::Index>(spec.terms.size()) + 1);
    design.col(0).setOnes();
    for (std::size_t t = 0; t < spec.terms.size(); ++t) {
        design.col(static_cast<Eigen::Index>(t) + 1) =
            data.values().col(data.column_index(spec.terms[t]));
    }
    return ols_fit(y, design);
}

}  // namespace

EvalReport build_report(const DataMatrix& original, const DataMatrix& synthetic,
                        std::span<const RegressionSpec> regressions) {
    if (original.rows() < 1 || synthetic.rows() < 1) {
        throw std::invalid_argument("build_report: both samples must be nonempty");
    }
    if (original.cols() != synthetic.cols()) {
        throw std::invalid_argument("build_report: column counts differ");
    }
    for (Eigen::Index j = 0; j < original.cols(); ++j) {
        if (original.column(j).name != synthetic.column(j).name) {
            throw std::invalid_argument("build_report: column " + std::to_string(j) + " is '" +
                                        original.column(j).name + "' in one sample and '" +
                                        synthetic.column(j).name + "' in the other");
        }
    }

    EvalReport report;
    const DescriptiveStats orig_stats = describe(original);
    const DescriptiveStats synth_stats = describe(synthetic);
    double ks_sum = 0;
    for (Eigen::Index j = 0; j < original.cols(); ++j) {
        ColumnComparison cmp;
        cmp.name = original.column(j).name;
        cmp.original = orig_stats.columns[static_cast<std::size_t>(j)];
        cmp.synthetic = synth_stats.columns[static_cast<std::size_t>(j)];
        cmp.ks = ks_distance(column_span(original, j), column_span(synthetic, j));
        ks_sum += cmp.ks;
        report.columns.push_back(std::move(cmp));
    }
    report.mean_ks = ks_sum / static_cast<double>(original.cols());

    for (const auto& spec : regressions) {
        RegressionComparison cmp;
        cmp.spec = spec;
        cmp.original = fit_spec(original, spec);
        cmp.synthetic = fit_spec(synthetic, spec);
        report.regressions.push_back(std::move(cmp));
    }
    return report;
}

namespace {

std::string fmt(double v, int precision = 4) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision) << v;
    return os.str();
}

}  // namespace

void write_report_text(const EvalReport& report, std::ostream& out) {
    std::size_t name_width = 6;
    for (const auto& c : report.columns) name_width = std::max(name_width, c.name.size());

    out << std::left << std::setw(static_cast<int>(name_width) + 2) << "column"
        << std::setw(11) << "sample" << std::right << std::setw(12) << "mean" << std::setw(12)
        << "std_dev" << std::setw(12) << "median" << std::setw(12) << "min" << std::setw(12)
        << "max" << std::setw(10) << "ks" << '\n';
    const auto stat_row = [&](const std::string& name, const char* sample,
                              const ColumnStats& s, const std::string& ks) {
        out << std::left << std::setw(static_cast<int>(name_width) + 2) << name << std::setw(11)
            << sample << std::right << std::setw(12) << fmt(s.mean) << std::setw(12)
            << fmt(s.std_dev) << std::setw(12) << fmt(s.median) << std::setw(12) << fmt(s.min)
            << std::setw(12) << fmt(s.max) << std::setw(10) << ks << '\n';
    };
    for (const auto& c : report.columns) {
        stat_row(c.name, "original", c.original, "");
        stat_row("", "synthetic", c.synthetic, fmt(c.ks));
    }
    out << '\n' << "average ks  " << fmt(report.mean_ks) << '\n';

    for (const auto& r : report.regressions) {
        out << '\n' << "regression  " << r.spec.response << " ~ ";
        for (std::size_t t = 0; t < r.spec.terms.size(); ++t) {
            if (t > 0) out << " + ";
            out << r.spec.terms[t];
        }
        out << '\n';
        std::size_t term_width = 11;
        for (const auto& term : r.spec.terms) term_width = std::max(term_width, term.size());
        out << std::left << std::setw(static_cast<int>(term_width) + 2) << "term" << std::right
            << std::setw(22) << "original (se)" << std::setw(22) << "synthetic (se)" << '\n';
        const auto coef_row = [&](const std::string& term, Eigen::Index idx) {
            out << std::left << std::setw(static_cast<int>(term_width) + 2) << term << std::right
                << std::setw(22)
                << fmt(r.original.coefficients(idx)) + " (" + fmt(r.original.std_errors(idx)) + ")"
                << std::setw(22)
                << fmt(r.synthetic.coefficients(idx)) + " (" + fmt(r.synthetic.std_errors(idx)) +
                       ")"
                << '\n';
        };
        coef_row("(intercept)", 0);
        for (std::size_t t = 0; t < r.spec.terms.size(); ++t) {
            coef_row(r.spec.terms[t], static_cast<Eigen::Index>(t) + 1);
        }
        out << std::left << std::setw(static_cast<int>(term_width) + 2) << "r_squared"
            << std::right << std::setw(22) << fmt(r.original.r_squared) << std::setw(22)
            << fmt(r.synthetic.r_squared) << '\n';
        out << std::left << std::setw(static_cast<int>(term_width) + 2) << "adj_r_squared"
            << std::right << std::setw(22) << fmt(r.original.adj_r_squared) << std::setw(22)
            << fmt(r.synthetic.adj_r_squared) << '\n';
    }
}

namespace {

nlohmann::json stats_json(const ColumnStats& s) {
    return {{"mean", s.mean},
            {"std_dev", s.std_dev},
            {"median", s.median},
            {"min", s.min},
            {"max", s.max}};
}

nlohmann::json fit_json(const OlsFit& fit) {
    return {{"coefficients",
             std::vector<double>(fit.coefficients.data(),
                                 fit.coefficients.data() + fit.coefficients.size())},
            {"std_errors",
             std::vector<double>(fit.std_errors.data(),
                                 fit.std_errors.data() + fit.std_errors.size())},
            {"r_squared", fit.r_squared},
            {"adj_r_squared", fit.adj_r_squared}};
}

}  // namespace

void write_report_json(const EvalReport& report, std::ostream& out) {
    nlohmann::json j;
    j["columns"] = nlohmann::json::array();
    for (const auto& c : report.columns) {
        j["columns"].push_back({{"name", c.name},
                                {"ks", c.ks},
                                {"original", stats_json(c.original)},
                                {"synthetic", stats_json(c.synthetic)}});
    }
    j["average_ks"] = report.mean_ks;
    j["regressions"] = nlohmann::json::array();
    for (const auto& r : report.regressions) {
        j["regressions"].push_back({{"response", r.spec.response},
                                    {"terms", r.spec.terms},
                                    {"original", fit_json(r.original)},
                                    {"synthetic", fit_json(r.synthetic)}});
    }
    out << j.dump(2) << '\n';
}

}  // namespace lr
