#include "lr/local_models.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace lr {

namespace {

constexpr std::array<double, 5> kRidgeLadder = {0.0, 1e-12, 1e-10, 1e-8, 1e-6};
constexpr double kReconstructTol = 1e-8;

}  // namespace

MvnParams fit_mvn(const Eigen::Ref<const Eigen::MatrixXd>& subsample) {
    const Eigen::Index k = subsample.rows();
    const Eigen::Index p = subsample.cols();
    if (k < 1 || p < 1) throw std::invalid_argument("fit_mvn: empty subsample");

    // A column whose values are all identical is pinned: its mean is the
    // common value itself, not a rounded sum, so sampling reproduces it
    // bit for bit.
    std::vector<bool> constant(static_cast<std::size_t>(p));
    Eigen::VectorXd mean(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        const auto col = subsample.col(j);
        const bool is_const = col.minCoeff() == col.maxCoeff();
        constant[static_cast<std::size_t>(j)] = is_const;
        mean(j) = is_const ? col(0) : col.mean();
    }

    MvnParams params;
    params.mean = mean;
    params.covariance = Eigen::MatrixXd::Zero(p, p);
    params.factor = Eigen::MatrixXd::Zero(p, p);
    params.ridge = 0;

    if (k > 1) {
        const Eigen::MatrixXd centered = subsample.rowwise() - mean.transpose();
        params.covariance.selfadjointView<Eigen::Lower>().rankUpdate(
            centered.transpose(), 1.0 / static_cast<double>(k - 1));
        params.covariance = params.covariance.selfadjointView<Eigen::Lower>();
        for (Eigen::Index j = 0; j < p; ++j) {
            if (constant[static_cast<std::size_t>(j)]) {
                params.covariance.row(j).setZero();
                params.covariance.col(j).setZero();
            }
        }
    }

    std::vector<Eigen::Index> active;
    for (Eigen::Index j = 0; j < p; ++j) {
        if (!constant[static_cast<std::size_t>(j)]) active.push_back(j);
    }
    const auto a = static_cast<Eigen::Index>(active.size());
    if (a == 0) return params;

    Eigen::MatrixXd block(a, a);
    for (Eigen::Index r = 0; r < a; ++r) {
        for (Eigen::Index c = 0; c < a; ++c) {
            block(r, c) = params.covariance(active[static_cast<std::size_t>(r)],
                                            active[static_cast<std::size_t>(c)]);
        }
    }

    const double diag_scale = block.diagonal().mean();
    for (const double rel : kRidgeLadder) {
        const double ridge = rel * diag_scale;
        Eigen::MatrixXd target = block;
        target.diagonal().array() += ridge;
        const Eigen::LLT<Eigen::MatrixXd> llt(target);
        if (llt.info() != Eigen::Success) continue;
        const Eigen::MatrixXd L = llt.matrixL();
        const double err = (L * L.transpose() - target).norm();
        const double scale = target.norm();
        if (err > kReconstructTol * (scale > 0 ? scale : 1.0)) continue;
        // Active indices are increasing, so scattering L back keeps the
        // full factor lower triangular.
        for (Eigen::Index r = 0; r < a; ++r) {
            for (Eigen::Index c = 0; c <= r; ++c) {
                params.factor(active[static_cast<std::size_t>(r)],
                              active[static_cast<std::size_t>(c)]) = L(r, c);
            }
        }
        params.ridge = ridge;
        return params;
    }
    throw std::runtime_error("fit_mvn: covariance factorization failed at every ridge level");
}

Eigen::VectorXd sample_mvn(const MvnParams& params, RandomStream& rng) {
    const Eigen::Index p = params.mean.size();
    Eigen::VectorXd z(p);
    for (Eigen::Index j = 0; j < p; ++j) z(j) = rng.normal();
    return params.mean + params.factor * z;
}

UniformBoxParams fit_uniform(const Eigen::Ref<const Eigen::MatrixXd>& subsample) {
    if (subsample.rows() < 1 || subsample.cols() < 1) {
        throw std::invalid_argument("fit_uniform: empty subsample");
    }
    UniformBoxParams params;
    params.lo = subsample.colwise().minCoeff();
    params.hi = subsample.colwise().maxCoeff();
    return params;
}

Eigen::VectorXd sample_uniform(const UniformBoxParams& params, RandomStream& rng) {
    const Eigen::Index p = params.lo.size();
    Eigen::VectorXd out(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        // Degenerate sides (lo == hi) reproduce the constant exactly.
        out(j) = params.lo(j) + (params.hi(j) - params.lo(j)) * rng.uniform();
    }
    return out;
}

LocalModel fit_local(Family family, const Eigen::Ref<const Eigen::MatrixXd>& subsample) {
    if (family == Family::mvn) return fit_mvn(subsample);
    return fit_uniform(subsample);
}

Eigen::VectorXd sample_local(const LocalModel& model, RandomStream& rng) {
    if (const auto* mvn = std::get_if<MvnParams>(&model)) return sample_mvn(*mvn, rng);
    return sample_uniform(std::get<UniformBoxParams>(model), rng);
}

}  // namespace lr
