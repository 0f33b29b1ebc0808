#pragma once

#include <variant>

#include <Eigen/Core>

#include "lr/rng.hpp"

namespace lr {

enum class Family { mvn, uniform_box };

/// Fitted multivariate normal. `factor` is lower triangular with
/// factor * factor^T equal to the covariance plus `ridge` on the diagonal of
/// its non-constant block; sampling is mean + factor * z.
struct MvnParams {
    Eigen::VectorXd mean;
    Eigen::MatrixXd covariance;
    Eigen::MatrixXd factor;
    double ridge = 0;
};

/// Axis-aligned box, lo <= hi componentwise.
struct UniformBoxParams {
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;
};

using LocalModel = std::variant<MvnParams, UniformBoxParams>;

/// Fits mean and sample covariance (k-1 denominator; all zeros for k=1).
/// Columns whose values are all identical are pinned: their mean is the
/// common value, their covariance rows are exactly zero, and they are
/// excluded from regularization so sampling reproduces the constant with no
/// noise. The factorization of the remaining block is attempted with ridge 0
/// and escalated through {1e-12, 1e-10, 1e-8, 1e-6} times the mean diagonal
/// until the triangular factor reconstructs the matrix; small-k subsamples
/// are routinely rank deficient, which is what the ladder absorbs.
MvnParams fit_mvn(const Eigen::Ref<const Eigen::MatrixXd>& subsample);

/// mean + factor * z with z a vector of p independent standard normals.
Eigen::VectorXd sample_mvn(const MvnParams& params, RandomStream& rng);

/// Componentwise min/max box of the subsample.
UniformBoxParams fit_uniform(const Eigen::Ref<const Eigen::MatrixXd>& subsample);

/// Independent uniform draw per coordinate on [lo, hi].
Eigen::VectorXd sample_uniform(const UniformBoxParams& params, RandomStream& rng);

LocalModel fit_local(Family family, const Eigen::Ref<const Eigen::MatrixXd>& subsample);
Eigen::VectorXd sample_local(const LocalModel& model, RandomStream& rng);

}  // namespace lr
