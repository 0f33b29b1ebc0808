#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lr/local_models.hpp"
#include "lr/rng.hpp"

using lr::MvnParams;
using lr::RandomStream;
using lr::UniformBoxParams;

namespace {

Eigen::MatrixXd random_subsample(Eigen::Index k, Eigen::Index p, std::uint64_t seed) {
    RandomStream rng(seed);
    Eigen::MatrixXd m(k, p);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < p; ++j) m(i, j) = rng.normal() * (1.0 + static_cast<double>(j));
    }
    return m;
}

}  // namespace

TEST_CASE("fit_mvn on two points reproduces the hand-computed moments") {
    Eigen::MatrixXd s(2, 2);
    s << 0, 0, 2, 2;
    const MvnParams params = lr::fit_mvn(s);
    CHECK(params.mean(0) == 1.0);
    CHECK(params.mean(1) == 1.0);
    // centered rows (-1,-1) and (1,1); denominator k-1 = 1
    CHECK(params.covariance(0, 0) == 2.0);
    CHECK(params.covariance(0, 1) == 2.0);
    CHECK(params.covariance(1, 0) == 2.0);
    CHECK(params.covariance(1, 1) == 2.0);
}

TEST_CASE("fit_mvn with a single row gives zero covariance and exact replay") {
    Eigen::MatrixXd s(1, 3);
    s << 0.1, -4.0, 7.5;
    const MvnParams params = lr::fit_mvn(s);
    CHECK(params.covariance.isZero(0));
    CHECK(params.factor.isZero(0));
    RandomStream rng(1);
    const Eigen::VectorXd draw = lr::sample_mvn(params, rng);
    CHECK(draw(0) == 0.1);
    CHECK(draw(1) == -4.0);
    CHECK(draw(2) == 7.5);
}

TEST_CASE("constant columns are pinned bit for bit") {
    // 0.1 is not exactly representable, so any mean computed as sum/k would
    // drift off the constant; the fit must carry the value through untouched.
    Eigen::MatrixXd s(5, 2);
    for (int i = 0; i < 5; ++i) {
        s(i, 0) = 0.1;
        s(i, 1) = static_cast<double>(i);
    }
    const MvnParams params = lr::fit_mvn(s);
    CHECK(params.mean(0) == 0.1);
    for (Eigen::Index j = 0; j < 2; ++j) {
        CHECK(params.covariance(0, j) == 0.0);
        CHECK(params.covariance(j, 0) == 0.0);
        CHECK(params.factor(0, j) == 0.0);
    }
    RandomStream rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::VectorXd draw = lr::sample_mvn(params, rng);
        CHECK(draw(0) == 0.1);
    }
}

TEST_CASE("the covariance matrix is exactly symmetric") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Eigen::MatrixXd s = random_subsample(15, 4, seed);
        const MvnParams params = lr::fit_mvn(s);
        for (Eigen::Index a = 0; a < 4; ++a) {
            for (Eigen::Index b = 0; b < 4; ++b) {
                REQUIRE(params.covariance(a, b) == params.covariance(b, a));
            }
        }
    }
}

TEST_CASE("factor is lower triangular and reconstructs covariance plus ridge") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Eigen::MatrixXd s = random_subsample(20, 5, seed + 100);
        const MvnParams params = lr::fit_mvn(s);
        Eigen::MatrixXd target = params.covariance;
        target.diagonal().array() += params.ridge;
        const Eigen::MatrixXd rebuilt = params.factor * params.factor.transpose();
        const double scale = target.norm();
        REQUIRE((rebuilt - target).norm() <= 1e-8 * (scale > 0 ? scale : 1.0));
        for (Eigen::Index a = 0; a < 5; ++a) {
            for (Eigen::Index b = a + 1; b < 5; ++b) REQUIRE(params.factor(a, b) == 0.0);
        }
        // full-rank input needs no regularization
        REQUIRE(params.ridge == 0.0);
    }
}

TEST_CASE("rank-deficient subsamples are absorbed by the ridge ladder") {
    // Three points in five dimensions: covariance rank at most 2.
    const Eigen::MatrixXd s = random_subsample(3, 5, 7);
    const MvnParams params = lr::fit_mvn(s);
    Eigen::MatrixXd target = params.covariance;
    target.diagonal().array() += params.ridge;
    const Eigen::MatrixXd rebuilt = params.factor * params.factor.transpose();
    CHECK((rebuilt - target).norm() <= 1e-8 * target.norm());

    // A duplicated column makes the covariance exactly singular.
    Eigen::MatrixXd dup(10, 2);
    RandomStream rng(8);
    for (int i = 0; i < 10; ++i) {
        dup(i, 0) = rng.normal();
        dup(i, 1) = dup(i, 0);
    }
    const MvnParams dp = lr::fit_mvn(dup);
    Eigen::MatrixXd dt = dp.covariance;
    dt.diagonal().array() += dp.ridge;
    CHECK((dp.factor * dp.factor.transpose() - dt).norm() <= 1e-8 * dt.norm());
}

TEST_CASE("sample_mvn matches the fitted moments in the large-sample limit") {
    Eigen::MatrixXd s(4, 2);
    s << 1, 10, 3, 14, 5, 18, 3, 10;
    const MvnParams params = lr::fit_mvn(s);
    RandomStream rng(3);
    const int n = 200000;
    Eigen::VectorXd mean_acc = Eigen::VectorXd::Zero(2);
    Eigen::MatrixXd second_acc = Eigen::MatrixXd::Zero(2, 2);
    for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd draw = lr::sample_mvn(params, rng);
        mean_acc += draw;
        second_acc += draw * draw.transpose();
    }
    const Eigen::VectorXd mean = mean_acc / n;
    const Eigen::MatrixXd cov = second_acc / n - mean * mean.transpose();
    for (Eigen::Index j = 0; j < 2; ++j) {
        CHECK(std::abs(mean(j) - params.mean(j)) < 0.02);
    }
    for (Eigen::Index a = 0; a < 2; ++a) {
        for (Eigen::Index b = 0; b < 2; ++b) {
            CHECK(std::abs(cov(a, b) - params.covariance(a, b)) < 0.2);
        }
    }
}

TEST_CASE("fit_uniform is the componentwise bounding box") {
    Eigen::MatrixXd s(3, 2);
    s << 1, 5, -2, 9, 0, 7;
    const UniformBoxParams box = lr::fit_uniform(s);
    CHECK(box.lo(0) == -2.0);
    CHECK(box.lo(1) == 5.0);
    CHECK(box.hi(0) == 1.0);
    CHECK(box.hi(1) == 9.0);
}

TEST_CASE("sample_uniform stays inside the box and fills it") {
    UniformBoxParams box;
    box.lo = Eigen::Vector2d(-1.0, 3.0);
    box.hi = Eigen::Vector2d(2.0, 3.0);  // second side degenerate
    RandomStream rng(4);
    double min0 = 1e9;
    double max0 = -1e9;
    for (int i = 0; i < 10000; ++i) {
        const Eigen::VectorXd draw = lr::sample_uniform(box, rng);
        REQUIRE(draw(0) >= -1.0);
        REQUIRE(draw(0) <= 2.0);
        REQUIRE(draw(1) == 3.0);
        min0 = std::min(min0, draw(0));
        max0 = std::max(max0, draw(0));
    }
    CHECK(min0 < -0.99);
    CHECK(max0 > 1.99);
}

TEST_CASE("fit_local and sample_local dispatch by family") {
    const Eigen::MatrixXd s = random_subsample(10, 2, 9);
    const lr::LocalModel mvn = lr::fit_local(lr::Family::mvn, s);
    const lr::LocalModel box = lr::fit_local(lr::Family::uniform_box, s);
    CHECK(std::holds_alternative<MvnParams>(mvn));
    CHECK(std::holds_alternative<UniformBoxParams>(box));
    RandomStream rng(10);
    CHECK(lr::sample_local(mvn, rng).size() == 2);
    const Eigen::VectorXd draw = lr::sample_local(box, rng);
    const auto& b = std::get<UniformBoxParams>(box);
    for (Eigen::Index j = 0; j < 2; ++j) {
        CHECK(draw(j) >= b.lo(j));
        CHECK(draw(j) <= b.hi(j));
    }
}

TEST_CASE("degenerate inputs are rejected") {
    Eigen::MatrixXd empty(0, 2);
    CHECK_THROWS(lr::fit_mvn(empty));
    CHECK_THROWS(lr::fit_uniform(empty));
}
