#include "lr/generators.hpp"

#include <cmath>
#include <stdexcept>

#include "lr/parallel.hpp"

namespace lr {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

}  // namespace

std::array<double, 2> two_rings_point(double r, double angle, double u1, double u2) {
    const double x = r * std::cos(angle) + u1;
    const double y = 0.5 * x - 0.05 * x * x + r * std::sin(angle) + u2;
    return {x, y};
}

std::array<double, 3> beta_cluster_point(double x, double y, double u) {
    return {x, y, 10.0 * y + u};
}

DataMatrix gen_two_rings(std::int64_t n, std::uint64_t seed, int threads) {
    if (n < 1) throw std::invalid_argument("gen_two_rings: n must be at least 1");
    Eigen::MatrixXd values(n, 2);
    parallel_for(n, threads, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t i = begin; i < end; ++i) {
            RandomStream rng(seed, static_cast<std::uint64_t>(i));
            const double u1 = rng.normal();
            const double u2 = rng.normal();
            const double r = rng.uniform() < 0.5 ? 8.0 : 20.0;
            const double angle = kTwoPi * rng.uniform();
            const auto [x, y] = two_rings_point(r, angle, u1, u2);
            values(i, 0) = x;
            values(i, 1) = y;
        }
    });
    std::vector<ColumnSpec> schema = {
        {"x", ColumnKind::continuous, std::nullopt, std::nullopt},
        {"y", ColumnKind::continuous, std::nullopt, std::nullopt},
    };
    return DataMatrix(std::move(values), std::move(schema));
}

DataMatrix gen_beta_cluster(std::int64_t n, std::uint64_t seed, int threads) {
    if (n < 1) throw std::invalid_argument("gen_beta_cluster: n must be at least 1");
    Eigen::MatrixXd values(n, 3);
    parallel_for(n, threads, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t i = begin; i < end; ++i) {
            RandomStream rng(seed, static_cast<std::uint64_t>(i));
            const double x = rng.beta(0.1, 0.1);
            const double y = rng.beta(0.1, 0.5);
            const double u = rng.normal();
            const auto [px, py, pz] = beta_cluster_point(x, y, u);
            values(i, 0) = px;
            values(i, 1) = py;
            values(i, 2) = pz;
        }
    });
    std::vector<ColumnSpec> schema = {
        {"x", ColumnKind::continuous, 0.0, 1.0},
        {"y", ColumnKind::continuous, 0.0, 1.0},
        {"z", ColumnKind::continuous, std::nullopt, std::nullopt},
    };
    return DataMatrix(std::move(values), std::move(schema));
}

DataMatrix generate(const SimSpec& spec, int threads) {
    switch (spec.design) {
        case SimDesign::two_rings:
            return gen_two_rings(spec.n, spec.seed, threads);
        case SimDesign::beta_cluster:
            return gen_beta_cluster(spec.n, spec.seed, threads);
    }
    throw std::invalid_argument("generate: unknown design");
}

SimDesign parse_design(const std::string& name) {
    if (name == "two_rings") return SimDesign::two_rings;
    if (name == "beta_cluster") return SimDesign::beta_cluster;
    throw std::invalid_argument("unknown design '" + name +
                                "'; valid designs: two_rings, beta_cluster");
}

}  // namespace lr
