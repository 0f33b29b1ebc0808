#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "lr/data.hpp"
#include "lr/rng.hpp"

namespace lr {

enum class SimDesign { two_rings, beta_cluster };

struct SimSpec {
    SimDesign design = SimDesign::two_rings;
    std::int64_t n = 1000;
    std::uint64_t seed = 0;
};

/// Deterministic map from the two-rings draws to a sample point:
/// x = r cos(angle) + u1, y = 0.5 x - 0.05 x^2 + r sin(angle) + u2,
/// where the quadratic uses the realized x (noise included).
std::array<double, 2> two_rings_point(double r, double angle, double u1, double u2);

/// Deterministic map from the beta-cluster draws to a sample point:
/// x and y pass through, z = 10 y + u.
std::array<double, 3> beta_cluster_point(double x, double y, double u);

/// Two noisy concentric rings (radius 8 or 20, equiprobable) around a
/// downward parabola. Columns x, y; all continuous, unbounded.
DataMatrix gen_two_rings(std::int64_t n, std::uint64_t seed, int threads = 0);

/// Corner-concentrated cluster: x ~ Beta(0.1, 0.1), y ~ Beta(0.1, 0.5),
/// z = 10 y + N(0, 1). Columns x, y, z; x and y bounded to [0, 1].
DataMatrix gen_beta_cluster(std::int64_t n, std::uint64_t seed, int threads = 0);

DataMatrix generate(const SimSpec& spec, int threads = 0);

SimDesign parse_design(const std::string& name);

}  // namespace lr
