#include "lr/synthesizer.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "lr/neighbors.hpp"
#include "lr/parallel.hpp"
#include "lr/stats.hpp"

namespace lr {

std::vector<std::int64_t> resample_subsample_ids(std::int64_t n, std::int64_t n_prime,
                                                 bool resample, RandomStream& rng) {
    if (n < 1) throw std::invalid_argument("resample_subsample_ids: n must be at least 1");
    if (!resample) {
        if (n_prime != n) {
            throw std::invalid_argument(
                "resample_subsample_ids: without resampling the output size equals n");
        }
        std::vector<std::int64_t> ids(static_cast<std::size_t>(n));
        std::iota(ids.begin(), ids.end(), std::int64_t{0});
        return ids;
    }
    if (n_prime < 1) throw std::invalid_argument("resample_subsample_ids: n_prime must be at least 1");
    std::vector<std::int64_t> ids(static_cast<std::size_t>(n_prime));
    for (auto& id : ids) {
        id = static_cast<std::int64_t>(rng.uniform_int(static_cast<std::uint64_t>(n)));
    }
    return ids;
}

double stochastic_round(double value, RandomStream& rng, Rounding mode) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument("stochastic_round: value must be finite");
    }
    if (mode == Rounding::none) return value;
    const double lo = std::floor(value);
    const double frac = value - lo;
    if (frac == 0) return value;  // already integral; no randomness consumed
    const double u = rng.uniform();
    if (mode == Rounding::unbiased) {
        return u < frac ? lo + 1 : lo;  // expectation equals value
    }
    return u < frac ? lo : lo + 1;  // as the source equation reads; expectation of 2.3 is 2.7
}

Eigen::VectorXd clip(const Eigen::VectorXd& row, const Eigen::VectorXd& lo,
                     const Eigen::VectorXd& hi) {
    if (row.size() != lo.size() || row.size() != hi.size()) {
        throw std::invalid_argument("clip: bound lengths must match the row");
    }
    Eigen::VectorXd out(row.size());
    for (Eigen::Index j = 0; j < row.size(); ++j) {
        out(j) = std::min(std::max(row(j), lo(j)), hi(j));
    }
    return out;
}

SynthResult synthesize(const DataMatrix& data, const SynthConfig& config, int threads) {
    const std::int64_t n = data.rows();
    const Eigen::Index p = data.cols();
    if (n < 1) throw std::invalid_argument("synthesize: needs at least one row");
    if (config.k < 1) throw std::invalid_argument("synthesize: k must be at least 1");
    if (config.k > n) {
        throw std::invalid_argument("synthesize: k=" + std::to_string(config.k) +
                                    " exceeds the number of rows (n=" + std::to_string(n) + ")");
    }

    SynthConfig resolved = config;
    if (!resolved.resample_subsamples) {
        if (resolved.n_prime != 0 && resolved.n_prime != n) {
            throw std::invalid_argument(
                "synthesize: with resampling off the output size equals the input size (n=" +
                std::to_string(n) + ")");
        }
        resolved.n_prime = n;
    } else if (resolved.n_prime == 0) {
        resolved.n_prime = n;
    }
    if (resolved.n_prime < 1) {
        throw std::invalid_argument("synthesize: n_prime must be at least 1");
    }
    if (resolved.k == 1) {
        std::cerr << "warning: k=1 degenerates to resampling single observations;"
                     " local structure needs k > 1\n";
    }

    const double inf = std::numeric_limits<double>::infinity();
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(p, -inf);
    Eigen::VectorXd hi = Eigen::VectorXd::Constant(p, inf);
    if (resolved.clipping == Clipping::observed_range) {
        lo = data.values().colwise().minCoeff();
        hi = data.values().colwise().maxCoeff();
    } else if (resolved.clipping == Clipping::schema_bounds) {
        bool any_bound = false;
        for (Eigen::Index j = 0; j < p; ++j) {
            const auto& spec = data.column(j);
            if (spec.lower_bound) lo(j) = *spec.lower_bound;
            if (spec.upper_bound) hi(j) = *spec.upper_bound;
            any_bound = any_bound || spec.lower_bound || spec.upper_bound;
        }
        if (!any_bound) {
            throw std::invalid_argument(
                "synthesize: clipping to schema bounds, but no column declares any bound");
        }
    }
    const bool do_clip = resolved.clipping != Clipping::none;

    const NeighborIndex index =
        resolved.standardize_distances
            ? compute_neighbors(standardize(data).first, resolved.k, threads)
            : compute_neighbors(data, resolved.k, threads);

    RandomStream aux(resolved.seed, kAuxStreamTag);
    std::vector<std::int64_t> ids =
        resample_subsample_ids(n, resolved.n_prime, resolved.resample_subsamples, aux);

    Eigen::MatrixXd out(resolved.n_prime, p);
    parallel_for(resolved.n_prime, threads, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t t = begin; t < end; ++t) {
            RandomStream rng(resolved.seed, static_cast<std::uint64_t>(t));
            const Eigen::MatrixXd sub = subsample(index, data, ids[static_cast<std::size_t>(t)]);
            const LocalModel model = fit_local(resolved.family, sub);
            Eigen::VectorXd row = sample_local(model, rng);
            if (resolved.rounding != Rounding::none) {
                for (Eigen::Index j = 0; j < p; ++j) {
                    if (data.column(j).kind == ColumnKind::discrete) {
                        row(j) = stochastic_round(row(j), rng, resolved.rounding);
                    }
                }
            }
            if (do_clip) row = clip(row, lo, hi);
            out.row(t) = row;
        }
    });

    std::vector<std::int64_t> use_counts(static_cast<std::size_t>(n), 0);
    for (const auto id : ids) {
        for (const auto neighbor : index.row(id)) {
            ++use_counts[static_cast<std::size_t>(neighbor)];
        }
    }

    return SynthResult{DataMatrix(std::move(out), data.schema()), std::move(ids), resolved,
                       std::move(use_counts)};
}

}  // namespace lr
