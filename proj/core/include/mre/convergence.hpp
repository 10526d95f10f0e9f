#pragma once

#include <cstdint>
#include <vector>

#include "mre/distribution.hpp"

namespace mre {

/// One comparison row: the exact conditional law of a single draw given the
/// sum of n_draws i.i.d. draws, against the I-projection of the base onto
/// the matching mean constraint.
struct ConvergenceRow {
    std::uint64_t n_draws = 0;
    long long sum_target = 0;
    Distribution conditional;
    Distribution maxent_dist;
    double tv_gap = 0.0;
};

struct ConvergenceReport {
    Distribution base;
    double mean_target = 0.0;
    std::vector<ConvergenceRow> rows; ///< ordered by n_draws
};

/// Integer values the labels of a numeric outcome space denote.
/// Throws std::invalid_argument when a label is not an integer.
std::vector<long long> numeric_label_values(const OutcomeSpace& space);

/// Exact marginal law of X_1 given X_1 + ... + X_N = sum_target for N i.i.d.
/// draws from base, by dynamic-programming convolution (no sampling):
/// P(X_1 = v | S = s) = base(v) * C_{N-1}(s - v) / C_N(s), where C_k is the
/// k-fold convolution of the base weights over the integer label values.
/// Throws UnachievableSumError when C_N(sum_target) = 0.
Distribution conditional_marginal(const Distribution& base, std::uint64_t n_draws,
                                  long long sum_target);

/// For each N: conditions on sum_target = round(mean_target * N), projects
/// the base onto the mean constraint sum_target / N (exactly the conditioned
/// empirical mean, so the two sides see the same moment), and records their
/// total variation gap. mean_target must lie strictly inside the hull of the
/// base's support values.
ConvergenceReport convergence_experiment(const Distribution& base, double mean_target,
                                         const std::vector<std::uint64_t>& n_list);

} // namespace mre
