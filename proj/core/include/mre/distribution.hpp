#pragma once

#include <cstddef>
#include <vector>

#include "mre/outcome_space.hpp"

namespace mre {

/// Probability distribution over a finite outcome space. Immutable after
/// construction: weights are nonnegative, sum to 1 within 1e-12, and the
/// support is nonempty.
class Distribution {
public:
    /// Validating constructor; expects weights that already satisfy the
    /// invariants. Use make_distribution to normalize raw weights.
    Distribution(OutcomeSpace space, std::vector<double> weights);

    const OutcomeSpace& space() const noexcept { return space_; }
    std::size_t size() const noexcept { return weights_.size(); }
    const std::vector<double>& weights() const noexcept { return weights_; }
    double weight(std::size_t i) const { return weights_.at(i); }

    /// Total mass the distribution assigns to an event.
    double mass_of(const Event& e) const;
    /// Indices with strictly positive weight.
    std::vector<std::size_t> support() const;

    friend bool operator==(const Distribution& a, const Distribution& b) {
        return a.space_ == b.space_ && a.weights_ == b.weights_;
    }
    friend bool operator!=(const Distribution& a, const Distribution& b) { return !(a == b); }

private:
    OutcomeSpace space_;
    std::vector<double> weights_;
};

/// Normalizes raw nonnegative weights to sum 1 (divides by the total), so
/// file-ingested vectors with rounding noise are accepted.
/// Throws LengthMismatchError, NegativeWeightError, ZeroTotalError.
Distribution make_distribution(OutcomeSpace space, const std::vector<double>& raw_weights);

/// Conditions d on event e: weight_i / d(e) inside e, exact zero outside.
/// An event that already carries the full support leaves d unchanged, which
/// makes repeated conditioning on the same event bitwise idempotent.
/// Throws ZeroProbabilityEventError when d(e) = 0.
Distribution restrict(const Distribution& d, const Event& e);

/// Total variation distance, (1/2) * sum_i |a_i - b_i|, in [0, 1].
double tv_distance(const Distribution& a, const Distribution& b);

} // namespace mre
