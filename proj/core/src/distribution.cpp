#include "mre/distribution.hpp"

#include <cmath>
#include <utility>

#include "mre/errors.hpp"

namespace mre {

namespace {
constexpr double kNormalizationTol = 1e-12;
}

Distribution::Distribution(OutcomeSpace space, std::vector<double> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
    if (weights_.size() != space_.size()) {
        throw LengthMismatchError("weight vector length does not match outcome count");
    }
    double total = 0.0;
    bool any_positive = false;
    for (double w : weights_) {
        if (w < 0.0 || std::isnan(w)) {
            throw NegativeWeightError("distribution weights must be nonnegative");
        }
        if (w > 0.0) any_positive = true;
        total += w;
    }
    if (!any_positive) {
        throw ZeroTotalError("distribution must have nonempty support");
    }
    if (std::abs(total - 1.0) > kNormalizationTol) {
        throw ZeroTotalError("distribution weights sum to " + std::to_string(total) +
                             ", not 1; use make_distribution to normalize");
    }
}

double Distribution::mass_of(const Event& e) const {
    if (e.space() != space_) {
        throw SpaceMismatchError("event lives on a different outcome space");
    }
    double total = 0.0;
    for (std::size_t i : e.indices()) total += weights_[i];
    return total;
}

std::vector<std::size_t> Distribution::support() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (weights_[i] > 0.0) out.push_back(i);
    }
    return out;
}

Distribution make_distribution(OutcomeSpace space, const std::vector<double>& raw_weights) {
    if (raw_weights.size() != space.size()) {
        throw LengthMismatchError("raw weight vector length does not match outcome count");
    }
    double total = 0.0;
    for (double w : raw_weights) {
        if (w < 0.0 || std::isnan(w)) {
            throw NegativeWeightError("raw weights must be nonnegative");
        }
        total += w;
    }
    if (total <= 0.0) {
        throw ZeroTotalError("raw weights sum to zero");
    }
    std::vector<double> normalized(raw_weights.size());
    for (std::size_t i = 0; i < raw_weights.size(); ++i) {
        normalized[i] = raw_weights[i] / total;
    }
    return Distribution(std::move(space), std::move(normalized));
}

Distribution restrict(const Distribution& d, const Event& e) {
    if (e.space() != d.space()) {
        throw SpaceMismatchError("event lives on a different outcome space");
    }
    // Identity when the event already carries all support; this makes
    // repeated conditioning on the same event bitwise idempotent.
    bool covers_support = true;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d.weight(i) > 0.0 && !e.contains(i)) {
            covers_support = false;
            break;
        }
    }
    if (covers_support) return d;

    double mass = d.mass_of(e);
    if (mass <= 0.0) {
        throw ZeroProbabilityEventError("conditioning on an event of prior probability zero");
    }
    std::vector<double> weights(d.size(), 0.0);
    for (std::size_t i : e.indices()) {
        weights[i] = d.weight(i) / mass;
    }
    return Distribution(d.space(), std::move(weights));
}

double tv_distance(const Distribution& a, const Distribution& b) {
    if (a.space() != b.space()) {
        throw SpaceMismatchError("distributions live on different outcome spaces");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += std::abs(a.weight(i) - b.weight(i));
    }
    return 0.5 * sum;
}

} // namespace mre
