#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mre/distribution.hpp"
#include "mre/extended_real.hpp"
#include "mre/outcome_space.hpp"

namespace mre {

/// Multiset of observed outcomes as a count per label. Total N >= 1.
class Dataset {
public:
    Dataset(OutcomeSpace space, std::vector<std::uint64_t> counts);

    const OutcomeSpace& space() const noexcept { return space_; }
    const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
    std::uint64_t total() const noexcept { return total_; }

    /// Normalized count vector.
    Distribution empirical() const;

private:
    OutcomeSpace space_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_;
};

/// Finitely parameterized family theta -> distribution over a fixed space.
/// density must produce a valid Distribution for every theta in the domain;
/// it throws ThetaOutOfDomainError outside. closed_form_mle is optional and
/// short-circuits the generic search when present.
struct ParametricModel {
    std::string name;
    OutcomeSpace space;
    std::size_t dim = 0;
    std::vector<std::array<double, 2>> bounds; ///< box [lo, hi] per parameter
    std::function<Distribution(std::span<const double>)> density;
    std::function<bool(std::span<const double>)> in_domain;
    std::function<std::vector<double>(const Dataset&)> closed_form_mle; ///< may be empty
};

/// theta = probability of the first label; density (theta, 1-theta).
ParametricModel bernoulli_model(const OutcomeSpace& space);
/// theta = first n-1 weights; the last weight is 1 - sum(theta).
ParametricModel categorical_model(const OutcomeSpace& space);
/// Labels must read "1".."m"; weight of k proportional to theta^(k-1) with
/// ratio theta in (0,1). theta = 0 degenerates to a point mass on "1" and
/// theta = 1 to the uniform distribution; both are kept as closed-domain
/// limits so boundary fits stay representable.
ParametricModel truncated_geometric_model(const OutcomeSpace& space);

/// Looks up a registered family by name ("bernoulli", "categorical",
/// "truncated_geometric" built in). Throws SchemaError for unknown names.
ParametricModel make_model(const std::string& name, const OutcomeSpace& space);
void register_model(const std::string& name,
                    std::function<ParametricModel(const OutcomeSpace&)> factory);

/// sum_i counts_i * log f(label_i; theta); -infinity exactly when some
/// observed label has model probability 0. Throws ThetaOutOfDomainError.
double log_likelihood(const ParametricModel& model, std::span<const double> theta,
                      const Dataset& data);

/// Relative entropy from the empirical distribution to the model at theta,
/// computed exactly on the finite space. Equals
/// -shannon_entropy(empirical) - log_likelihood/N, so minimizing it over
/// theta is the same problem as maximizing the likelihood.
ExtendedReal empirical_kl(const ParametricModel& model, std::span<const double> theta,
                          const Dataset& data);

struct MleReport {
    std::vector<double> theta_hat;
    double log_likelihood = 0.0;
    ExtendedReal empirical_kl;
    /// True when the data pushed theta onto the domain boundary (the
    /// boundary theta is still returned).
    bool degenerate = false;
    std::string note;
};

/// Maximizer of the log likelihood. Bernoulli and categorical use their
/// closed forms (empirical frequencies); other one-parameter families use a
/// deterministic golden-section search refined by bisection on the
/// finite-difference derivative. Families with dim > 1 and no closed form
/// are rejected.
MleReport mle_fit(const ParametricModel& model, const Dataset& data, double tol = 1e-8);

} // namespace mre
