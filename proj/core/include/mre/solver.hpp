#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mre/distribution.hpp"
#include "mre/extended_real.hpp"
#include "mre/outcome_space.hpp"

namespace mre {

/// One linear equality constraint on the posterior:
/// sum_i coeffs[i] * q_i = target.
struct MomentConstraint {
    std::vector<double> coeffs;
    double target = 0.0;
};

/// Constraints for an I-projection. Normalization is implicit and always
/// enforced; zero_outcomes are forced to exact posterior weight 0; moments
/// are linear equalities on the posterior.
class ConstraintSet {
public:
    explicit ConstraintSet(OutcomeSpace space);
    ConstraintSet(OutcomeSpace space, Event zero_outcomes,
                  std::vector<MomentConstraint> moments);

    const OutcomeSpace& space() const noexcept { return space_; }
    const Event& zero_outcomes() const noexcept { return zero_outcomes_; }
    const std::vector<MomentConstraint>& moments() const noexcept { return moments_; }

private:
    OutcomeSpace space_;
    Event zero_outcomes_;
    std::vector<MomentConstraint> moments_;
};

enum class MomentFeasibility {
    strictly_feasible, ///< target strictly inside the achievable range
    boundary,          ///< target at the range edge; solution is a face/point mass
    infeasible,        ///< target outside the achievable range
};

/// Achievable range of one moment over distributions supported on the
/// allowed outcomes (prior-positive, not forced to zero).
struct MomentRange {
    double min = 0.0;
    double max = 0.0;
    double target = 0.0;
    MomentFeasibility status = MomentFeasibility::strictly_feasible;
};

struct FeasibilityReport {
    bool has_allowed_mass = false; ///< prior mass outside zero_outcomes > 0
    std::vector<MomentRange> moments;

    bool feasible() const;
    bool boundary() const;
    /// Human-readable certificate, naming any violated hull bound.
    std::string describe() const;
};

/// Diagnostic only: reports whether the prior keeps any mass on the allowed
/// outcomes and, per moment, where the target sits relative to the achievable
/// range. Targets at the range edge are flagged boundary (the solution is a
/// point mass or hull face and the multiplier is infinite).
FeasibilityReport check_feasibility(const Distribution& prior, const ConstraintSet& constraints);

/// The exponential-tilt family the I-projection lives in:
/// q_i proportional to p_i * exp(-sum_j lambdas[j] * coeffs_j[i]) on the
/// allowed outcomes, exact zero on zero_outcomes and off the prior's support.
/// A tilt that changes nothing (all-zero lambdas, no excluded support)
/// returns the prior bitwise unchanged.
/// Throws AllMassExcludedError, LengthMismatchError, SpaceMismatchError.
Distribution exponential_tilt(const Distribution& prior, const ConstraintSet& constraints,
                              std::span<const double> lambdas);

/// Lagrange dual objective of the projection problem,
/// psi(lambda) = log Z(lambda) + lambda . b, where
/// Z(lambda) = sum over allowed i of p_i * exp(-lambda . a_i).
/// Convex; its unique minimizer certifies the primal solution.
double dual_value(const Distribution& prior, const ConstraintSet& constraints,
                  std::span<const double> lambdas);

/// Gradient of the dual objective: b_j - E_q[a_j] under the tilted
/// distribution at lambda. Vanishes exactly at the optimum.
std::vector<double> dual_gradient(const Distribution& prior, const ConstraintSet& constraints,
                                  std::span<const double> lambdas);

/// Result of an I-projection solve.
struct MreSolution {
    Distribution posterior;
    /// One multiplier per moment constraint in input order, then the
    /// normalization multiplier log Z - 1. Moments resolved at a hull
    /// boundary carry an infinite multiplier (+inf at the lower edge,
    /// -inf at the upper).
    std::vector<double> multipliers;
    ExtendedReal achieved_kl;
    /// Max absolute constraint violation plus max stationarity violation.
    double kkt_residual = 0.0;
    int iterations = 0;
    bool converged = false;
    /// True when some moment target sat on the hull boundary and the
    /// problem was solved on the corresponding face directly.
    bool boundary = false;
};

/// Minimizes relative_entropy(q, prior) over the constraint set: damped
/// Newton iteration on the dual objective starting from lambda = 0, with
/// hull-boundary targets resolved to their limiting face distribution
/// before the iteration. Outcomes with prior weight 0 keep posterior
/// weight 0 (the objective is infinite otherwise).
///
/// Throws InfeasibleError (with certificate) when a moment target falls
/// outside its achievable range or no allowed mass remains, and
/// UnboundedDualError when the targets are jointly unachievable. Failure to
/// reach tol within max_iter returns the best iterate with converged=false.
MreSolution solve_mre(const Distribution& prior, const ConstraintSet& constraints,
                      double tol = 1e-10, int max_iter = 200);

} // namespace mre
