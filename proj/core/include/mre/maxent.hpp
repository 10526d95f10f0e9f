#pragma once

#include "mre/distribution.hpp"
#include "mre/solver.hpp"

namespace mre {

/// Uniform distribution over the space, each weight exactly 1/n.
Distribution indifference_prior(const OutcomeSpace& space);

/// Maximum-entropy distribution under the constraints: defined as, and
/// implemented by, the same I-projection with the indifference prior. The
/// posterior maximizes Shannon entropy over the feasible set.
MreSolution maxent(const OutcomeSpace& space, const ConstraintSet& constraints,
                   double tol = 1e-10, int max_iter = 200);

} // namespace mre
