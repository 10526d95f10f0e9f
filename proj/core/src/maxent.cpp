#include "mre/maxent.hpp"

#include <vector>

namespace mre {

Distribution indifference_prior(const OutcomeSpace& space) {
    std::vector<double> weights(space.size(), 1.0 / static_cast<double>(space.size()));
    return Distribution(space, std::move(weights));
}

// Maximizing entropy under linear constraints is exactly the projection of
// the indifference prior onto the same constraints: the uniform reference
// turns -H(q) into H(q; uniform) minus a constant.
MreSolution maxent(const OutcomeSpace& space, const ConstraintSet& constraints, double tol,
                   int max_iter) {
    return solve_mre(indifference_prior(space), constraints, tol, max_iter);
}

} // namespace mre
