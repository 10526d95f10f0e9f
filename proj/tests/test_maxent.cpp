#include <cmath>
#include <vector>

#include "doctest.h"

#include "mre/errors.hpp"
#include "mre/info_measures.hpp"
#include "mre/maxent.hpp"
#include "support/generators.hpp"

using namespace mre;

TEST_CASE("indifference prior is exactly uniform") {
    OutcomeSpace space({"a", "b", "c", "d", "e"});
    Distribution u = indifference_prior(space);
    for (std::size_t i = 0; i < 5; ++i) CHECK(u.weight(i) == 0.2);
}

TEST_CASE("no constraints leave the uniform distribution untouched") {
    OutcomeSpace space = testgen::space_of_size(7);
    MreSolution sol = maxent(space, ConstraintSet(space));
    CHECK(sol.posterior == indifference_prior(space));
    CHECK(sol.iterations == 0);
    CHECK(sol.converged);
}

TEST_CASE("a mean constraint gives the exponential family solution") {
    OutcomeSpace space({"1", "2", "3", "4", "5", "6"});
    ConstraintSet cs(space, Event::empty_event(space),
                     {MomentConstraint{{1, 2, 3, 4, 5, 6}, 4.5}});
    MreSolution direct = maxent(space, cs);
    MreSolution via_projection = solve_mre(indifference_prior(space), cs);
    CHECK(direct.posterior == via_projection.posterior);
    CHECK(direct.multipliers == via_projection.multipliers);

    // Entropy of the solution, against the divergence identity
    // H(q) = log n - H(q; uniform).
    double h = shannon_entropy(direct.posterior);
    double kl = direct.achieved_kl.value();
    CHECK(std::abs(h - (std::log(6.0) - kl)) <= 1e-12);
}

TEST_CASE("zero constraints alone produce the uniform conditional") {
    OutcomeSpace space({"a", "b", "c", "d"});
    ConstraintSet cs(space, Event(space, {"b", "d"}), {});
    MreSolution sol = maxent(space, cs);
    CHECK(sol.posterior.weight(0) == 0.5);
    CHECK(sol.posterior.weight(1) == 0.0);
    CHECK(sol.posterior.weight(2) == 0.5);
    CHECK(sol.posterior.weight(3) == 0.0);
    CHECK(sol.achieved_kl.value() == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("the solution has maximal entropy among feasible competitors") {
    testgen::Rng rng(606);
    for (int trial = 0; trial < 40; ++trial) {
        OutcomeSpace space = testgen::space_of_size(4 + testgen::pick_index(rng, 6));
        std::size_t m = 1 + testgen::pick_index(rng, 2);
        ConstraintSet cs = testgen::random_feasible_constraints(rng, space, m);
        MreSolution sol = maxent(space, cs, 1e-10);
        REQUIRE(sol.converged);

        double h_star = shannon_entropy(sol.posterior);
        for (int c = 0; c < 10; ++c) {
            Distribution competitor = testgen::feasible_competitor(rng, cs, sol.posterior);
            CHECK(shannon_entropy(competitor) <= h_star + 1e-9);
        }

        // Entropy gap equals the divergence gap from uniform, term by term.
        Distribution u = indifference_prior(space);
        double lhs = std::log(static_cast<double>(space.size())) - h_star;
        CHECK(std::abs(lhs - relative_entropy(sol.posterior, u).value()) <= 1e-12);
    }
}

TEST_CASE("infeasible constraints are rejected") {
    OutcomeSpace space({"1", "2", "3"});
    ConstraintSet cs(space, Event::empty_event(space),
                     {MomentConstraint{{1, 2, 3}, 5.0}});
    CHECK_THROWS_AS(maxent(space, cs), InfeasibleError);
}
