#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"

#include "mre/distribution.hpp"
#include "mre/errors.hpp"
#include "mre/outcome_space.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace mre;

TEST_CASE("outcome space indexes labels in order") {
    OutcomeSpace space({"a", "b", "c"});
    CHECK(space.size() == 3);
    CHECK(space.label(1) == "b");
    CHECK(space.index_of("c") == 2);
    CHECK(space.contains("a"));
    CHECK_FALSE(space.contains("z"));
    CHECK(space.find("z") == std::nullopt);
    CHECK_THROWS_AS(space.index_of("z"), SpaceMismatchError);
}

TEST_CASE("outcome space rejects empty and duplicate label lists") {
    CHECK_THROWS_AS(OutcomeSpace({}), LengthMismatchError);
    CHECK_THROWS_AS(OutcomeSpace({"a", "a"}), SpaceMismatchError);
}

TEST_CASE("events support membership, complement, intersection") {
    OutcomeSpace space({"a", "b", "c", "d"});
    Event e(space, {"d", "b"});
    CHECK(e.size() == 2);
    CHECK(e.indices() == std::vector<std::size_t>{1, 3});
    CHECK(e.members() == std::vector<std::string>{"b", "d"});
    CHECK(e.contains(1));
    CHECK_FALSE(e.contains(0));

    Event c = e.complement();
    CHECK(c.members() == std::vector<std::string>{"a", "c"});
    CHECK(c.complement().indices() == e.indices());

    Event f = Event::full(space);
    CHECK(f.is_full());
    CHECK(Event::empty_event(space).empty());
    CHECK(e.intersect(f).indices() == e.indices());
    CHECK(e.intersect(c).empty());

    Event dup = Event::from_indices(space, {2, 2, 0});
    CHECK(dup.indices() == std::vector<std::size_t>{0, 2});
    CHECK_THROWS_AS(Event::from_indices(space, {4}), SpaceMismatchError);
    CHECK_THROWS_AS(Event(space, {"nope"}), SpaceMismatchError);

    OutcomeSpace other({"a", "b"});
    CHECK_THROWS_AS(e.intersect(Event::full(other)), SpaceMismatchError);
}

TEST_CASE("distribution constructor enforces the invariants") {
    OutcomeSpace space({"a", "b"});
    CHECK_NOTHROW(Distribution(space, {0.5, 0.5}));
    CHECK_NOTHROW(Distribution(space, {1.0, 0.0}));
    CHECK_THROWS_AS(Distribution(space, {0.5}), LengthMismatchError);
    CHECK_THROWS_AS(Distribution(space, {-0.1, 1.1}), NegativeWeightError);
    CHECK_THROWS_AS(Distribution(space, {std::numeric_limits<double>::quiet_NaN(), 1.0}),
                    NegativeWeightError);
    CHECK_THROWS_AS(Distribution(space, {0.0, 0.0}), ZeroTotalError);
    CHECK_THROWS_AS(Distribution(space, {0.4, 0.4}), ZeroTotalError);
}

TEST_CASE("make_distribution normalizes raw weights") {
    OutcomeSpace space({"a", "b", "c"});
    Distribution d = make_distribution(space, {2.0, 3.0, 5.0});
    CHECK(d.weight(0) == 0.2);
    CHECK(d.weight(1) == 0.3);
    CHECK(d.weight(2) == 0.5);
    CHECK_THROWS_AS(make_distribution(space, {1.0, 2.0}), LengthMismatchError);
    CHECK_THROWS_AS(make_distribution(space, {1.0, -1.0, 1.0}), NegativeWeightError);
    CHECK_THROWS_AS(make_distribution(space, {0.0, 0.0, 0.0}), ZeroTotalError);
}

TEST_CASE("mass and support") {
    OutcomeSpace space({"a", "b", "c"});
    Distribution d(space, {0.5, 0.0, 0.5});
    CHECK(d.mass_of(Event(space, {"a", "b"})) == 0.5);
    CHECK(d.mass_of(Event::full(space)) == 1.0);
    CHECK(d.mass_of(Event::empty_event(space)) == 0.0);
    CHECK(d.support() == std::vector<std::size_t>{0, 2});
}

TEST_CASE("restrict conditions on an event") {
    OutcomeSpace space({"1", "2", "3", "4", "5", "6"});
    Distribution uniform = make_distribution(space, {1, 1, 1, 1, 1, 1});
    Event high(space, {"5", "6"});
    Distribution cond = restrict(uniform, high);
    CHECK(cond.weight(4) == 0.5);
    CHECK(cond.weight(5) == 0.5);
    for (std::size_t i = 0; i < 4; ++i) CHECK(cond.weight(i) == 0.0);

    SUBCASE("conditioning twice on the same event is bitwise idempotent") {
        Distribution again = restrict(cond, high);
        CHECK(again == cond);
    }
    SUBCASE("an event covering the support leaves the distribution unchanged") {
        CHECK(restrict(uniform, Event::full(space)) == uniform);
        Distribution partial(space, {0.5, 0.5, 0.0, 0.0, 0.0, 0.0});
        CHECK(restrict(partial, Event(space, {"1", "2", "3"})) == partial);
    }
    SUBCASE("zero-probability events are rejected") {
        Distribution corner(space, {1.0, 0.0, 0.0, 0.0, 0.0, 0.0});
        CHECK_THROWS_AS(restrict(corner, Event(space, {"2"})), ZeroProbabilityEventError);
    }
    SUBCASE("space mismatch is rejected") {
        OutcomeSpace other({"1", "2"});
        CHECK_THROWS_AS(restrict(uniform, Event::full(other)), SpaceMismatchError);
    }
}

TEST_CASE("tv_distance basics") {
    OutcomeSpace space({"a", "b"});
    Distribution p(space, {0.5, 0.5});
    Distribution q(space, {0.4, 0.6});
    CHECK(tv_distance(p, p) == 0.0);
    CHECK(tv_distance(p, q) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(tv_distance(p, q) == tv_distance(q, p));
    Distribution a(space, {1.0, 0.0});
    Distribution b(space, {0.0, 1.0});
    CHECK(tv_distance(a, b) == 1.0);
}

TEST_CASE("tv_distance matches the reference sum on random pairs") {
    testgen::Rng rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        OutcomeSpace space = testgen::space_of_size(2 + testgen::pick_index(rng, 9));
        Distribution p = testgen::random_distribution(rng, space);
        Distribution q = testgen::random_distribution(rng, space);
        double expected = static_cast<double>(oracle::tv(p.weights(), q.weights()));
        CHECK(tv_distance(p, q) == doctest::Approx(expected).epsilon(1e-13));
        CHECK(tv_distance(p, q) >= 0.0);
        CHECK(tv_distance(p, q) <= 1.0);
    }
}
