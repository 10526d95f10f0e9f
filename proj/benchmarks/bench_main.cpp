#include <benchmark/benchmark.h>

#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "mre/bayes.hpp"
#include "mre/convergence.hpp"
#include "mre/info_measures.hpp"
#include "mre/maxent.hpp"
#include "mre/solver.hpp"

namespace {

mre::OutcomeSpace numbered_space(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
    return mre::OutcomeSpace(labels);
}

// Positive weights with a fixed seed so every run times the same problem.
mre::Distribution seeded_distribution(const mre::OutcomeSpace& space, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> weights(space.size());
    for (double& w : weights) {
        w = 0.05 + (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    }
    return mre::make_distribution(space, weights);
}

mre::Distribution uniform_dice() {
    return mre::indifference_prior(numbered_space(6));
}

std::vector<double> face_values(std::size_t n) {
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = static_cast<double>(i + 1);
    return values;
}

void solve_dice_mean(benchmark::State& state) {
    mre::Distribution prior = uniform_dice();
    mre::ConstraintSet constraints(prior.space(), mre::Event::empty_event(prior.space()),
                                   {{face_values(6), 4.5}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(mre::solve_mre(prior, constraints));
    }
}
BENCHMARK(solve_dice_mean);

void solve_dice_two_moments(benchmark::State& state) {
    mre::Distribution prior = uniform_dice();
    std::vector<double> high_face = {0.0, 0.0, 0.0, 0.0, 1.0, 1.0};
    mre::ConstraintSet constraints(prior.space(), mre::Event::empty_event(prior.space()),
                                   {{face_values(6), 4.0}, {high_face, 0.4}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(mre::solve_mre(prior, constraints));
    }
}
BENCHMARK(solve_dice_two_moments);

void solve_wide_space(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    mre::OutcomeSpace space = numbered_space(n);
    mre::Distribution prior = seeded_distribution(space, 7u);
    std::vector<double> values = face_values(n);
    double target = 0.45 * static_cast<double>(n + 1); // strictly inside [1, n]
    mre::ConstraintSet constraints(space, mre::Event::empty_event(space),
                                   {{values, target}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(mre::solve_mre(prior, constraints));
    }
}
BENCHMARK(solve_wide_space)->Arg(100)->Arg(1000);

void tilt_wide_space(benchmark::State& state) {
    mre::OutcomeSpace space = numbered_space(1000);
    mre::Distribution prior = seeded_distribution(space, 11u);
    mre::ConstraintSet constraints(space, mre::Event::empty_event(space),
                                   {{face_values(1000), 0.0}});
    std::vector<double> lambda = {-0.002};
    for (auto _ : state) {
        benchmark::DoNotOptimize(mre::exponential_tilt(prior, constraints, lambda));
    }
}
BENCHMARK(tilt_wide_space);

void divergence_wide_space(benchmark::State& state) {
    mre::OutcomeSpace space = numbered_space(1000);
    mre::Distribution p = seeded_distribution(space, 13u);
    mre::Distribution q = seeded_distribution(space, 17u);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mre::relative_entropy(q, p));
    }
}
BENCHMARK(divergence_wide_space);

void conditional_sum_law(benchmark::State& state) {
    mre::Distribution base = uniform_dice();
    const auto draws = static_cast<std::uint64_t>(state.range(0));
    const auto target = static_cast<long long>(std::llround(4.5 * static_cast<double>(draws)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mre::conditional_marginal(base, draws, target));
    }
}
BENCHMARK(conditional_sum_law)->Arg(8)->Arg(24)->Arg(64);

// Shared fixture for both posterior routes: six hypotheses, two cells each.
mre::JointPrior twelve_cell_joint() {
    std::vector<std::string> labels;
    for (int h = 1; h <= 6; ++h) {
        labels.push_back("H" + std::to_string(h) + "&E");
        labels.push_back("H" + std::to_string(h) + "&~E");
    }
    mre::OutcomeSpace space(labels);
    return mre::JointPrior::from_label_convention(seeded_distribution(space, 23u));
}

void posterior_closed_form(benchmark::State& state) {
    mre::JointPrior joint = twelve_cell_joint();
    for (auto _ : state) {
        benchmark::DoNotOptimize(mre::bayes_closed_form(joint, joint.evidence()));
    }
}
BENCHMARK(posterior_closed_form);

void posterior_via_projection(benchmark::State& state) {
    mre::JointPrior joint = twelve_cell_joint();
    for (auto _ : state) {
        benchmark::DoNotOptimize(mre::bayes_via_mre(joint, joint.evidence()));
    }
}
BENCHMARK(posterior_via_projection);

} // namespace

BENCHMARK_MAIN();
