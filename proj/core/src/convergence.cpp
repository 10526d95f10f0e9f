#include "mre/convergence.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "mre/errors.hpp"
#include "mre/solver.hpp"

namespace mre {

std::vector<long long> numeric_label_values(const OutcomeSpace& space) {
    std::vector<long long> values(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        const std::string& label = space.label(i);
        auto [ptr, ec] = std::from_chars(label.data(), label.data() + label.size(), values[i]);
        if (ec != std::errc() || ptr != label.data() + label.size()) {
            throw std::invalid_argument("label '" + label + "' is not an integer");
        }
    }
    return values;
}

Distribution conditional_marginal(const Distribution& base, std::uint64_t n_draws,
                                  long long sum_target) {
    if (n_draws == 0) {
        throw std::invalid_argument("need at least one draw");
    }
    std::vector<long long> values = numeric_label_values(base.space());
    long long vmin = *std::min_element(values.begin(), values.end());
    long long vmax = *std::max_element(values.begin(), values.end());
    std::size_t span = static_cast<std::size_t>(vmax - vmin);

    // One-draw law over integer values; distinct labels with equal value merge.
    std::vector<double> one(span + 1, 0.0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        one[static_cast<std::size_t>(values[i] - vmin)] += base.weight(i);
    }

    // conv[k] holds the law of a k-draw sum, offset by k * vmin. Each table is
    // renormalized to sum 1; the final conditional only uses ratios, so a
    // common rescale per table cancels and keeps tiny tail weights
    // representable for large draw counts.
    auto convolve = [&](const std::vector<double>& law) {
        std::vector<double> next(law.size() + span, 0.0);
        for (std::size_t s = 0; s < law.size(); ++s) {
            if (law[s] == 0.0) continue;
            for (std::size_t v = 0; v <= span; ++v) {
                next[s + v] += law[s] * one[v];
            }
        }
        double total = 0.0;
        for (double w : next) total += w;
        for (double& w : next) w /= total;
        return next;
    };

    std::vector<double> rest{1.0}; // zero draws: point mass on sum 0
    for (std::uint64_t k = 0; k + 1 < n_draws; ++k) rest = convolve(rest);
    std::vector<double> full = convolve(rest);

    long long full_lo = static_cast<long long>(n_draws) * vmin;
    long long full_hi = static_cast<long long>(n_draws) * vmax;
    auto unachievable = [&] {
        std::ostringstream os;
        os << "sum " << sum_target << " is not achievable with " << n_draws
           << " draws from this base";
        return UnachievableSumError(os.str());
    };
    if (sum_target < full_lo || sum_target > full_hi) throw unachievable();
    std::size_t s_index = static_cast<std::size_t>(sum_target - full_lo);
    if (full[s_index] == 0.0) throw unachievable();

    // P(X_1 = label i | S = s) proportional to w_i * C_{N-1}(s - v_i).
    long long rest_lo = static_cast<long long>(n_draws - 1) * vmin;
    std::vector<double> numerators(base.size(), 0.0);
    for (std::size_t i = 0; i < base.size(); ++i) {
        long long remainder = sum_target - values[i];
        if (remainder < rest_lo || remainder > rest_lo + static_cast<long long>(rest.size()) - 1) {
            continue;
        }
        numerators[i] = base.weight(i) * rest[static_cast<std::size_t>(remainder - rest_lo)];
    }
    return make_distribution(base.space(), numerators);
}

ConvergenceReport convergence_experiment(const Distribution& base, double mean_target,
                                         const std::vector<std::uint64_t>& n_list) {
    std::vector<long long> values = numeric_label_values(base.space());
    long long lo = std::numeric_limits<long long>::max();
    long long hi = std::numeric_limits<long long>::min();
    for (std::size_t i : base.support()) {
        lo = std::min(lo, values[i]);
        hi = std::max(hi, values[i]);
    }
    if (!(static_cast<double>(lo) < mean_target && mean_target < static_cast<double>(hi))) {
        std::ostringstream os;
        os << "mean target " << mean_target << " must lie strictly inside the support range ["
           << lo << ", " << hi << "]";
        throw InfeasibleError(os.str());
    }

    std::vector<double> coeffs(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) coeffs[i] = static_cast<double>(values[i]);

    ConvergenceReport report{base, mean_target, {}};
    for (std::uint64_t n : n_list) {
        if (n == 0) throw std::invalid_argument("draw counts must be positive");
        long long sum_target = std::llround(mean_target * static_cast<double>(n));
        Distribution conditional = conditional_marginal(base, n, sum_target);

        // The projection sees the same mean the conditioning produces.
        double moment_target = static_cast<double>(sum_target) / static_cast<double>(n);
        ConstraintSet constraints(base.space(), Event::empty_event(base.space()),
                                  {MomentConstraint{coeffs, moment_target}});
        MreSolution projected = solve_mre(base, constraints);

        double gap = tv_distance(conditional, projected.posterior);
        report.rows.push_back(ConvergenceRow{n, sum_target, std::move(conditional),
                                             std::move(projected.posterior), gap});
    }
    std::sort(report.rows.begin(), report.rows.end(),
              [](const ConvergenceRow& a, const ConvergenceRow& b) {
                  return a.n_draws < b.n_draws;
              });
    return report;
}

} // namespace mre
