#include "mre/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "mre/errors.hpp"
#include "mre/info_measures.hpp"

namespace mre {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_data_space(const ParametricModel& model, const Dataset& data) {
    if (model.space != data.space()) {
        throw SpaceMismatchError("dataset lives on a different outcome space than the model");
    }
}

std::map<std::string, std::function<ParametricModel(const OutcomeSpace&)>>& model_registry() {
    static std::map<std::string, std::function<ParametricModel(const OutcomeSpace&)>> registry{
        {"bernoulli", [](const OutcomeSpace& s) { return bernoulli_model(s); }},
        {"categorical", [](const OutcomeSpace& s) { return categorical_model(s); }},
        {"truncated_geometric",
         [](const OutcomeSpace& s) { return truncated_geometric_model(s); }},
    };
    return registry;
}

} // namespace

Dataset::Dataset(OutcomeSpace space, std::vector<std::uint64_t> counts)
    : space_(std::move(space)), counts_(std::move(counts)), total_(0) {
    if (counts_.size() != space_.size()) {
        throw LengthMismatchError("one count per outcome label expected");
    }
    for (std::uint64_t c : counts_) total_ += c;
    if (total_ == 0) {
        throw ZeroTotalError("dataset must contain at least one observation");
    }
}

Distribution Dataset::empirical() const {
    std::vector<double> weights(counts_.begin(), counts_.end());
    return make_distribution(space_, weights);
}

ParametricModel bernoulli_model(const OutcomeSpace& space) {
    if (space.size() != 2) {
        throw SchemaError("bernoulli family needs a two-outcome space");
    }
    auto in_domain = [](std::span<const double> theta) {
        return theta.size() == 1 && theta[0] >= 0.0 && theta[0] <= 1.0;
    };
    return ParametricModel{
        .name = "bernoulli",
        .space = space,
        .dim = 1,
        .bounds = {{0.0, 1.0}},
        .density =
            [space, in_domain](std::span<const double> theta) {
                if (!in_domain(theta)) {
                    throw ThetaOutOfDomainError("bernoulli parameter must lie in [0, 1]");
                }
                return Distribution(space, {theta[0], 1.0 - theta[0]});
            },
        .in_domain = in_domain,
        .closed_form_mle =
            [](const Dataset& data) {
                return std::vector<double>{static_cast<double>(data.counts()[0]) /
                                           static_cast<double>(data.total())};
            },
    };
}

ParametricModel categorical_model(const OutcomeSpace& space) {
    const std::size_t n = space.size();
    if (n < 2) {
        throw SchemaError("categorical family needs at least two outcomes");
    }
    auto in_domain = [n](std::span<const double> theta) {
        if (theta.size() != n - 1) return false;
        double sum = 0.0;
        for (double t : theta) {
            if (!(t >= 0.0)) return false;
            sum += t;
        }
        return sum <= 1.0 + 1e-15;
    };
    return ParametricModel{
        .name = "categorical",
        .space = space,
        .dim = n - 1,
        .bounds = std::vector<std::array<double, 2>>(n - 1, {0.0, 1.0}),
        .density =
            [space, in_domain](std::span<const double> theta) {
                if (!in_domain(theta)) {
                    throw ThetaOutOfDomainError(
                        "categorical parameters must be nonnegative with sum at most 1");
                }
                std::vector<double> weights(theta.begin(), theta.end());
                double sum = 0.0;
                for (double t : theta) sum += t;
                weights.push_back(std::max(0.0, 1.0 - sum));
                return make_distribution(space, weights);
            },
        .in_domain = in_domain,
        .closed_form_mle =
            [n](const Dataset& data) {
                std::vector<double> theta(n - 1);
                for (std::size_t i = 0; i + 1 < n; ++i) {
                    theta[i] = static_cast<double>(data.counts()[i]) /
                               static_cast<double>(data.total());
                }
                return theta;
            },
    };
}

ParametricModel truncated_geometric_model(const OutcomeSpace& space) {
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (space.label(i) != std::to_string(i + 1)) {
            throw SchemaError("truncated_geometric needs labels \"1\"..\"m\" in order");
        }
    }
    if (space.size() < 2) {
        throw SchemaError("truncated_geometric needs at least two outcomes");
    }
    auto in_domain = [](std::span<const double> theta) {
        return theta.size() == 1 && theta[0] >= 0.0 && theta[0] <= 1.0;
    };
    return ParametricModel{
        .name = "truncated_geometric",
        .space = space,
        .dim = 1,
        .bounds = {{0.0, 1.0}},
        .density =
            [space, in_domain](std::span<const double> theta) {
                if (!in_domain(theta)) {
                    throw ThetaOutOfDomainError("truncated_geometric ratio must lie in [0, 1]");
                }
                std::vector<double> weights(space.size());
                double power = 1.0;
                for (std::size_t k = 0; k < space.size(); ++k) {
                    weights[k] = power;
                    power *= theta[0];
                }
                return make_distribution(space, weights);
            },
        .in_domain = in_domain,
        .closed_form_mle = {},
    };
}

ParametricModel make_model(const std::string& name, const OutcomeSpace& space) {
    auto& registry = model_registry();
    auto it = registry.find(name);
    if (it == registry.end()) {
        throw SchemaError("unknown model family '" + name + "'");
    }
    return it->second(space);
}

void register_model(const std::string& name,
                    std::function<ParametricModel(const OutcomeSpace&)> factory) {
    model_registry()[name] = std::move(factory);
}

double log_likelihood(const ParametricModel& model, std::span<const double> theta,
                      const Dataset& data) {
    check_data_space(model, data);
    Distribution density = model.density(theta);
    double total = 0.0;
    for (std::size_t i = 0; i < data.counts().size(); ++i) {
        if (data.counts()[i] == 0) continue;
        if (density.weight(i) == 0.0) return -kInf;
        total += static_cast<double>(data.counts()[i]) * std::log(density.weight(i));
    }
    return total;
}

ExtendedReal empirical_kl(const ParametricModel& model, std::span<const double> theta,
                          const Dataset& data) {
    check_data_space(model, data);
    return relative_entropy(data.empirical(), model.density(theta));
}

MleReport mle_fit(const ParametricModel& model, const Dataset& data, double tol) {
    check_data_space(model, data);
    if (!(tol > 0.0)) {
        throw Error("tolerance must be positive");
    }

    std::vector<double> theta;
    if (model.closed_form_mle) {
        theta = model.closed_form_mle(data);
    } else if (model.dim == 1) {
        // Golden-section bracket on the (unimodal) log likelihood, then
        // bisection on a finite-difference derivative inside the bracket.
        const double lo = model.bounds[0][0];
        const double hi = model.bounds[0][1];
        auto objective = [&](double t) {
            return log_likelihood(model, std::span<const double>(&t, 1), data);
        };
        const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = lo, b = hi;
        double x1 = b - ratio * (b - a);
        double x2 = a + ratio * (b - a);
        double f1 = objective(x1);
        double f2 = objective(x2);
        while (b - a > tol) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + ratio * (b - a);
                f2 = objective(x2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - ratio * (b - a);
                f1 = objective(x1);
            }
        }
        auto derivative = [&](double t) {
            double h = std::max(1e-9, 1e-7 * std::abs(t));
            double left = std::max(lo, t - h);
            double right = std::min(hi, t + h);
            double gl = objective(left);
            double gr = objective(right);
            if (!std::isfinite(gl) || !std::isfinite(gr)) {
                return std::numeric_limits<double>::quiet_NaN();
            }
            return (gr - gl) / (right - left);
        };
        double da = derivative(a);
        double db = derivative(b);
        if (std::isfinite(da) && std::isfinite(db) && da > 0.0 && db < 0.0) {
            for (int it = 0; it < 200 && b - a > 1e-3 * tol; ++it) {
                double mid = 0.5 * (a + b);
                double dm = derivative(mid);
                if (std::isnan(dm)) break;
                if (dm > 0.0) {
                    a = mid;
                } else {
                    b = mid;
                }
            }
        }
        double best = 0.5 * (a + b);
        // A maximum hugging the domain edge is the edge itself.
        if (hi - best <= 2.0 * tol && objective(hi) >= objective(best)) best = hi;
        if (best - lo <= 2.0 * tol && objective(lo) >= objective(best)) best = lo;
        theta = {best};
    } else {
        throw Error("family '" + model.name + "' has no closed form and is not one-parameter");
    }

    MleReport report;
    report.theta_hat = theta;
    report.log_likelihood = log_likelihood(model, theta, data);
    report.empirical_kl = empirical_kl(model, theta, data);

    for (std::size_t k = 0; k < theta.size(); ++k) {
        if (theta[k] == model.bounds[k][0] || theta[k] == model.bounds[k][1]) {
            report.degenerate = true;
            report.note = "theta on the domain boundary";
        }
    }
    Distribution fitted = model.density(theta);
    for (std::size_t i = 0; i < fitted.size(); ++i) {
        if (fitted.weight(i) == 0.0) {
            report.degenerate = true;
            report.note = report.note.empty()
                              ? "some outcome has zero fitted probability"
                              : report.note + "; some outcome has zero fitted probability";
            break;
        }
    }
    return report;
}

} // namespace mre
