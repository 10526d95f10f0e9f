#include "mre/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include <Eigen/Dense>

#include "mre/errors.hpp"
#include "mre/info_measures.hpp"

namespace mre {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tolerance for deciding that a moment target sits on the edge of its
// achievable range (and for membership in the corresponding hull face).
double edge_eps(double extreme) {
    return 1e-12 * std::max(1.0, std::abs(extreme));
}

std::vector<std::size_t> allowed_indices(const Distribution& prior, const ConstraintSet& cs) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < prior.size(); ++i) {
        if (prior.weight(i) > 0.0 && !cs.zero_outcomes().contains(i)) {
            out.push_back(i);
        }
    }
    return out;
}

void check_problem_shape(const Distribution& prior, const ConstraintSet& cs) {
    if (prior.space() != cs.space()) {
        throw SpaceMismatchError("prior and constraint set live on different outcome spaces");
    }
}

void check_lambda_shape(const ConstraintSet& cs, std::span<const double> lambdas) {
    if (lambdas.size() != cs.moments().size()) {
        throw LengthMismatchError("one multiplier per moment constraint expected");
    }
}

// Tilted weights over the given indices, plus log Z with respect to the raw
// prior weights. Stabilized by shifting the exponent by its maximum.
struct TiltResult {
    std::vector<double> weights; // aligned to `indices`, sums to 1
    double log_z = 0.0;
};

TiltResult tilt_on(const Distribution& prior, const std::vector<std::size_t>& indices,
                   const std::vector<const MomentConstraint*>& moments,
                   std::span<const double> lambdas) {
    std::vector<double> exponent(indices.size());
    double peak = -kInf;
    for (std::size_t t = 0; t < indices.size(); ++t) {
        double s = std::log(prior.weight(indices[t]));
        for (std::size_t k = 0; k < moments.size(); ++k) {
            s -= lambdas[k] * moments[k]->coeffs[indices[t]];
        }
        exponent[t] = s;
        peak = std::max(peak, s);
    }
    TiltResult result;
    result.weights.resize(indices.size());
    double total = 0.0;
    for (std::size_t t = 0; t < indices.size(); ++t) {
        result.weights[t] = std::exp(exponent[t] - peak);
        total += result.weights[t];
    }
    for (double& w : result.weights) w /= total;
    result.log_z = peak + std::log(total);
    return result;
}

std::vector<const MomentConstraint*> moment_pointers(const ConstraintSet& cs) {
    std::vector<const MomentConstraint*> out;
    out.reserve(cs.moments().size());
    for (const auto& mc : cs.moments()) out.push_back(&mc);
    return out;
}

std::string format_range_violation(std::size_t index, const MomentRange& range) {
    std::ostringstream os;
    os << "moment " << index << ": target " << range.target
       << " outside achievable range [" << range.min << ", " << range.max << "]";
    return os.str();
}

} // namespace

ConstraintSet::ConstraintSet(OutcomeSpace space)
    : space_(space), zero_outcomes_(Event::empty_event(space)) {}

ConstraintSet::ConstraintSet(OutcomeSpace space, Event zero_outcomes,
                             std::vector<MomentConstraint> moments)
    : space_(std::move(space)), zero_outcomes_(std::move(zero_outcomes)),
      moments_(std::move(moments)) {
    if (zero_outcomes_.space() != space_) {
        throw SpaceMismatchError("zero_outcomes live on a different outcome space");
    }
    if (zero_outcomes_.is_full()) {
        throw AllMassExcludedError("zero_outcomes must not cover the entire space");
    }
    for (const auto& mc : moments_) {
        if (mc.coeffs.size() != space_.size()) {
            throw LengthMismatchError("moment coefficient vector length does not match space");
        }
    }
}

bool FeasibilityReport::feasible() const {
    if (!has_allowed_mass) return false;
    return std::none_of(moments.begin(), moments.end(), [](const MomentRange& r) {
        return r.status == MomentFeasibility::infeasible;
    });
}

bool FeasibilityReport::boundary() const {
    return std::any_of(moments.begin(), moments.end(), [](const MomentRange& r) {
        return r.status == MomentFeasibility::boundary;
    });
}

std::string FeasibilityReport::describe() const {
    if (!has_allowed_mass) {
        return "infeasible: no prior mass remains outside the zero-forced outcomes";
    }
    std::ostringstream os;
    bool any = false;
    for (std::size_t j = 0; j < moments.size(); ++j) {
        const auto& r = moments[j];
        if (r.status == MomentFeasibility::infeasible) {
            if (any) os << "; ";
            os << "infeasible: " << format_range_violation(j, r);
            any = true;
        } else if (r.status == MomentFeasibility::boundary) {
            if (any) os << "; ";
            os << "boundary: moment " << j << ": target " << r.target
               << " at the edge of achievable range [" << r.min << ", " << r.max << "]";
            any = true;
        }
    }
    if (!any) return "strictly feasible";
    return os.str();
}

FeasibilityReport check_feasibility(const Distribution& prior, const ConstraintSet& cs) {
    check_problem_shape(prior, cs);
    FeasibilityReport report;
    auto allowed = allowed_indices(prior, cs);
    report.has_allowed_mass = !allowed.empty();
    report.moments.reserve(cs.moments().size());
    for (const auto& mc : cs.moments()) {
        MomentRange range;
        range.target = mc.target;
        if (allowed.empty()) {
            range.min = range.max = std::numeric_limits<double>::quiet_NaN();
            range.status = MomentFeasibility::infeasible;
        } else {
            range.min = kInf;
            range.max = -kInf;
            for (std::size_t i : allowed) {
                range.min = std::min(range.min, mc.coeffs[i]);
                range.max = std::max(range.max, mc.coeffs[i]);
            }
            if (mc.target < range.min - edge_eps(range.min) ||
                mc.target > range.max + edge_eps(range.max)) {
                range.status = MomentFeasibility::infeasible;
            } else if (mc.target <= range.min + edge_eps(range.min) ||
                       mc.target >= range.max - edge_eps(range.max)) {
                range.status = MomentFeasibility::boundary;
            } else {
                range.status = MomentFeasibility::strictly_feasible;
            }
        }
        report.moments.push_back(range);
    }
    return report;
}

Distribution exponential_tilt(const Distribution& prior, const ConstraintSet& cs,
                              std::span<const double> lambdas) {
    check_problem_shape(prior, cs);
    check_lambda_shape(cs, lambdas);
    auto allowed = allowed_indices(prior, cs);
    if (allowed.empty()) {
        throw AllMassExcludedError("prior has no mass outside the zero-forced outcomes");
    }
    // A tilt that changes nothing returns the prior unchanged.
    bool identity = allowed.size() == prior.support().size();
    for (double l : lambdas) {
        if (l != 0.0) identity = false;
    }
    if (identity) return prior;

    auto tilt = tilt_on(prior, allowed, moment_pointers(cs), lambdas);
    std::vector<double> weights(prior.size(), 0.0);
    for (std::size_t t = 0; t < allowed.size(); ++t) {
        weights[allowed[t]] = tilt.weights[t];
    }
    return Distribution(prior.space(), std::move(weights));
}

double dual_value(const Distribution& prior, const ConstraintSet& cs,
                  std::span<const double> lambdas) {
    check_problem_shape(prior, cs);
    check_lambda_shape(cs, lambdas);
    auto allowed = allowed_indices(prior, cs);
    if (allowed.empty()) {
        throw AllMassExcludedError("prior has no mass outside the zero-forced outcomes");
    }
    auto tilt = tilt_on(prior, allowed, moment_pointers(cs), lambdas);
    double value = tilt.log_z;
    for (std::size_t j = 0; j < cs.moments().size(); ++j) {
        value += lambdas[j] * cs.moments()[j].target;
    }
    return value;
}

std::vector<double> dual_gradient(const Distribution& prior, const ConstraintSet& cs,
                                  std::span<const double> lambdas) {
    check_problem_shape(prior, cs);
    check_lambda_shape(cs, lambdas);
    auto allowed = allowed_indices(prior, cs);
    if (allowed.empty()) {
        throw AllMassExcludedError("prior has no mass outside the zero-forced outcomes");
    }
    auto tilt = tilt_on(prior, allowed, moment_pointers(cs), lambdas);
    std::vector<double> grad(cs.moments().size());
    for (std::size_t j = 0; j < cs.moments().size(); ++j) {
        double expectation = 0.0;
        for (std::size_t t = 0; t < allowed.size(); ++t) {
            expectation += tilt.weights[t] * cs.moments()[j].coeffs[allowed[t]];
        }
        grad[j] = cs.moments()[j].target - expectation;
    }
    return grad;
}

// The projection problem
//     min_q sum_i q_i log(q_i / p_i)
//     s.t.  sum_i q_i = 1,  A q = b,  q = 0 on excluded outcomes
// has the stationarity condition q_i = p_i exp(-lambda . a_i) / Z(lambda) on
// the allowed support, so the solve reduces to the smooth strictly convex
// dual psi(lambda) = log Z(lambda) + lambda . b with
//     grad psi = b - E_q[a],   hess psi = Cov_q(a).
// Targets at the edge of their achievable range would drive a multiplier to
// infinity; those constraints are resolved first by restricting the support
// to the matching hull face, which terminates finitely.
MreSolution solve_mre(const Distribution& prior, const ConstraintSet& cs, double tol,
                      int max_iter) {
    check_problem_shape(prior, cs);
    if (!(tol > 0.0)) {
        throw Error("tolerance must be positive");
    }

    FeasibilityReport report = check_feasibility(prior, cs);
    if (!report.has_allowed_mass || !report.feasible()) {
        throw InfeasibleError(report.describe());
    }

    const auto& moments = cs.moments();
    const std::size_t n_moments = moments.size();

    std::vector<std::size_t> active = allowed_indices(prior, cs);
    std::vector<double> multipliers(n_moments, 0.0);
    std::vector<std::size_t> remaining;
    for (std::size_t j = 0; j < n_moments; ++j) remaining.push_back(j);
    bool boundary = false;

    // Resolve hull-boundary targets by restricting to their face. Each pass
    // may tighten the ranges of the moments still pending, so iterate to a
    // fixed point.
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = remaining.begin(); it != remaining.end();) {
            const auto& mc = moments[*it];
            double lo = kInf, hi = -kInf;
            for (std::size_t i : active) {
                lo = std::min(lo, mc.coeffs[i]);
                hi = std::max(hi, mc.coeffs[i]);
            }
            if (mc.target < lo - edge_eps(lo) || mc.target > hi + edge_eps(hi)) {
                MomentRange range{lo, hi, mc.target, MomentFeasibility::infeasible};
                throw InfeasibleError("infeasible on the reduced support: " +
                                      format_range_violation(*it, range));
            }
            if (hi - lo <= edge_eps(hi)) {
                // Constant on the current support: vacuously satisfied.
                multipliers[*it] = 0.0;
                it = remaining.erase(it);
                changed = true;
            } else if (mc.target >= hi - edge_eps(hi)) {
                std::vector<std::size_t> face;
                for (std::size_t i : active) {
                    if (mc.coeffs[i] >= hi - edge_eps(hi)) face.push_back(i);
                }
                active = std::move(face);
                multipliers[*it] = -kInf;
                boundary = true;
                it = remaining.erase(it);
                changed = true;
            } else if (mc.target <= lo + edge_eps(lo)) {
                std::vector<std::size_t> face;
                for (std::size_t i : active) {
                    if (mc.coeffs[i] <= lo + edge_eps(lo)) face.push_back(i);
                }
                active = std::move(face);
                multipliers[*it] = kInf;
                boundary = true;
                it = remaining.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }

    std::vector<const MomentConstraint*> newton_moments;
    std::vector<double> targets;
    for (std::size_t j : remaining) {
        newton_moments.push_back(&moments[j]);
        targets.push_back(moments[j].target);
    }
    const std::size_t r = newton_moments.size();

    double min_active_prior = kInf;
    for (std::size_t i : active) min_active_prior = std::min(min_active_prior, prior.weight(i));
    // A feasible problem keeps psi above log(min prior weight); falling well
    // below certifies jointly unachievable targets.
    const double psi_floor = std::log(min_active_prior) - 1.0;

    auto psi_at = [&](std::span<const double> lam) {
        auto tilt = tilt_on(prior, active, newton_moments, lam);
        double value = tilt.log_z;
        for (std::size_t k = 0; k < r; ++k) value += lam[k] * targets[k];
        return value;
    };

    std::vector<double> lam(r, 0.0);
    TiltResult tilt = tilt_on(prior, active, newton_moments, lam);
    std::vector<double> best_lam = lam;
    double best_resid = kInf;
    int iterations = 0;
    bool converged = false;

    for (;;) {
        // Moment residuals under the current tilt.
        std::vector<double> expectation(r, 0.0);
        for (std::size_t k = 0; k < r; ++k) {
            for (std::size_t t = 0; t < active.size(); ++t) {
                expectation[k] += tilt.weights[t] * newton_moments[k]->coeffs[active[t]];
            }
        }
        double max_resid = 0.0;
        for (std::size_t k = 0; k < r; ++k) {
            max_resid = std::max(max_resid, std::abs(expectation[k] - targets[k]));
        }
        if (max_resid < best_resid) {
            best_resid = max_resid;
            best_lam = lam;
        }
        if (max_resid <= 0.5 * tol) {
            converged = true;
            break;
        }
        if (iterations >= max_iter) break;

        // Newton step on the dual: Cov_q(a) d = E_q[a] - b.
        Eigen::MatrixXd hess(r, r);
        for (std::size_t k = 0; k < r; ++k) {
            for (std::size_t l = k; l < r; ++l) {
                double second = 0.0;
                for (std::size_t t = 0; t < active.size(); ++t) {
                    second += tilt.weights[t] * newton_moments[k]->coeffs[active[t]] *
                              newton_moments[l]->coeffs[active[t]];
                }
                double cov = second - expectation[k] * expectation[l];
                hess(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = cov;
                hess(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(k)) = cov;
            }
        }
        Eigen::VectorXd grad(r);
        for (std::size_t k = 0; k < r; ++k) {
            grad(static_cast<Eigen::Index>(k)) = targets[k] - expectation[k];
        }
        Eigen::VectorXd direction = hess.ldlt().solve(-grad);
        bool usable = direction.allFinite() && grad.dot(direction) < 0.0;
        if (!usable) direction = -grad;

        std::vector<double> candidate(r);
        // Inside the quadratic basin the per-step decrease of psi drops below
        // double rounding, so a line search can no longer certify descent;
        // the raw Newton step is contractive there and is taken as is.
        if (usable && max_resid <= 1e-6) {
            for (std::size_t k = 0; k < r; ++k) {
                candidate[k] = lam[k] + direction(static_cast<Eigen::Index>(k));
            }
        } else {
            double psi0 = psi_at(lam);
            double slope = grad.dot(direction);
            double step = 1.0;
            bool moved = false;
            for (int halvings = 0; halvings < 60; ++halvings) {
                for (std::size_t k = 0; k < r; ++k) {
                    candidate[k] = lam[k] + step * direction(static_cast<Eigen::Index>(k));
                }
                if (psi_at(candidate) <= psi0 + 1e-4 * step * slope) {
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) break; // stalled; report the best iterate
        }
        lam = candidate;
        ++iterations;
        tilt = tilt_on(prior, active, newton_moments, lam);
        if (tilt.log_z + std::inner_product(lam.begin(), lam.end(), targets.begin(), 0.0) <
            psi_floor) {
            throw UnboundedDualError(
                "dual objective unbounded below; moment targets are jointly unachievable "
                "on the allowed support");
        }
    }

    if (!converged) {
        lam = best_lam;
        tilt = tilt_on(prior, active, newton_moments, lam);
    }

    // Expand onto the full space with exact zeros off the active support.
    bool identity = active.size() == prior.support().size() &&
                    std::all_of(lam.begin(), lam.end(), [](double v) { return v == 0.0; });
    Distribution posterior = [&] {
        if (identity) return prior;
        std::vector<double> weights(prior.size(), 0.0);
        for (std::size_t t = 0; t < active.size(); ++t) {
            weights[active[t]] = tilt.weights[t];
        }
        return Distribution(prior.space(), std::move(weights));
    }();

    for (std::size_t k = 0; k < r; ++k) multipliers[remaining[k]] = lam[k];
    double normalization_multiplier = tilt.log_z - 1.0;
    multipliers.push_back(normalization_multiplier);

    // KKT certificate: constraint violations plus stationarity violation.
    double total = 0.0;
    for (double w : posterior.weights()) total += w;
    double max_violation = std::abs(total - 1.0);
    for (const auto& mc : moments) {
        double value = 0.0;
        for (std::size_t i = 0; i < posterior.size(); ++i) {
            value += mc.coeffs[i] * posterior.weight(i);
        }
        max_violation = std::max(max_violation, std::abs(value - mc.target));
    }
    double stationarity = 0.0;
    for (std::size_t t = 0; t < active.size(); ++t) {
        std::size_t i = active[t];
        double s = std::log(posterior.weight(i) / prior.weight(i)) + 1.0 +
                   normalization_multiplier;
        for (std::size_t k = 0; k < r; ++k) {
            s += lam[k] * newton_moments[k]->coeffs[i];
        }
        stationarity = std::max(stationarity, std::abs(s));
    }

    MreSolution solution{
        .posterior = std::move(posterior),
        .multipliers = std::move(multipliers),
        .achieved_kl = ExtendedReal(0.0),
        .kkt_residual = max_violation + stationarity,
        .iterations = iterations,
        .converged = converged && (max_violation + stationarity) <= tol,
        .boundary = boundary,
    };
    solution.achieved_kl = relative_entropy(solution.posterior, prior);
    return solution;
}

} // namespace mre
