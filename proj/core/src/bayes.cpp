#include "mre/bayes.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "mre/errors.hpp"
#include "mre/info_measures.hpp"
#include "mre/solver.hpp"

namespace mre {

JointPrior::JointPrior(Distribution joint, std::vector<std::string> hypothesis_labels,
                       std::vector<std::vector<std::string>> hypothesis_cells,
                       std::vector<std::string> evidence_cells)
    : joint_(std::move(joint)), hypotheses_(std::move(hypothesis_labels)),
      evidence_(Event::empty_event(joint_.space())) {
    if (hypotheses_.size() != hypothesis_cells.size()) {
        throw LengthMismatchError("one cell list per hypothesis expected");
    }
    [[maybe_unused]] OutcomeSpace hypothesis_check(hypotheses_); // enforces nonempty, distinct labels
    const OutcomeSpace& space = joint_.space();
    std::vector<bool> claimed(space.size(), false);
    cells_.resize(hypotheses_.size());
    for (std::size_t h = 0; h < hypotheses_.size(); ++h) {
        for (const std::string& label : hypothesis_cells[h]) {
            std::size_t i = space.index_of(label);
            if (claimed[i]) {
                throw Error("joint cell '" + label + "' assigned to more than one hypothesis");
            }
            claimed[i] = true;
            cells_[h].push_back(i);
        }
    }
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (!claimed[i]) {
            throw Error("joint cell '" + space.label(i) + "' not assigned to any hypothesis");
        }
    }
    evidence_ = Event(space, evidence_cells);
}

JointPrior JointPrior::from_label_convention(Distribution joint) {
    std::vector<std::string> hypotheses;
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> evidence;
    for (const std::string& label : joint.space().labels()) {
        auto amp = label.find('&');
        if (amp == std::string::npos || amp == 0 || amp + 1 == label.size() ||
            label.find('&', amp + 1) != std::string::npos) {
            throw SchemaError("joint label '" + label +
                              "' must read '<hypothesis>&<evidence>' with one '&'");
        }
        std::string head = label.substr(0, amp);
        std::string tail = label.substr(amp + 1);
        std::size_t h = hypotheses.size();
        for (std::size_t k = 0; k < hypotheses.size(); ++k) {
            if (hypotheses[k] == head) {
                h = k;
                break;
            }
        }
        if (h == hypotheses.size()) {
            hypotheses.push_back(head);
            cells.emplace_back();
        }
        cells[h].push_back(label);
        if (tail[0] != '~') evidence.push_back(label);
    }
    return JointPrior(std::move(joint), std::move(hypotheses), std::move(cells),
                      std::move(evidence));
}

Distribution bayes_closed_form(const JointPrior& joint, const Event& evidence) {
    if (evidence.space() != joint.joint().space()) {
        throw SpaceMismatchError("evidence lives on a different outcome space than the joint");
    }
    if (joint.joint().mass_of(evidence) == 0.0) {
        throw ZeroProbabilityEventError("evidence event has zero prior probability");
    }
    std::vector<double> numerators(joint.hypotheses().size(), 0.0);
    for (std::size_t h = 0; h < joint.hypotheses().size(); ++h) {
        for (std::size_t i : joint.cells_of(h)) {
            if (evidence.contains(i)) numerators[h] += joint.joint().weight(i);
        }
    }
    return make_distribution(joint.hypothesis_space(), numerators);
}

Distribution bayes_via_mre(const JointPrior& joint, const Event& evidence, double tol) {
    if (evidence.space() != joint.joint().space()) {
        throw SpaceMismatchError("evidence lives on a different outcome space than the joint");
    }
    if (joint.joint().mass_of(evidence) == 0.0) {
        throw ZeroProbabilityEventError("evidence event has zero prior probability");
    }
    ConstraintSet zeros_only(joint.joint().space(), evidence.complement(), {});
    MreSolution solution = solve_mre(joint.joint(), zeros_only, tol);

    std::vector<double> marginal(joint.hypotheses().size(), 0.0);
    for (std::size_t h = 0; h < joint.hypotheses().size(); ++h) {
        for (std::size_t i : joint.cells_of(h)) {
            marginal[h] += solution.posterior.weight(i);
        }
    }
    Distribution projected(joint.hypothesis_space(), std::move(marginal));

    Distribution closed = bayes_closed_form(joint, evidence);
    for (std::size_t h = 0; h < closed.size(); ++h) {
        if (std::abs(projected.weight(h) - closed.weight(h)) > tol) {
            std::ostringstream os;
            os << "projection posterior disagrees with the closed form at '"
               << closed.space().label(h) << "': " << projected.weight(h) << " vs "
               << closed.weight(h);
            throw std::logic_error(os.str());
        }
    }
    return projected;
}

double UpdateChain::total_kl() const {
    double total = 0.0;
    for (const UpdateStep& step : steps) total += step.step_kl;
    return total;
}

UpdateChain sequential_update(const Distribution& prior, const std::vector<Event>& evidences) {
    UpdateChain chain{prior, {}};
    const Distribution* current = &chain.initial;
    for (std::size_t k = 0; k < evidences.size(); ++k) {
        const Event& ev = evidences[k];
        if (ev.space() != prior.space()) {
            throw SpaceMismatchError("evidence lives on a different outcome space than the prior");
        }
        if (current->mass_of(ev) == 0.0) {
            std::ostringstream os;
            os << "step " << k << ": evidence event has zero probability under the current state";
            throw ZeroProbabilityEventError(os.str());
        }
        Distribution next = restrict(*current, ev);
        double step_kl = relative_entropy(next, *current).value();
        chain.steps.push_back(UpdateStep{ev, std::move(next), step_kl});
        current = &chain.steps.back().posterior;
    }
    return chain;
}

} // namespace mre
