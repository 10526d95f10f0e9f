#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mre/distribution.hpp"
#include "mre/outcome_space.hpp"

namespace mre {

/// Prior over a joint outcome space whose cells refine a hypothesis
/// partition, together with a designated evidence event. Each hypothesis
/// owns a disjoint set of joint cells and the cells cover the space exactly
/// once; in the canonical two-way layout each hypothesis A owns the pair
/// "A&B" / "A&~B" and the evidence event collects the "&B" cells.
class JointPrior {
public:
    JointPrior(Distribution joint, std::vector<std::string> hypothesis_labels,
               std::vector<std::vector<std::string>> hypothesis_cells,
               std::vector<std::string> evidence_cells);

    /// Builds the partition and evidence from the "A&B" / "A&~B" label
    /// convention of the joint space.
    static JointPrior from_label_convention(Distribution joint);

    const Distribution& joint() const noexcept { return joint_; }
    const std::vector<std::string>& hypotheses() const noexcept { return hypotheses_; }
    OutcomeSpace hypothesis_space() const { return OutcomeSpace(hypotheses_); }
    /// Joint-space indices owned by hypothesis h.
    const std::vector<std::size_t>& cells_of(std::size_t h) const { return cells_.at(h); }
    const Event& evidence() const noexcept { return evidence_; }
    /// Prior mass of the designated evidence event.
    double evidence_mass() const { return joint_.mass_of(evidence_); }

private:
    Distribution joint_;
    std::vector<std::string> hypotheses_;
    std::vector<std::vector<std::size_t>> cells_;
    Event evidence_;
};

/// Posterior over the hypotheses after observing the evidence event, by the
/// closed form q(A_i) = p(A_i-cells within B) / p(B).
/// Throws ZeroProbabilityEventError when p(B) = 0.
Distribution bayes_closed_form(const JointPrior& joint, const Event& evidence);

/// The same posterior obtained by I-projection: forces the complement of the
/// evidence to zero (no moments), solves on the joint space, marginalizes
/// onto the hypotheses. The agreement with the closed form is checked inside
/// the call; a gap beyond tol is a library defect and raises logic_error.
Distribution bayes_via_mre(const JointPrior& joint, const Event& evidence, double tol = 1e-10);

struct UpdateStep {
    Event evidence;
    Distribution posterior;
    double step_kl = 0.0; ///< relative entropy of this posterior from the previous one
};

/// Record of a chain of conditionings; immutable once produced.
struct UpdateChain {
    Distribution initial;
    std::vector<UpdateStep> steps;

    const Distribution& final_posterior() const {
        return steps.empty() ? initial : steps.back().posterior;
    }
    /// Sum of the per-step relative entropies.
    double total_kl() const;
};

/// Conditions the prior on each evidence event in turn, recording the
/// posterior and step relative entropy. Evidences need not be nested but the
/// running intersection must keep positive mass; the first step that hits
/// zero mass raises ZeroProbabilityEventError naming the step index. The
/// final posterior equals single-shot conditioning on the intersection.
UpdateChain sequential_update(const Distribution& prior, const std::vector<Event>& evidences);

} // namespace mre
