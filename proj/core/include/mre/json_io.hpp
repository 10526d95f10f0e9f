#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mre/bayes.hpp"
#include "mre/convergence.hpp"
#include "mre/distribution.hpp"
#include "mre/extended_real.hpp"
#include "mre/mle.hpp"
#include "mre/solver.hpp"

// JSON document formats. Parsing is strict: unknown fields are rejected so a
// misspelled constraint never silently drops information. Serialized floats
// use the shortest decimal that round-trips the exact double, which makes
// outputs byte-stable and re-ingestion lossless; infinities appear as the
// tokens "inf" / "-inf".

namespace mre {

/// {"labels": [...], "weights": [...]}
std::string distribution_to_json(const Distribution& d);
Distribution distribution_from_json(std::string_view text);

/// {"prior": {...}, "zeros": [...], "moments": [{"coeffs": {label: value},
///  "target": b}, ...], "tol": optional}. zeros/moments default to empty;
/// coefficients absent from a moment's map default to 0.
struct MreProblem {
    Distribution prior;
    ConstraintSet constraints;
    std::optional<double> tol;
};
MreProblem update_problem_from_json(std::string_view text);

/// Same document with "labels" in place of "prior".
struct MaxentProblem {
    OutcomeSpace space;
    ConstraintSet constraints;
    std::optional<double> tol;
};
MaxentProblem maxent_problem_from_json(std::string_view text);

/// Solution files echo the problem plus posterior, multipliers, kl,
/// residual, iterations.
std::string update_solution_to_json(const MreProblem& problem, const MreSolution& solution,
                                    double effective_tol);
std::string maxent_solution_to_json(const MaxentProblem& problem, const MreSolution& solution,
                                    double effective_tol);

/// {"joint": {...}, "hypotheses": {label: [joint labels...]}, "evidence":
///  [joint labels...]}
JointPrior bayes_case_from_json(std::string_view text);

std::string bayes_result_to_json(const Distribution& posterior);
std::string bayes_both_to_json(const Distribution& closed, const Distribution& via_mre,
                               double tv_gap);

/// {"model": name, "data": {label: count, ...}} or
/// {"model": name, "synthetic": {"labels": [...], "theta": [...], "n": N}}
/// (the synthetic form draws a dataset; the CLI seeds the draw).
struct SyntheticSpec {
    std::vector<std::string> labels;
    std::vector<double> theta;
    std::uint64_t n = 0;
};
struct MleInput {
    std::string model_name;
    std::variant<Dataset, SyntheticSpec> source;
};
MleInput mle_input_from_json(std::string_view text);

std::string mle_report_to_json(const std::string& model_name, const MleReport& report);

/// {"base": {...}, "mean_target": x, "N_list": [...]}
struct ConvergeInput {
    Distribution base;
    double mean_target = 0.0;
    std::vector<std::uint64_t> n_list;
};
ConvergeInput converge_input_from_json(std::string_view text);

std::string convergence_report_to_json(const ConvergenceReport& report);
/// Aligned-column text rendering of the same report.
std::string convergence_report_to_table(const ConvergenceReport& report);

/// Either {"p": {...}} / {"p": {...}, "q": {...}} for distribution measures
/// or {"prior": x, "posterior": y} for a single-proposition gain.
struct InfoInput {
    std::optional<Distribution> p;
    std::optional<Distribution> q;
    std::optional<double> prior_plausibility;
    std::optional<double> posterior_plausibility;
};
InfoInput info_input_from_json(std::string_view text);

struct InfoResult {
    std::optional<double> information_gain;
    std::optional<double> shannon_entropy_p;
    std::optional<double> shannon_entropy_q;
    std::optional<ExtendedReal> relative_entropy_qp; ///< H(q;p)
    std::optional<ExtendedReal> relative_entropy_pq; ///< H(p;q)
    std::optional<double> tv;
};
std::string info_result_to_json(const InfoResult& result);

/// Plain-text renderings for --format table.
std::string distribution_to_table(const Distribution& d);
std::string solution_to_table(const MreSolution& solution);
std::string mle_report_to_table(const std::string& model_name, const MleReport& report);
std::string info_result_to_table(const InfoResult& result);
std::string bayes_both_to_table(const Distribution& closed, const Distribution& via_mre,
                                double tv_gap);

/// Shortest round-trip decimal for a finite double; "inf" / "-inf" tokens.
std::string format_double(double value);

} // namespace mre
