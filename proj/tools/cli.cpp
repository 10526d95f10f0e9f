#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <utility>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"

#include "mre/bayes.hpp"
#include "mre/convergence.hpp"
#include "mre/distribution.hpp"
#include "mre/errors.hpp"
#include "mre/info_measures.hpp"
#include "mre/json_io.hpp"
#include "mre/maxent.hpp"
#include "mre/mle.hpp"
#include "mre/solver.hpp"

namespace mre::cli {

namespace {

constexpr double kDefaultSolverTol = 1e-10;
constexpr double kDefaultFitTol = 1e-8;

struct CommonOpts {
    std::string input;
    std::string output;
    std::string format = "json";
    std::optional<double> tol;
};

void add_common(CLI::App* sub, CommonOpts& o, bool with_tol = true) {
    sub->add_option("input", o.input, "input JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--output", o.output, "write to this file instead of stdout");
    sub->add_option("--format", o.format, "output format (json|table)")
        ->check(CLI::IsMember({"json", "table"}));
    if (with_tol) {
        sub->add_option("--tol", o.tol, "convergence tolerance")->check(CLI::PositiveNumber);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read input file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& content, const CommonOpts& o, std::ostream& out) {
    if (o.output.empty()) {
        out << content;
        return;
    }
    std::ofstream file(o.output, std::ios::binary);
    if (!file) throw Error("cannot write output file '" + o.output + "'");
    file << content;
    file.close();
    if (!file) throw Error("cannot write output file '" + o.output + "'");
}

void write_error_report(const std::string& message, const CommonOpts& o, std::ostream& out) {
    if (o.format == "json") {
        nlohmann::ordered_json report;
        report["error"] = message;
        write_output(report.dump(2) + "\n", o, out);
    } else {
        write_output("error  " + message + "\n", o, out);
    }
}

// Problems that are well-formed but unsolvable as posed.
bool is_degenerate_problem(const Error& e) {
    return dynamic_cast<const InfeasibleError*>(&e) != nullptr ||
           dynamic_cast<const UnboundedDualError*>(&e) != nullptr ||
           dynamic_cast<const AllMassExcludedError*>(&e) != nullptr ||
           dynamic_cast<const ZeroProbabilityEventError*>(&e) != nullptr ||
           dynamic_cast<const UnachievableSumError*>(&e) != nullptr;
}

template <typename Fn>
int dispatch(const CommonOpts& o, std::ostream& out, std::ostream& err, Fn&& handler) {
    try {
        return handler();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        if (!is_degenerate_problem(e)) return 1;
        write_error_report(e.what(), o, out);
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_info(const CommonOpts& o, std::ostream& out) {
    InfoInput input = info_input_from_json(read_file(o.input));
    InfoResult result;
    if (input.prior_plausibility) {
        result.information_gain =
            information_gain(*input.prior_plausibility, *input.posterior_plausibility);
    } else {
        result.shannon_entropy_p = shannon_entropy(*input.p);
        if (input.q) {
            result.shannon_entropy_q = shannon_entropy(*input.q);
            result.relative_entropy_qp = relative_entropy(*input.q, *input.p);
            result.relative_entropy_pq = relative_entropy(*input.p, *input.q);
            result.tv = tv_distance(*input.p, *input.q);
        }
    }
    write_output(o.format == "json" ? info_result_to_json(result) : info_result_to_table(result),
                 o, out);
    return 0;
}

int emit_solution_exit(bool converged, std::ostream& err) {
    if (converged) return 0;
    err << "warning: solver stopped before reaching the tolerance; best iterate reported\n";
    return 2;
}

int run_update(const CommonOpts& o, std::ostream& out, std::ostream& err) {
    MreProblem problem = update_problem_from_json(read_file(o.input));
    double tol = o.tol ? *o.tol : problem.tol.value_or(kDefaultSolverTol);
    MreSolution solution = solve_mre(problem.prior, problem.constraints, tol);
    write_output(o.format == "json" ? update_solution_to_json(problem, solution, tol)
                                    : solution_to_table(solution),
                 o, out);
    return emit_solution_exit(solution.converged, err);
}

int run_maxent(const CommonOpts& o, std::ostream& out, std::ostream& err) {
    MaxentProblem problem = maxent_problem_from_json(read_file(o.input));
    double tol = o.tol ? *o.tol : problem.tol.value_or(kDefaultSolverTol);
    MreSolution solution = maxent(problem.space, problem.constraints, tol);
    write_output(o.format == "json" ? maxent_solution_to_json(problem, solution, tol)
                                    : solution_to_table(solution),
                 o, out);
    return emit_solution_exit(solution.converged, err);
}

int run_bayes(const CommonOpts& o, const std::string& method, std::ostream& out) {
    JointPrior joint = bayes_case_from_json(read_file(o.input));
    double tol = o.tol.value_or(kDefaultSolverTol);
    if (method == "closed" || method == "mre") {
        Distribution posterior = method == "closed"
                                     ? bayes_closed_form(joint, joint.evidence())
                                     : bayes_via_mre(joint, joint.evidence(), tol);
        write_output(o.format == "json" ? bayes_result_to_json(posterior)
                                        : distribution_to_table(posterior),
                     o, out);
        return 0;
    }
    Distribution closed = bayes_closed_form(joint, joint.evidence());
    Distribution via_mre = bayes_via_mre(joint, joint.evidence(), tol);
    double gap = tv_distance(closed, via_mre);
    write_output(o.format == "json" ? bayes_both_to_json(closed, via_mre, gap)
                                    : bayes_both_to_table(closed, via_mre, gap),
                 o, out);
    return 0;
}

// Deterministic uniform variate in [0, 1): top 53 bits of the engine output.
double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Dataset draw_dataset(const std::string& model_name, const SyntheticSpec& spec,
                     std::uint64_t seed) {
    OutcomeSpace space(spec.labels);
    ParametricModel model = make_model(model_name, space);
    Distribution density = model.density(spec.theta);
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> counts(space.size(), 0);
    for (std::uint64_t draw = 0; draw < spec.n; ++draw) {
        double u = unit_draw(rng);
        double cumulative = 0.0;
        std::size_t picked = space.size() - 1;
        for (std::size_t i = 0; i < space.size(); ++i) {
            cumulative += density.weight(i);
            if (u < cumulative) {
                picked = i;
                break;
            }
        }
        ++counts[picked];
    }
    return Dataset(space, std::move(counts));
}

int run_mle(const CommonOpts& o, std::uint64_t seed, std::ostream& out, std::ostream& err) {
    MleInput input = mle_input_from_json(read_file(o.input));
    Dataset data = std::holds_alternative<Dataset>(input.source)
                       ? std::get<Dataset>(std::move(input.source))
                       : draw_dataset(input.model_name, std::get<SyntheticSpec>(input.source),
                                      seed);
    ParametricModel model = make_model(input.model_name, data.space());
    MleReport report = mle_fit(model, data, o.tol.value_or(kDefaultFitTol));
    write_output(o.format == "json" ? mle_report_to_json(input.model_name, report)
                                    : mle_report_to_table(input.model_name, report),
                 o, out);
    if (report.degenerate) {
        err << "warning: degenerate fit: " << report.note << "\n";
        return 2;
    }
    return 0;
}

int run_converge(const CommonOpts& o, std::ostream& out) {
    ConvergeInput input = converge_input_from_json(read_file(o.input));
    ConvergenceReport report = convergence_experiment(input.base, input.mean_target, input.n_list);
    write_output(o.format == "json" ? convergence_report_to_json(report)
                                    : convergence_report_to_table(report),
                 o, out);
    return 0;
}

} // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Minimum relative entropy inference over finite outcome spaces"};
    app.name("mre");
    app.require_subcommand(1);

    CommonOpts info_o;
    CLI::App* info_cmd = app.add_subcommand("info", "entropy and divergence measures");
    add_common(info_cmd, info_o, /*with_tol=*/false);

    CommonOpts update_o;
    CLI::App* update_cmd =
        app.add_subcommand("update", "project a prior onto zero and moment constraints");
    add_common(update_cmd, update_o);

    CommonOpts maxent_o;
    CLI::App* maxent_cmd =
        app.add_subcommand("maxent", "maximum-entropy distribution under constraints");
    add_common(maxent_cmd, maxent_o);

    CommonOpts bayes_o;
    std::string method = "both";
    CLI::App* bayes_cmd = app.add_subcommand("bayes", "condition a joint prior on evidence");
    add_common(bayes_cmd, bayes_o);
    bayes_cmd->add_option("--method", method, "closed form, projection, or both")
        ->check(CLI::IsMember({"closed", "mre", "both"}));

    CommonOpts mle_o;
    std::uint64_t seed = 1;
    CLI::App* mle_cmd = app.add_subcommand("mle", "maximum-likelihood fit of a model family");
    add_common(mle_cmd, mle_o);
    mle_cmd->add_option("--seed", seed, "seed for synthetic dataset draws");

    CommonOpts converge_o;
    CLI::App* converge_cmd = app.add_subcommand(
        "converge", "conditioning-versus-projection convergence experiment");
    add_common(converge_cmd, converge_o, /*with_tol=*/false);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    if (info_cmd->parsed()) {
        return dispatch(info_o, out, err, [&] { return run_info(info_o, out); });
    }
    if (update_cmd->parsed()) {
        return dispatch(update_o, out, err, [&] { return run_update(update_o, out, err); });
    }
    if (maxent_cmd->parsed()) {
        return dispatch(maxent_o, out, err, [&] { return run_maxent(maxent_o, out, err); });
    }
    if (bayes_cmd->parsed()) {
        return dispatch(bayes_o, out, err, [&] { return run_bayes(bayes_o, method, out); });
    }
    if (mle_cmd->parsed()) {
        return dispatch(mle_o, out, err, [&] { return run_mle(mle_o, seed, out, err); });
    }
    return dispatch(converge_o, out, err, [&] { return run_converge(converge_o, out); });
}

} // namespace mre::cli
