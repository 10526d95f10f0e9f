#include "mre/json_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <utility>

#include "json.hpp"

#include "mre/errors.hpp"

namespace mre {

namespace {

using json = nlohmann::ordered_json;

json parse_document(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
}

void expect_object(const json& value, std::string_view where) {
    if (!value.is_object()) {
        throw SchemaError(std::string(where) + ": expected an object");
    }
}

void expect_keys(const json& obj, std::string_view where,
                 std::initializer_list<std::string_view> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
            throw SchemaError(std::string(where) + ": unexpected field '" + it.key() + "'");
        }
    }
}

const json& require(const json& obj, const char* key, std::string_view where) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw SchemaError(std::string(where) + ": missing field '" + key + "'");
    }
    return *it;
}

double require_number(const json& value, std::string_view where) {
    if (!value.is_number()) {
        throw SchemaError(std::string(where) + ": expected a number");
    }
    return value.get<double>();
}

std::string require_string(const json& value, std::string_view where) {
    if (!value.is_string()) {
        throw SchemaError(std::string(where) + ": expected a string");
    }
    return value.get<std::string>();
}

std::uint64_t require_count(const json& value, std::string_view where) {
    if (value.is_number_unsigned()) return value.get<std::uint64_t>();
    if (value.is_number_integer()) {
        long long v = value.get<long long>();
        if (v >= 0) return static_cast<std::uint64_t>(v);
    }
    throw SchemaError(std::string(where) + ": expected a nonnegative integer");
}

std::vector<std::string> string_array(const json& value, std::string_view where) {
    if (!value.is_array()) {
        throw SchemaError(std::string(where) + ": expected an array of strings");
    }
    std::vector<std::string> out;
    out.reserve(value.size());
    for (const json& e : value) out.push_back(require_string(e, where));
    return out;
}

std::vector<double> number_array(const json& value, std::string_view where) {
    if (!value.is_array()) {
        throw SchemaError(std::string(where) + ": expected an array of numbers");
    }
    std::vector<double> out;
    out.reserve(value.size());
    for (const json& e : value) out.push_back(require_number(e, where));
    return out;
}

// Structural library errors raised while interpreting a document (duplicate
// labels, negative weights, length mismatches) are malformed input here.
template <typename Fn>
auto as_schema(std::string_view where, Fn&& fn) {
    try {
        return fn();
    } catch (const SchemaError&) {
        throw;
    } catch (const Error& e) {
        throw SchemaError(std::string(where) + ": " + e.what());
    }
}

Distribution parse_distribution(const json& value, std::string_view where) {
    expect_object(value, where);
    expect_keys(value, where, {"labels", "weights"});
    auto labels = string_array(require(value, "labels", where), where);
    auto weights = number_array(require(value, "weights", where), where);
    return as_schema(where, [&] {
        return make_distribution(OutcomeSpace(std::move(labels)), weights);
    });
}

Event parse_zeros(const json& obj, const OutcomeSpace& space) {
    auto it = obj.find("zeros");
    if (it == obj.end()) return Event::empty_event(space);
    auto labels = string_array(*it, "zeros");
    return as_schema("zeros", [&] { return Event(space, labels); });
}

std::vector<MomentConstraint> parse_moments(const json& obj, const OutcomeSpace& space) {
    std::vector<MomentConstraint> moments;
    auto it = obj.find("moments");
    if (it == obj.end()) return moments;
    if (!it->is_array()) {
        throw SchemaError("moments: expected an array");
    }
    for (const json& entry : *it) {
        expect_object(entry, "moments entry");
        expect_keys(entry, "moments entry", {"coeffs", "target"});
        const json& coeffs = require(entry, "coeffs", "moments entry");
        expect_object(coeffs, "coeffs");
        MomentConstraint mc;
        mc.coeffs.assign(space.size(), 0.0);
        for (auto c = coeffs.begin(); c != coeffs.end(); ++c) {
            auto index = space.find(c.key());
            if (!index) {
                throw SchemaError("coeffs: unknown outcome label '" + c.key() + "'");
            }
            mc.coeffs[*index] = require_number(c.value(), "coeffs");
        }
        mc.target = require_number(require(entry, "target", "moments entry"), "target");
        moments.push_back(std::move(mc));
    }
    return moments;
}

std::optional<double> parse_tol(const json& obj) {
    auto it = obj.find("tol");
    if (it == obj.end()) return std::nullopt;
    double tol = require_number(*it, "tol");
    if (!(tol > 0.0)) {
        throw SchemaError("tol: must be positive");
    }
    return tol;
}

json json_number(double v) {
    if (std::isnan(v)) return json("nan");
    if (std::isinf(v)) return json(v > 0.0 ? "inf" : "-inf");
    return json(v);
}

json json_extended(const ExtendedReal& v) { return json_number(v.value()); }

json distribution_json(const Distribution& d) {
    json obj = json::object();
    obj["labels"] = d.space().labels();
    obj["weights"] = d.weights();
    return obj;
}

json zeros_json(const ConstraintSet& cs) { return json(cs.zero_outcomes().members()); }

json moments_json(const ConstraintSet& cs) {
    json arr = json::array();
    for (const MomentConstraint& mc : cs.moments()) {
        json coeffs = json::object();
        for (std::size_t i = 0; i < mc.coeffs.size(); ++i) {
            if (mc.coeffs[i] != 0.0) coeffs[cs.space().label(i)] = mc.coeffs[i];
        }
        json entry = json::object();
        entry["coeffs"] = std::move(coeffs);
        entry["target"] = mc.target;
        arr.push_back(std::move(entry));
    }
    return arr;
}

json solution_fields(const MreSolution& solution) {
    json out = json::object();
    out["posterior"] = distribution_json(solution.posterior);
    json multipliers = json::array();
    for (double m : solution.multipliers) multipliers.push_back(json_number(m));
    out["multipliers"] = std::move(multipliers);
    out["kl"] = json_extended(solution.achieved_kl);
    out["residual"] = solution.kkt_residual;
    out["iterations"] = solution.iterations;
    out["converged"] = solution.converged;
    out["boundary"] = solution.boundary;
    return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Key-value lines with the values left-aligned in one column.
class KvTable {
public:
    void add(std::string key, std::string value) {
        width_ = std::max(width_, key.size());
        rows_.emplace_back(std::move(key), std::move(value));
    }
    std::string str() const {
        std::string out;
        for (const auto& [key, value] : rows_) {
            out += key;
            out.append(width_ - key.size() + 2, ' ');
            out += value;
            out += '\n';
        }
        return out;
    }

private:
    std::vector<std::pair<std::string, std::string>> rows_;
    std::size_t width_ = 0;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string weight_rows(const Distribution& d, std::string_view header) {
    KvTable table;
    table.add(std::string(header), "weight");
    for (std::size_t i = 0; i < d.size(); ++i) {
        table.add(d.space().label(i), format_double(d.weight(i)));
    }
    return table.str();
}

} // namespace

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0.0 ? "inf" : "-inf";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string distribution_to_json(const Distribution& d) { return dump(distribution_json(d)); }

Distribution distribution_from_json(std::string_view text) {
    return parse_distribution(parse_document(text), "distribution");
}

MreProblem update_problem_from_json(std::string_view text) {
    json doc = parse_document(text);
    expect_object(doc, "problem");
    expect_keys(doc, "problem", {"prior", "zeros", "moments", "tol"});
    Distribution prior = parse_distribution(require(doc, "prior", "problem"), "prior");
    Event zeros = parse_zeros(doc, prior.space());
    std::vector<MomentConstraint> moments = parse_moments(doc, prior.space());
    std::optional<double> tol = parse_tol(doc);
    ConstraintSet constraints(prior.space(), std::move(zeros), std::move(moments));
    return MreProblem{std::move(prior), std::move(constraints), tol};
}

MaxentProblem maxent_problem_from_json(std::string_view text) {
    json doc = parse_document(text);
    expect_object(doc, "problem");
    expect_keys(doc, "problem", {"labels", "zeros", "moments", "tol"});
    auto labels = string_array(require(doc, "labels", "problem"), "labels");
    OutcomeSpace space = as_schema("labels", [&] { return OutcomeSpace(std::move(labels)); });
    Event zeros = parse_zeros(doc, space);
    std::vector<MomentConstraint> moments = parse_moments(doc, space);
    std::optional<double> tol = parse_tol(doc);
    return MaxentProblem{space, ConstraintSet(space, std::move(zeros), std::move(moments)), tol};
}

std::string update_solution_to_json(const MreProblem& problem, const MreSolution& solution,
                                    double effective_tol) {
    json out = json::object();
    out["prior"] = distribution_json(problem.prior);
    out["zeros"] = zeros_json(problem.constraints);
    out["moments"] = moments_json(problem.constraints);
    out["tol"] = effective_tol;
    out.update(solution_fields(solution));
    return dump(out);
}

std::string maxent_solution_to_json(const MaxentProblem& problem, const MreSolution& solution,
                                    double effective_tol) {
    json out = json::object();
    out["labels"] = problem.space.labels();
    out["zeros"] = zeros_json(problem.constraints);
    out["moments"] = moments_json(problem.constraints);
    out["tol"] = effective_tol;
    out.update(solution_fields(solution));
    return dump(out);
}

JointPrior bayes_case_from_json(std::string_view text) {
    json doc = parse_document(text);
    expect_object(doc, "case");
    expect_keys(doc, "case", {"joint", "hypotheses", "evidence"});
    Distribution joint = parse_distribution(require(doc, "joint", "case"), "joint");
    const json& hypotheses = require(doc, "hypotheses", "case");
    expect_object(hypotheses, "hypotheses");
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> cells;
    for (auto it = hypotheses.begin(); it != hypotheses.end(); ++it) {
        names.push_back(it.key());
        cells.push_back(string_array(it.value(), "hypotheses"));
    }
    auto evidence = string_array(require(doc, "evidence", "case"), "evidence");
    return as_schema("case", [&] {
        return JointPrior(std::move(joint), std::move(names), std::move(cells),
                          std::move(evidence));
    });
}

std::string bayes_result_to_json(const Distribution& posterior) {
    json out = json::object();
    out["posterior"] = distribution_json(posterior);
    return dump(out);
}

std::string bayes_both_to_json(const Distribution& closed, const Distribution& via_mre,
                               double tv_gap) {
    json out = json::object();
    out["closed"] = distribution_json(closed);
    out["mre"] = distribution_json(via_mre);
    out["tv_gap"] = tv_gap;
    return dump(out);
}

MleInput mle_input_from_json(std::string_view text) {
    json doc = parse_document(text);
    expect_object(doc, "input");
    expect_keys(doc, "input", {"model", "data", "synthetic"});
    std::string model = require_string(require(doc, "model", "input"), "model");
    bool has_data = doc.contains("data");
    bool has_synthetic = doc.contains("synthetic");
    if (has_data == has_synthetic) {
        throw SchemaError("input: provide exactly one of 'data' or 'synthetic'");
    }
    if (has_data) {
        const json& data = doc["data"];
        expect_object(data, "data");
        std::vector<std::string> labels;
        std::vector<std::uint64_t> counts;
        for (auto it = data.begin(); it != data.end(); ++it) {
            labels.push_back(it.key());
            counts.push_back(require_count(it.value(), "data"));
        }
        Dataset dataset = as_schema("data", [&] {
            return Dataset(OutcomeSpace(std::move(labels)), std::move(counts));
        });
        return MleInput{std::move(model), std::move(dataset)};
    }
    const json& synth = doc["synthetic"];
    expect_object(synth, "synthetic");
    expect_keys(synth, "synthetic", {"labels", "theta", "n"});
    SyntheticSpec spec;
    spec.labels = string_array(require(synth, "labels", "synthetic"), "synthetic.labels");
    spec.theta = number_array(require(synth, "theta", "synthetic"), "synthetic.theta");
    spec.n = require_count(require(synth, "n", "synthetic"), "synthetic.n");
    if (spec.n == 0) {
        throw SchemaError("synthetic.n: must be positive");
    }
    return MleInput{std::move(model), std::move(spec)};
}

std::string mle_report_to_json(const std::string& model_name, const MleReport& report) {
    json out = json::object();
    out["model"] = model_name;
    json theta = json::array();
    for (double t : report.theta_hat) theta.push_back(json_number(t));
    out["theta_hat"] = std::move(theta);
    out["log_likelihood"] = json_number(report.log_likelihood);
    out["empirical_kl"] = json_extended(report.empirical_kl);
    out["degenerate"] = report.degenerate;
    out["note"] = report.note;
    return dump(out);
}

ConvergeInput converge_input_from_json(std::string_view text) {
    json doc = parse_document(text);
    expect_object(doc, "input");
    expect_keys(doc, "input", {"base", "mean_target", "N_list"});
    Distribution base = parse_distribution(require(doc, "base", "input"), "base");
    double mean_target = require_number(require(doc, "mean_target", "input"), "mean_target");
    const json& n_list = require(doc, "N_list", "input");
    if (!n_list.is_array() || n_list.empty()) {
        throw SchemaError("N_list: expected a nonempty array of positive integers");
    }
    std::vector<std::uint64_t> draws;
    for (const json& e : n_list) {
        std::uint64_t n = require_count(e, "N_list");
        if (n == 0) {
            throw SchemaError("N_list: draw counts must be positive");
        }
        draws.push_back(n);
    }
    return ConvergeInput{std::move(base), mean_target, std::move(draws)};
}

std::string convergence_report_to_json(const ConvergenceReport& report) {
    json out = json::object();
    out["base"] = distribution_json(report.base);
    out["mean_target"] = report.mean_target;
    json rows = json::array();
    for (const ConvergenceRow& row : report.rows) {
        json entry = json::object();
        entry["N"] = row.n_draws;
        entry["sum"] = row.sum_target;
        entry["conditional"] = distribution_json(row.conditional);
        entry["maxent"] = distribution_json(row.maxent_dist);
        entry["tv_gap"] = row.tv_gap;
        rows.push_back(std::move(entry));
    }
    out["rows"] = std::move(rows);
    return dump(out);
}

std::string convergence_report_to_table(const ConvergenceReport& report) {
    char line[96];
    std::snprintf(line, sizeof line, "%8s  %10s  %12s\n", "N", "sum", "tv_gap");
    std::string out = line;
    for (const ConvergenceRow& row : report.rows) {
        std::snprintf(line, sizeof line, "%8llu  %10lld  %12.6f\n",
                      static_cast<unsigned long long>(row.n_draws),
                      static_cast<long long>(row.sum_target), row.tv_gap);
        out += line;
    }
    return out;
}

InfoInput info_input_from_json(std::string_view text) {
    json doc = parse_document(text);
    expect_object(doc, "input");
    expect_keys(doc, "input", {"p", "q", "prior", "posterior"});
    InfoInput input;
    if (doc.contains("p")) input.p = parse_distribution(doc["p"], "p");
    if (doc.contains("q")) input.q = parse_distribution(doc["q"], "q");
    if (doc.contains("prior")) {
        input.prior_plausibility = require_number(doc["prior"], "prior");
    }
    if (doc.contains("posterior")) {
        input.posterior_plausibility = require_number(doc["posterior"], "posterior");
    }
    bool scalars = input.prior_plausibility || input.posterior_plausibility;
    bool dists = input.p || input.q;
    if (scalars && dists) {
        throw SchemaError("input: provide either distributions or a plausibility pair, not both");
    }
    if (scalars && !(input.prior_plausibility && input.posterior_plausibility)) {
        throw SchemaError("input: 'prior' and 'posterior' must appear together");
    }
    if (input.q && !input.p) {
        throw SchemaError("input: 'q' requires 'p'");
    }
    if (!scalars && !dists) {
        throw SchemaError("input: provide 'p' (optionally 'q') or 'prior'/'posterior'");
    }
    return input;
}

std::string info_result_to_json(const InfoResult& result) {
    json out = json::object();
    if (result.information_gain) out["information_gain"] = json_number(*result.information_gain);
    if (result.shannon_entropy_p) out["shannon_entropy_p"] = json_number(*result.shannon_entropy_p);
    if (result.shannon_entropy_q) out["shannon_entropy_q"] = json_number(*result.shannon_entropy_q);
    if (result.relative_entropy_qp) {
        out["relative_entropy_qp"] = json_extended(*result.relative_entropy_qp);
    }
    if (result.relative_entropy_pq) {
        out["relative_entropy_pq"] = json_extended(*result.relative_entropy_pq);
    }
    if (result.tv) out["tv_distance"] = json_number(*result.tv);
    return dump(out);
}

std::string distribution_to_table(const Distribution& d) { return weight_rows(d, "outcome"); }

std::string solution_to_table(const MreSolution& solution) {
    std::string out = weight_rows(solution.posterior, "outcome");
    std::string multipliers;
    for (std::size_t i = 0; i < solution.multipliers.size(); ++i) {
        if (i) multipliers += ' ';
        multipliers += format_double(solution.multipliers[i]);
    }
    KvTable table;
    table.add("kl", format_double(solution.achieved_kl.value()));
    table.add("multipliers", multipliers);
    table.add("residual", format_double(solution.kkt_residual));
    table.add("iterations", std::to_string(solution.iterations));
    table.add("converged", yes_no(solution.converged));
    table.add("boundary", yes_no(solution.boundary));
    return out + table.str();
}

std::string mle_report_to_table(const std::string& model_name, const MleReport& report) {
    std::string theta;
    for (std::size_t i = 0; i < report.theta_hat.size(); ++i) {
        if (i) theta += ' ';
        theta += format_double(report.theta_hat[i]);
    }
    KvTable table;
    table.add("model", model_name);
    table.add("theta_hat", theta);
    table.add("log_likelihood", format_double(report.log_likelihood));
    table.add("empirical_kl", format_double(report.empirical_kl.value()));
    table.add("degenerate", yes_no(report.degenerate));
    if (!report.note.empty()) table.add("note", report.note);
    return table.str();
}

std::string info_result_to_table(const InfoResult& result) {
    KvTable table;
    if (result.information_gain) {
        table.add("information_gain", format_double(*result.information_gain));
    }
    if (result.shannon_entropy_p) {
        table.add("shannon_entropy_p", format_double(*result.shannon_entropy_p));
    }
    if (result.shannon_entropy_q) {
        table.add("shannon_entropy_q", format_double(*result.shannon_entropy_q));
    }
    if (result.relative_entropy_qp) {
        table.add("relative_entropy_qp", format_double(result.relative_entropy_qp->value()));
    }
    if (result.relative_entropy_pq) {
        table.add("relative_entropy_pq", format_double(result.relative_entropy_pq->value()));
    }
    if (result.tv) table.add("tv_distance", format_double(*result.tv));
    return table.str();
}

std::string bayes_both_to_table(const Distribution& closed, const Distribution& via_mre,
                                double tv_gap) {
    KvTable table;
    table.add("hypothesis", "closed  mre");
    for (std::size_t h = 0; h < closed.size(); ++h) {
        table.add(closed.space().label(h),
                  format_double(closed.weight(h)) + "  " + format_double(via_mre.weight(h)));
    }
    table.add("tv_gap", format_double(tv_gap));
    return table.str();
}

} // namespace mre
