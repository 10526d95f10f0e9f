#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "cli.hpp"
#include "support/temp_file.hpp"

using testjson = nlohmann::json;
using testsupport::TempFile;

namespace {

struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = mre::cli::run(std::move(args), out, err);
    return CliResult{code, out.str(), err.str()};
}

const char* kDiceUpdate = R"({
  "prior": {"labels": ["1", "2", "3", "4", "5", "6"],
            "weights": [1, 1, 1, 1, 1, 1]},
  "moments": [{"coeffs": {"1": 1, "2": 2, "3": 3, "4": 4, "5": 5, "6": 6},
               "target": 4.5}]
})";

const char* kBayesCase = R"({
  "joint": {"labels": ["A&B", "A&~B", "~A&B", "~A&~B"],
            "weights": [0.30, 0.10, 0.18, 0.42]},
  "hypotheses": {"A": ["A&B", "A&~B"], "~A": ["~A&B", "~A&~B"]},
  "evidence": ["A&B", "~A&B"]
})";

} // namespace

TEST_CASE("update solves and reports on stdout") {
    TempFile input(kDiceUpdate);
    CliResult r = run_cli({"update", input.path()});
    REQUIRE(r.exit_code == 0);
    CHECK(r.err.empty());

    testjson doc = testjson::parse(r.out);
    CHECK(doc["converged"] == true);
    CHECK(doc["posterior"]["weights"][5].get<double>() ==
          doctest::Approx(0.3474940657740611).epsilon(1e-9));
    CHECK(doc["multipliers"][0].get<double>() ==
          doctest::Approx(-0.37104893808103334).epsilon(1e-9));
    CHECK(doc["kl"].get<double>() == doctest::Approx(0.17817837107422596).epsilon(1e-9));

    SUBCASE("repeated runs emit identical bytes") {
        CliResult again = run_cli({"update", input.path()});
        CHECK(again.out == r.out);
        CHECK(again.exit_code == 0);
    }
    SUBCASE("--output writes the same bytes to a file") {
        TempFile sink("", ".out");
        CliResult to_file = run_cli({"update", input.path(), "--output", sink.path()});
        CHECK(to_file.exit_code == 0);
        CHECK(to_file.out.empty());
        CHECK(testsupport::read_all(sink.path()) == r.out);
    }
    SUBCASE("table format renders key-value rows") {
        CliResult table = run_cli({"update", input.path(), "--format", "table"});
        CHECK(table.exit_code == 0);
        CHECK(table.out.find("converged") != std::string::npos);
        CHECK(table.out.find("yes") != std::string::npos);
    }
    SUBCASE("--tol overrides the file and the default") {
        CliResult loose = run_cli({"update", input.path(), "--tol", "0.001"});
        CHECK(loose.exit_code == 0);
        testjson loose_doc = testjson::parse(loose.out);
        CHECK(loose_doc["tol"].get<double>() == 0.001);
    }
}

TEST_CASE("update distinguishes malformed input from unsolvable problems") {
    SUBCASE("missing file") {
        CliResult r = run_cli({"update", "/nonexistent/path.json"});
        CHECK(r.exit_code == 1);
        CHECK_FALSE(r.err.empty());
    }
    SUBCASE("malformed JSON") {
        TempFile input("{nope");
        CliResult r = run_cli({"update", input.path()});
        CHECK(r.exit_code == 1);
        CHECK(r.err.find("error:") != std::string::npos);
    }
    SUBCASE("unknown field") {
        TempFile input(R"({"prior": {"labels": ["a"], "weights": [1]}, "bogus": 1})");
        CliResult r = run_cli({"update", input.path()});
        CHECK(r.exit_code == 1);
    }
    SUBCASE("infeasible target exits 2 with a partial report") {
        TempFile input(R"({
            "prior": {"labels": ["1", "2", "3", "4", "5", "6"],
                      "weights": [1, 1, 1, 1, 1, 1]},
            "moments": [{"coeffs": {"1": 1, "2": 2, "3": 3, "4": 4, "5": 5, "6": 6},
                         "target": 7}]
        })");
        CliResult r = run_cli({"update", input.path()});
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("outside achievable range [1, 6]") != std::string::npos);
        testjson doc = testjson::parse(r.out);
        CHECK(doc.contains("error"));
    }
    SUBCASE("excluding all mass exits 2") {
        TempFile input(R"({
            "prior": {"labels": ["a", "b"], "weights": [1, 1]},
            "zeros": ["a", "b"]
        })");
        CliResult r = run_cli({"update", input.path()});
        CHECK(r.exit_code == 2);
    }
}

TEST_CASE("maxent consumes label documents") {
    TempFile input(R"({
        "labels": ["1", "2", "3", "4", "5", "6"],
        "moments": [{"coeffs": {"1": 1, "2": 2, "3": 3, "4": 4, "5": 5, "6": 6},
                     "target": 4.5}]
    })");
    CliResult r = run_cli({"maxent", input.path()});
    REQUIRE(r.exit_code == 0);
    testjson doc = testjson::parse(r.out);
    CHECK(doc["labels"].size() == 6);
    CHECK(doc["posterior"]["weights"][5].get<double>() ==
          doctest::Approx(0.3474940657740611).epsilon(1e-9));

    TempFile dice(kDiceUpdate);
    CliResult via_update = run_cli({"update", dice.path()});
    testjson update_doc = testjson::parse(via_update.out);
    CHECK(doc["posterior"] == update_doc["posterior"]);
}

TEST_CASE("bayes reports closed form, projection, and their gap") {
    TempFile input(kBayesCase);
    CliResult both = run_cli({"bayes", input.path()});
    REQUIRE(both.exit_code == 0);
    testjson doc = testjson::parse(both.out);
    CHECK(doc["closed"]["weights"][0].get<double>() == doctest::Approx(0.625).epsilon(1e-12));
    CHECK(doc["mre"]["weights"][0].get<double>() == doctest::Approx(0.625).epsilon(1e-9));
    CHECK(doc["tv_gap"].get<double>() <= 1e-10);

    SUBCASE("single-method outputs") {
        CliResult closed = run_cli({"bayes", input.path(), "--method", "closed"});
        CHECK(closed.exit_code == 0);
        testjson closed_doc = testjson::parse(closed.out);
        CHECK(closed_doc["posterior"]["labels"] == testjson::array({"A", "~A"}));

        CliResult projected = run_cli({"bayes", input.path(), "--method", "mre"});
        CHECK(projected.exit_code == 0);

        CliResult bad = run_cli({"bayes", input.path(), "--method", "guess"});
        CHECK(bad.exit_code == 1);
    }
    SUBCASE("zero-probability evidence exits 2") {
        TempFile zero(R"({
            "joint": {"labels": ["A&B", "A&~B"], "weights": [0, 1]},
            "hypotheses": {"A": ["A&B", "A&~B"]},
            "evidence": ["A&B"]
        })");
        CliResult r = run_cli({"bayes", zero.path()});
        CHECK(r.exit_code == 2);
        testjson doc2 = testjson::parse(r.out);
        CHECK(doc2.contains("error"));
    }
}

TEST_CASE("mle fits counted and synthetic data") {
    TempFile counted(R"({"model": "bernoulli", "data": {"heads": 7, "tails": 3}})");
    CliResult r = run_cli({"mle", counted.path()});
    REQUIRE(r.exit_code == 0);
    testjson doc = testjson::parse(r.out);
    CHECK(doc["theta_hat"][0].get<double>() == 0.7);
    CHECK(doc["degenerate"] == false);

    SUBCASE("synthetic draws are reproducible under a fixed seed") {
        TempFile synth(R"({
            "model": "truncated_geometric",
            "synthetic": {"labels": ["1", "2", "3", "4"], "theta": [0.6], "n": 400}
        })");
        CliResult a = run_cli({"mle", synth.path(), "--seed", "42"});
        CliResult b = run_cli({"mle", synth.path(), "--seed", "42"});
        CliResult c = run_cli({"mle", synth.path(), "--seed", "43"});
        CHECK(a.exit_code == 0);
        CHECK(a.out == b.out);
        CHECK(a.out != c.out);
        double fit = testjson::parse(a.out)["theta_hat"][0].get<double>();
        CHECK(std::abs(fit - 0.6) <= 0.15);
    }
    SUBCASE("degenerate fits report and exit 2") {
        TempFile edge(R"({"model": "bernoulli", "data": {"heads": 5, "tails": 0}})");
        CliResult r2 = run_cli({"mle", edge.path()});
        CHECK(r2.exit_code == 2);
        CHECK(r2.err.find("degenerate") != std::string::npos);
        testjson doc2 = testjson::parse(r2.out);
        CHECK(doc2["theta_hat"][0].get<double>() == 1.0);
        CHECK(doc2["degenerate"] == true);
    }
    SUBCASE("unknown model family exits 1") {
        TempFile bad(R"({"model": "gaussian", "data": {"a": 1, "b": 1}})");
        CliResult r2 = run_cli({"mle", bad.path()});
        CHECK(r2.exit_code == 1);
    }
}

TEST_CASE("converge renders the comparison rows") {
    TempFile input(R"({
        "base": {"labels": ["1", "2", "3", "4", "5", "6"],
                 "weights": [1, 1, 1, 1, 1, 1]},
        "mean_target": 4.5, "N_list": [2, 4, 8]
    })");
    CliResult r = run_cli({"converge", input.path()});
    REQUIRE(r.exit_code == 0);
    testjson doc = testjson::parse(r.out);
    REQUIRE(doc["rows"].size() == 3);
    CHECK(doc["rows"][0]["tv_gap"].get<double>() ==
          doctest::Approx(0.23061877923360616).epsilon(1e-9));
    CHECK(doc["rows"][2]["tv_gap"].get<double>() ==
          doctest::Approx(0.028400070118909281).epsilon(1e-9));

    SUBCASE("table format") {
        CliResult table = run_cli({"converge", input.path(), "--format", "table"});
        CHECK(table.exit_code == 0);
        CHECK(table.out.find("tv_gap") != std::string::npos);
        CHECK(table.out.find("0.230619") != std::string::npos);
    }
    SUBCASE("unachievable configurations exit 2") {
        TempFile outside(R"({
            "base": {"labels": ["1", "2"], "weights": [1, 1]},
            "mean_target": 3.0, "N_list": [2]
        })");
        CliResult r2 = run_cli({"converge", outside.path()});
        CHECK(r2.exit_code == 2);
    }
}

TEST_CASE("info computes measures for the given arguments") {
    SUBCASE("plausibility pair") {
        TempFile input(R"({"prior": 0.25, "posterior": 0.5})");
        CliResult r = run_cli({"info", input.path()});
        REQUIRE(r.exit_code == 0);
        testjson doc = testjson::parse(r.out);
        CHECK(doc["information_gain"].get<double>() ==
              doctest::Approx(std::log(2.0)).epsilon(1e-14));
    }
    SUBCASE("one distribution") {
        TempFile input(R"({"p": {"labels": ["a", "b"], "weights": [1, 1]}})");
        CliResult r = run_cli({"info", input.path()});
        REQUIRE(r.exit_code == 0);
        testjson doc = testjson::parse(r.out);
        CHECK(doc["shannon_entropy_p"].get<double>() ==
              doctest::Approx(std::log(2.0)).epsilon(1e-14));
        CHECK_FALSE(doc.contains("relative_entropy_qp"));
    }
    SUBCASE("a pair of distributions, including an infinite divergence") {
        TempFile input(R"({
            "p": {"labels": ["a", "b"], "weights": [1, 0]},
            "q": {"labels": ["a", "b"], "weights": [0.5, 0.5]}
        })");
        CliResult r = run_cli({"info", input.path()});
        REQUIRE(r.exit_code == 0);
        testjson doc = testjson::parse(r.out);
        CHECK(doc["relative_entropy_qp"] == "inf");
        CHECK(doc["tv_distance"].get<double>() == 0.5);
    }
}

TEST_CASE("top-level command handling") {
    CliResult help = run_cli({"--help"});
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("update") != std::string::npos);

    CliResult none = run_cli({});
    CHECK(none.exit_code == 1);

    CliResult unknown = run_cli({"frobnicate"});
    CHECK(unknown.exit_code == 1);

    CliResult sub_help = run_cli({"mle", "--help"});
    CHECK(sub_help.exit_code == 0);
    CHECK(sub_help.out.find("--seed") != std::string::npos);
}
