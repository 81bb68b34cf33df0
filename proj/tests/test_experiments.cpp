#include <doctest.h>

#include "crtlab/errors.hpp"
#include "crtlab/experiments.hpp"

using namespace crtlab;
using nlohmann::json;

TEST_CASE("names and defaults") {
    CHECK(experiment_names().size() == 10);
    for (const auto& n : experiment_names()) {
        CHECK(is_experiment(n));
        CHECK(default_config(n).contains("seed"));
    }
    CHECK_FALSE(is_experiment("bogus"));
    CHECK_THROWS(default_config("bogus"));
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(resolve_config("height", json{{"nope", 1}}), ValidationError);
    CHECK_THROWS_AS(resolve_config("height", json{{"reps", "many"}}), ValidationError);
    CHECK_THROWS_AS(resolve_config("height", json{{"reps", -3}}), ValidationError);
    CHECK_THROWS_AS(resolve_config("height", json{{"reps", 2.5}}), ValidationError);
    const json c = resolve_config("height", json{{"reps", 5}});
    CHECK(c.at("reps") == 5);
    CHECK(c.at("seed") == default_config("height").at("seed"));
}

TEST_CASE("check evaluation") {
    CHECK(evaluate(Check{"", CheckKind::p_value, 0, 0.5, 1e-3, false}));
    CHECK_FALSE(evaluate(Check{"", CheckKind::p_value, 0, 1e-3, 1e-3, false}));
    CHECK(evaluate(Check{"", CheckKind::max_deviation, 0, 0.05, 0.1, false}));
    CHECK_FALSE(evaluate(Check{"", CheckKind::max_deviation, 0, 0.1, 0.1, false}));
    CHECK(evaluate(Check{"", CheckKind::min_fraction, 0, 0.9, 0.9, false}));
    CHECK(evaluate(Check{"", CheckKind::exact, 0, 0, 0, false}));
    CHECK_FALSE(evaluate(Check{"", CheckKind::exact, 0, 1, 0, false}));
}

TEST_CASE("reports do not depend on the worker count") {
    const json cfg = resolve_config("lifo_equiv", json{{"reps", 300}});
    const ExperimentReport a = run_experiment("lifo_equiv", cfg, 1);
    const ExperimentReport b = run_experiment("lifo_equiv", cfg, 3);
    CHECK(a.pass);
    json ja = report_to_json(a), jb = report_to_json(b);
    ja.erase("wall_time");
    jb.erase("wall_time");
    CHECK(ja == jb);
    const json c2 = resolve_config("cayley", json{{"cases", json::array({{{"n", 3}, {"reps", 3000}}})}});
    json x = report_to_json(run_experiment("cayley", c2, 1)), y = report_to_json(run_experiment("cayley", c2, 4));
    x.erase("wall_time");
    y.erase("wall_time");
    CHECK(x == y);
}

TEST_CASE("report serialisation") {
    const ExperimentReport r = run_experiment("height", resolve_config("height", json{{"reps", 20}}), 1);
    const json j = report_to_json(r);
    for (const char* key : {"name", "parameters", "statistic", "threshold", "pass", "replicate_count", "wall_time"})
        CHECK(j.contains(key));
    CHECK(report_csv_header() == "name,pass,statistic,value,threshold,replicates,wall_time");
    CHECK(report_csv_line(r).rfind("height,", 0) == 0);
}

TEST_CASE("calibration: the chi-square harness rejects at the nominal rate under the null") {
    int below = 0;
    const int runs = 100;
    for (int s = 0; s < runs; ++s) {
        const json cfg = resolve_config(
            "cayley", json{{"seed", 1000 + s}, {"cases", json::array({{{"weights", {0.5, 0.25, 0.25}}, {"reps", 2000}}})}});
        const ExperimentReport r = run_experiment("cayley", cfg, 1);
        REQUIRE(r.p_value.has_value());
        if (*r.p_value < 0.1) ++below;
    }
    CHECK(below >= 3);
    CHECK(below <= 20);
}
