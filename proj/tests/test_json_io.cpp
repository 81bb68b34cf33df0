#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "crtlab/errors.hpp"
#include "crtlab/json_io.hpp"
#include "crtlab/rng.hpp"
#include "crtlab/samplers.hpp"

using namespace crtlab;
using nlohmann::json;

TEST_CASE("path round trip is exact") {
    Rng r(91, 0);
    const VervaatSample s = sample_X_n({0.5, 0.3, 0.2}, r);
    for (const StepPath& p : {s.bridge, s.excursion}) {
        const StepPath q = path_from_json(json::parse(path_to_json(p).dump()));
        CHECK(std::ranges::equal(q.jumps(), p.jumps()));
        CHECK(q.drift() == p.drift());
        CHECK(q.domain_end() == p.domain_end());
        CHECK(q.kind() == p.kind());
    }
}

TEST_CASE("path loader validation") {
    CHECK_THROWS_AS(path_from_json(json::parse(R"({"drift": -1, "jumps": []})")), ValidationError);
    CHECK_THROWS_AS(path_from_json(json::parse(R"({"domain_end": 1, "drift": -1, "jumps": [[0.5]]})")),
                    ValidationError);
    CHECK_THROWS_AS(path_from_json(json::parse(R"({"domain_end": 1, "drift": -1, "jumps": [[0.5, 1], [0.2, 1]]})")),
                    ValidationError);
    CHECK_THROWS_AS(path_from_json(json::parse(R"({"domain_end": 1, "drift": "x", "jumps": []})")), ValidationError);
    CHECK_THROWS_AS(path_from_json(json::parse(R"({"domain_end": 1, "drift": -1, "jumps": [], "kind": "loop"})")),
                    ValidationError);
    const StepPath ok = path_from_json(json::parse(R"({"domain_end": 1, "drift": -1, "jumps": [[0.25, 0.4], [0.5, 0.6]]})"));
    CHECK(ok.eval(0.3) == doctest::Approx(0.1));
}

TEST_CASE("theta round trip") {
    const ThetaParam t({2.0, 1.0, 0.5}, 0.125, 1.5);
    const ThetaParam u = theta_from_json(json::parse(theta_to_json(t).dump()));
    CHECK(u.atoms() == t.atoms());
    CHECK(u.tail_l2() == t.tail_l2());
    CHECK(u.nominal_alpha() == t.nominal_alpha());
    CHECK_THROWS_AS(theta_from_json(json::parse(R"({"atoms": [1, 2]})")), ValidationError);
}

TEST_CASE("labelled and ordered trees") {
    const LabelledTree t(3, {-1, 4, 4, 5, 5, 0});
    const json j = labelled_to_json(t);
    CHECK(j.at("canonical") == t.canonical());
    CHECK(j.at("parents").at("0").is_null());
    CHECK(labelled_from_json(json::parse(j.dump())) == t);
    const json c = labelled_to_json(MaybeLabelled{}, 3);
    CHECK(c.at("cemetery") == true);
    CHECK(c.at("canonical") == kCemetery);
    CHECK(labelled_to_json(MaybeLabelled{t}, 3) == j);
    CHECK_THROWS_AS(labelled_from_json(json::parse(R"({"k": 1, "parents": {"0": null, "1": "b7"}})")),
                    ValidationError);
    const OrderedTree o = OrderedTree::from_lukasiewicz({2, 0, 1, 0});
    CHECK(ordered_from_json(json::parse(ordered_to_json(o).dump())) == o);
}

TEST_CASE("line-broken tree round trip") {
    Rng r(92, 0);
    const LineBrokenTree t = sample_line_breaking(ThetaParam({1.0, 0.7, 0.2}), 4, r);
    const LineBrokenTree u = line_broken_from_json(json::parse(line_broken_to_json(t).dump()));
    CHECK(u.cutpoints() == t.cutpoints());
    CHECK(u.colors() == t.colors());
    CHECK(u.joins() == t.joins());
    CHECK(u.reduced_tree(4) == t.reduced_tree(4));
}

TEST_CASE("ptree and census output") {
    const PTree p = make_ptree({-1, 0, 0});
    const json j = ptree_to_json(p);
    CHECK(j.at("root") == 1);
    CHECK(j.at("parents")[1] == 1);
    CHECK(ptree_from_json(json::parse(j.dump())) == p);
    const LabelledTree a(2, {-1, 3, 3, 0});
    const ShapeCensus c = shape_census({a, a, std::nullopt});
    const json cj = census_to_json(c);
    CHECK(cj.at("total") == 3);
    std::ostringstream os;
    write_census_csv(os, c);
    CHECK(os.str().rfind("canonical_form,count\n", 0) == 0);
    CHECK(os.str().find("\"" + a.canonical() + "\",2") != std::string::npos);
    Trajectory tr;
    tr.points = {{10, 0.5}};
    std::ostringstream ts;
    write_trajectory_csv(ts, tr);
    CHECK(ts.str().rfind("k_or_eps,estimate\n", 0) == 0);
}

TEST_CASE("file reader") {
    const std::string path = "crtlab_json_io_test.json";
    write_text_file(path, "{\"a\": 1}");
    CHECK(read_json_file(path).at("a") == 1);
    write_text_file(path, "{not json");
    CHECK_THROWS_AS(read_json_file(path), ValidationError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_json_file("no/such/file.json"), ValidationError);
}
