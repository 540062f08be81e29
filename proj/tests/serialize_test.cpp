#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dagsel/analysis.hpp"
#include "dagsel/generators.hpp"
#include "dagsel/influential.hpp"
#include "dagsel/mechanisms.hpp"
#include "dagsel/serialize.hpp"
#include "dagsel/upper_bound.hpp"

using namespace dagsel;

TEST_CASE("graphs round-trip through json") {
    Dag g = figure1_fixture();
    Json j = to_json(g);
    CHECK(j["n"] == 8);
    REQUIRE(j["edges"].is_array());
    CHECK(j["edges"].size() == 6);
    CHECK(j["edges"][0] == Json::array({2, 1}));
    CHECK(dag_from_json(j) == g);

    for (const Dag& r : random_corpus(40, 10, 3)) CHECK(dag_from_json(to_json(r)) == r);

    // Key order is pinned, so serialization is byte-stable.
    CHECK(dump_json(to_json(g)) == dump_json(to_json(figure1_fixture())));
}

TEST_CASE("malformed graph json is rejected with a reason") {
    CHECK_THROWS_AS(dag_from_json(Json::array()), GraphError);
    CHECK_THROWS_AS(dag_from_json(Json{{"edges", Json::array()}}), GraphError);
    CHECK_THROWS_AS(dag_from_json(Json{{"n", 3}}), GraphError);
    CHECK_THROWS_AS(dag_from_json(Json{{"n", 3}, {"edges", 7}}), GraphError);
    CHECK_THROWS_AS(
        dag_from_json(Json{{"n", 3}, {"edges", Json::array({Json::array({1})})}}),
        GraphError);
    CHECK_THROWS_AS(
        dag_from_json(Json{{"n", 3}, {"edges", Json::array({Json::array({1, 2.5})})}}),
        GraphError);
    // Structurally fine json, structurally broken graph.
    CHECK_THROWS_AS(
        dag_from_json(Json{{"n", 2},
                           {"edges", Json::array({Json::array({1, 2}), Json::array({2, 1})})}}),
        CyclicGraph);
    CHECK_THROWS_AS(
        dag_from_json(Json{{"n", 2}, {"edges", Json::array({Json::array({1, 5})})}}),
        IdOutOfRange);

    try {
        dag_from_json(Json{{"n", 3}, {"edges", Json::array({7})}});
        FAIL("expected GraphError");
    } catch (const GraphError& e) {
        CHECK(std::string(e.what()).find("edges[0]") != std::string::npos);
    }
}

TEST_CASE("distribution json carries outcomes and full marginals") {
    Dag g = figure1_fixture();
    SelectionDistribution d = beta_lm(g, OPTIMAL_BETA);
    Json j = to_json(d);
    CHECK(j["mechanism"] == d.mechanism());
    CHECK(j["k"] == 1);
    CHECK(j["n"] == 8);
    CHECK(j["ic_guaranteed"] == true);
    REQUIRE(j["outcomes"].is_array());
    CHECK(j["outcomes"].size() == d.outcomes().size());
    CHECK(j["outcomes"][0]["set"].empty());  // leftover mass first
    // Every agent appears in the marginal map, including untouched ones.
    REQUIRE(j["marginals"].size() == 8);
    CHECK(j["marginals"]["5"] == 0.0);
    // Doubles survive the round trip exactly.
    CHECK(j["marginals"]["4"].get<double>() == d.marginal(4));
    Json reparsed = Json::parse(dump_json(j));
    CHECK(reparsed["marginals"]["3"].get<double>() == d.marginal(3));
}

TEST_CASE("report serializations expose the fields downstream tooling reads") {
    Dag chain(3, {{3, 2}, {2, 1}});
    IcReport r = ic_check(make_beta_lm(0.3), chain);
    Json j = to_json(r);
    CHECK(j["passed"] == false);
    CHECK(j["subsets_examined"] == 2);
    REQUIRE(j["violations"].size() == 1);
    CHECK(j["violations"][0]["agent"] == 2);
    CHECK(j["violations"][0]["hidden"] == Json::array({Json::array({2, 1})}));
    CHECK(j["violations"][0]["marginal_after"].get<double>() > 0.69);

    StructureReport sr = check_structure(chain, influential_set(chain, 1));
    Json sj = to_json(sr);
    CHECK(sj["k"] == 1);
    CHECK(sj["passed"] == true);
    CHECK(sj["checks"].size() == sr.checks.size());
    CHECK(sj["checks"][0].contains("name"));

    UpperBoundCertificate cert = verify_upper_bound();
    Json cj = to_json(cert);
    CHECK(cj["min_ratio"] == "23/27");
    CHECK(cj["lp_optimum"] == "23/27");
    CHECK(cj["x_chain"][0] == "2/3");
    CHECK(cj["x_hide21"].size() == 4);

    std::vector<Dag> corpus{two_star(2), figure1_fixture()};
    RatioSweepResult rs = ratio_sweep(make_ldm(), corpus);
    Json rj = ratio_report_json(rs, corpus);
    CHECK(rj["mechanism"] == "ldm");
    CHECK(rj["k"] == 2);
    CHECK(rj["graphs"] == 2);
    CHECK(rj["min_ratio"] == 0.5);
    CHECK(rj["argmin_index"] == 0);
    CHECK(rj["argmin_hash"] == graph_hash_hex(corpus[0]));
    CHECK(rj["argmin_graph"]["n"] == 4);

    Json empty = ratio_report_json(RatioSweepResult{"ldm", 2, 1.0, 0, {}}, {});
    CHECK(!empty.contains("argmin_index"));
}

TEST_CASE("graph hashing is stable and content-sensitive") {
    // Frozen values guard the canonical byte encoding against drift.
    CHECK(graph_hash_hex(figure1_fixture()) == "ceb5daffd1d818c8");
    CHECK(graph_hash_hex(Dag(1, {})) == "89cd31291d2aefa4");
    CHECK(graph_hash(figure1_fixture()) == graph_hash(figure1_fixture()));
    CHECK(graph_hash(figure1_fixture()) != graph_hash(figure4_fixture()));
    CHECK(graph_hash(Dag(2, {})) != graph_hash(Dag(3, {})));
    CHECK(graph_hash_hex(two_star(3)).size() == 16);
}

TEST_CASE("sweep csv lines up per-graph columns") {
    std::vector<Dag> corpus{figure1_fixture(), two_star(2)};
    std::vector<double> ratios{0.5, 0.25};
    std::vector<int> violations{0, 3};

    std::ostringstream both;
    write_sweep_csv(both, corpus, &ratios, &violations);
    std::string expected = "graph_hash,ratio,violations\n" + graph_hash_hex(corpus[0]) +
                           ",0.5,0\n" + graph_hash_hex(corpus[1]) + ",0.25,3\n";
    CHECK(both.str() == expected);

    // Absent columns stay empty rather than fabricating zeros.
    std::ostringstream no_ratio;
    write_sweep_csv(no_ratio, corpus, nullptr, &violations);
    CHECK(no_ratio.str().find(graph_hash_hex(corpus[0]) + ",,0\n") != std::string::npos);

    std::ostringstream no_violations;
    write_sweep_csv(no_violations, corpus, &ratios, nullptr);
    CHECK(no_violations.str().find(",0.5,\n") != std::string::npos);
}

TEST_CASE("atomic text writes replace their target") {
    const std::string path = "serialize_test_scratch.json";
    write_text_file(path, "first\n");
    write_text_file(path, "second\n");
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == "second\n");
    in.close();
    std::remove(path.c_str());

    CHECK(dump_json(Json{{"a", 1}}) == "{\n  \"a\": 1\n}\n");
}
