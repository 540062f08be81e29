#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>

#include "dagsel/generators.hpp"
#include "dagsel/influential.hpp"
#include "oracles.hpp"

using namespace dagsel;

namespace {

bool check_passed(const StructureReport& r, const std::string& name) {
    for (const StructureCheck& c : r.checks)
        if (c.name == name) return c.passed;
    FAIL("no check named ", name);
    return false;
}

}  // namespace

TEST_CASE("fixture influential sets come out as advertised") {
    Dag fig1 = figure1_fixture();
    CHECK(influential_set(fig1, 1).members == std::vector<int>{1, 2, 3, 4});

    Dag fig4 = figure4_fixture();
    InfluentialPair p = influential_sets(fig4);
    CHECK(p.s1.members == std::vector<int>{1});
    CHECK(p.s2.members == std::vector<int>{1, 2, 3, 4});
    CHECK(p.s1.k == 1);
    CHECK(p.s2.k == 2);
    CHECK(p.s2.contains(3));
    CHECK(!p.s2.contains(5));

    // Two equal hubs: the id tiebreak puts the larger hub alone into the k=1
    // set, and the other hub joins at k=2.
    Dag ts = two_star(5);
    InfluentialPair q = influential_sets(ts);
    CHECK(q.s1.members == std::vector<int>{10});
    CHECK(q.s2.members == std::vector<int>{10, 5});

    CHECK_THROWS_AS(influential_set(fig1, 0), UnsupportedK);
    CHECK_THROWS_AS(influential_set(fig1, 3), UnsupportedK);
}

TEST_CASE("members match the definition oracle over all small dags") {
    for (int n = 1; n <= 4; ++n) {
        for (const Dag& g : enumerate_dags(n)) {
            InfluentialPair p = influential_sets(g);
            REQUIRE(p.s1.members == oracle::influential(n, g.edges(), 1));
            REQUIRE(p.s2.members == oracle::influential(n, g.edges(), 2));
            REQUIRE(influential_set(g, 1).members == p.s1.members);
            REQUIRE(influential_set(g, 2).members == p.s2.members);
        }
    }
}

TEST_CASE("members match the definition oracle on random graphs") {
    for (const Dag& g : random_corpus(150, 10, 99)) {
        InfluentialPair p = influential_sets(g);
        REQUIRE(p.s1.members == oracle::influential(g.n(), g.edges(), 1));
        REQUIRE(p.s2.members == oracle::influential(g.n(), g.edges(), 2));
    }
}

TEST_CASE("hiding everything is an agent's best rank move") {
    // Membership probes only try the full hide; that is sound because no
    // partial hide can beat it. Verified here against every subset.
    for (const Dag& g : enumerate_dags(4)) {
        auto base_counts = progeny_counts(g);
        for (int i = 1; i <= g.n(); ++i) {
            auto out = g.out_edges(i);
            int best = oracle::superiors_after_full_hide(g.n(), g.edges(), i);
            for (unsigned mask = 0; mask < (1u << out.size()); ++mask) {
                std::vector<Edge> subset;
                for (size_t b = 0; b < out.size(); ++b)
                    if (mask >> b & 1u) subset.push_back(out[b]);
                Dag h = hide_edges(g, i, subset);
                auto counts = progeny_counts(h);
                int sup = 0;
                for (int j = 1; j <= g.n(); ++j)
                    if (j != i && outranks(counts, j, i)) ++sup;
                REQUIRE(sup >= best);
                // ...and own progeny never moves.
                REQUIRE(counts[size_t(i)] == base_counts[size_t(i)]);
            }
        }
    }
}

TEST_CASE("k=1 set is never empty and always starts at the top") {
    for (const Dag& g : enumerate_dags(4)) {
        InfluentialPair p = influential_sets(g);
        REQUIRE(!p.s1.members.empty());
        REQUIRE(p.s1.members.front() == ranking(g).order.front());
        // k=2 membership is implied by k=1 membership.
        for (int i : p.s1.members) REQUIRE(p.s2.contains(i));
        REQUIRE(int(p.s2.size()) >= std::min(g.n(), 2));
    }
}

TEST_CASE("structure audit passes on fixtures and small corpora") {
    for (const Dag& g : {figure1_fixture(), figure4_fixture(), two_star(4), lm_tight_chain(9)}) {
        InfluentialPair p = influential_sets(g);
        CHECK(check_structure(g, p.s1).all_passed());
        CHECK(check_structure(g, p.s2).all_passed());
    }
    for (const Dag& g : enumerate_dags(4)) {
        InfluentialPair p = influential_sets(g);
        REQUIRE(check_structure(g, p.s1).all_passed());
        REQUIRE(check_structure(g, p.s2).all_passed());
    }
}

TEST_CASE("structure audit catches doctored sets") {
    Dag fig1 = figure1_fixture();

    InfluentialSet swapped{1, {2, 1, 3, 4}};
    StructureReport r = check_structure(fig1, swapped);
    CHECK(!r.all_passed());
    CHECK(!check_passed(r, "ordered_by_rank"));

    InfluentialSet headless{1, {2, 3, 4}};
    r = check_structure(fig1, headless);
    CHECK(!check_passed(r, "first_is_top"));

    // Agent 8 is a bystander: nobody in the chain follows it.
    InfluentialSet padded{1, {1, 2, 3, 4, 8}};
    r = check_structure(fig1, padded);
    CHECK(!r.all_passed());

    Dag fig4 = figure4_fixture();
    InfluentialSet missing{2, {1, 3, 4}};
    r = check_structure(fig4, missing);
    CHECK(!check_passed(r, "contains_top_two"));

    // Failure details name an offending agent.
    bool found_detail = false;
    for (const StructureCheck& c : check_structure(fig1, swapped).checks)
        if (!c.passed && !c.detail.empty()) found_detail = true;
    CHECK(found_detail);
}

TEST_CASE("k=2 audit distinguishes the joined and split head cases") {
    // figure1: the runner-up follows the champion, one follower chain.
    Dag fig1 = figure1_fixture();
    StructureReport joined = check_structure(fig1, influential_set(fig1, 2));
    CHECK(check_passed(joined, "follower_chain"));

    // figure4: the runner-up is independent of the champion, so the third
    // member attaches to one of the two heads instead.
    Dag fig4 = figure4_fixture();
    StructureReport split = check_structure(fig4, influential_set(fig4, 2));
    CHECK(check_passed(split, "third_attaches_to_a_head"));
    CHECK(check_passed(split, "tail_follower_chain"));
    CHECK(split.all_passed());
}
