#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "dagsel/lp.hpp"
#include "dagsel/upper_bound.hpp"

using namespace dagsel;
using Mat = std::vector<std::vector<Rat>>;
using Vec = std::vector<Rat>;

TEST_CASE("rational serialization") {
    CHECK(rat_to_string(Rat(23, 27)) == "23/27");
    CHECK(rat_to_string(Rat(2)) == "2");
    CHECK(rat_to_string(Rat(0)) == "0");
    CHECK(rat_to_string(Rat(-1, 3)) == "-1/3");
    CHECK(rat_to_string(Rat(6, 4)) == "3/2");  // normalized
}

TEST_CASE("simplex finds exact optima") {
    // max x + y  s.t.  x <= 3, y <= 4, x + y <= 5
    LpSolution s = solve_lp(Mat{{1, 0}, {0, 1}, {1, 1}}, Vec{3, 4, 5}, Vec{1, 1});
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == Rat(5));
    CHECK(s.x[0] + s.x[1] == Rat(5));
    CHECK(s.x[0] <= Rat(3));
    CHECK(s.x[1] <= Rat(4));

    // Fractional data stays exact: max x s.t. 3x <= 1.
    s = solve_lp(Mat{{3}}, Vec{1}, Vec{1});
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == Rat(1, 3));
    CHECK(s.x[0] == Rat(1, 3));

    // Degenerate vertex (redundant constraints) still terminates via Bland.
    s = solve_lp(Mat{{1, 1}, {1, 0}, {0, 1}, {2, 2}}, Vec{1, 1, 1, 2}, Vec{1, 1});
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == Rat(1));

    // Zero objective: any feasible point optimizes to 0.
    s = solve_lp(Mat{{1}}, Vec{5}, Vec{0});
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == Rat(0));
}

TEST_CASE("simplex detects unbounded programs") {
    // max x with no binding constraint above it.
    CHECK(solve_lp(Mat{}, Vec{}, Vec{1}).status == LpStatus::Unbounded);
    CHECK(solve_lp(Mat{{-1}}, Vec{1}, Vec{1}).status == LpStatus::Unbounded);
    // ...but bounded when the objective points the other way.
    LpSolution s = solve_lp(Mat{{-1}}, Vec{1}, Vec{-1});
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == Rat(0));
}

TEST_CASE("simplex detects infeasible programs") {
    // x <= -1 contradicts x >= 0.
    CHECK(solve_lp(Mat{{1}}, Vec{-1}, Vec{1}).status == LpStatus::Infeasible);
    // x + y <= 1 and -(x + y) <= -2 cannot both hold.
    CHECK(solve_lp(Mat{{1, 1}, {-1, -1}}, Vec{1, -2}, Vec{1, 0}).status ==
          LpStatus::Infeasible);
}

TEST_CASE("negative bounds route through phase one correctly") {
    // x >= 2 (written -x <= -2) and x <= 5: max -x must land exactly on 2.
    LpSolution s = solve_lp(Mat{{-1}, {1}}, Vec{-2, 5}, Vec{-1});
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == Rat(-2));
    CHECK(s.x[0] == Rat(2));

    // Equality via paired inequalities: x + y = 3 with x <= 1 maximizing x.
    s = solve_lp(Mat{{1, 1}, {-1, -1}, {1, 0}}, Vec{3, -3, 1}, Vec{1, 0});
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.x[0] == Rat(1));
    CHECK(s.x[1] == Rat(2));
}

TEST_CASE("certificate helpers accept the known assignment and reject others") {
    const std::array<Rat, 4> chain{Rat(2, 3), Rat(17, 27), Rat(19, 27), Rat(0)};
    const std::array<Rat, 4> hide21{Rat(0), Rat(17, 27), Rat(1), Rat(10, 27)};
    const std::array<Rat, 4> hide32{Rat(19, 27), Rat(16, 27), Rat(19, 27), Rat(0)};

    std::string why;
    CHECK(certificate_feasible(chain, hide21, hide32, &why));
    CHECK(certificate_min_ratio(chain, hide21, hide32) == Rat(23, 27));

    // All zeros: trivially feasible, worthless guarantee.
    const std::array<Rat, 4> zero{Rat(0), Rat(0), Rat(0), Rat(0)};
    CHECK(certificate_feasible(zero, zero, zero, &why));
    CHECK(certificate_min_ratio(zero, zero, zero) == Rat(0));

    // A marginal above one is rejected, and the reason says so.
    std::array<Rat, 4> broken = chain;
    broken[2] = Rat(3, 2);
    CHECK(!certificate_feasible(broken, hide21, hide32, &why));
    CHECK(!why.empty());

    // Breaking an incentive coupling is also caught: starving agent 2 on the
    // chain makes hiding (2,1) profitable for her.
    broken = chain;
    broken[1] = Rat(1, 100);
    CHECK(!certificate_feasible(broken, hide21, hide32, &why));
    CHECK(!why.empty());

    // Overfilling a network's probability budget (sum > 2).
    std::array<Rat, 4> heavy{Rat(1), Rat(1), Rat(1), Rat(0)};
    CHECK(!certificate_feasible(heavy, hide21, hide32, &why));
}

TEST_CASE("the full upper bound verification lands exactly on 23/27") {
    UpperBoundCertificate cert = verify_upper_bound();
    CHECK(cert.min_ratio == Rat(23, 27));
    CHECK(cert.lp_optimum == Rat(23, 27));
    for (const Rat& r : cert.ratios) CHECK(r == Rat(23, 27));
    CHECK(rat_to_string(cert.min_ratio) == "23/27");
    // The certificate embeds the assignment it certifies.
    CHECK(cert.x_chain[0] == Rat(2, 3));
    CHECK(cert.x_hide21[2] == Rat(1));
    CHECK(cert.x_hide32[0] == Rat(19, 27));
}
