#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

// A small exact-arithmetic linear-program solver: dense two-phase tableau
// simplex with Bland's rule over arbitrary-precision rationals. Termination
// is guaranteed by Bland's rule and exactness by the number type, which is
// what the incentive upper-bound proof needs -- the instances here are tiny,
// so speed is irrelevant.
namespace dagsel {

using Rat = boost::multiprecision::cpp_rational;

// "p/q" (or just "p" for integers); the serialization used everywhere exact
// values cross the JSON boundary.
std::string rat_to_string(const Rat& r);

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Rat objective;
    std::vector<Rat> x;
};

// maximize c.x  subject to  A x <= b,  x >= 0.
// A is row-major with one entry per variable; all shapes must agree.
LpSolution solve_lp(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
                    const std::vector<Rat>& c);

}  // namespace dagsel
