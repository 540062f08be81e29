#pragma once

#include <array>
#include <stdexcept>

#include "dagsel/lp.hpp"

// Machine-checked proof that no incentive-compatible k=2 mechanism can
// guarantee more than 23/27 of the optimal influence. Three four-agent
// networks -- a follower chain and the two graphs an agent can reach by
// hiding one chain edge -- are linked by manipulation moves; incentive
// compatibility therefore couples the mechanism's marginals across the three
// graphs, and together with the per-graph probability budget this caps the
// worst-case ratio. Everything here is exact rational arithmetic.
namespace dagsel {

struct CertificateViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UpperBoundCertificate {
    // Marginal selection probabilities for agents 1..4 on each network:
    // the chain, the chain with edge (2,1) hidden, and with (3,2) hidden.
    std::array<Rat, 4> x_chain, x_hide21, x_hide32;
    std::array<Rat, 3> ratios;  // expected/optimal per network
    Rat min_ratio;              // 23/27: the certificate's guarantee
    Rat lp_optimum;             // 23/27 again: no better point exists
};

// Checks one candidate assignment against the coupling constraints; returns
// false and fills `why` when it is infeasible.
bool certificate_feasible(const std::array<Rat, 4>& x_chain,
                          const std::array<Rat, 4>& x_hide21,
                          const std::array<Rat, 4>& x_hide32, std::string* why);

// Minimum of the three per-network ratios for a candidate assignment
// (feasibility not required).
Rat certificate_min_ratio(const std::array<Rat, 4>& x_chain,
                          const std::array<Rat, 4>& x_hide21,
                          const std::array<Rat, 4>& x_hide32);

// Rebuilds the three networks, re-verifies their progeny profiles and the
// hiding moves connecting them (including the agent relabelings), checks the
// known optimal assignment achieves exactly 23/27, and independently solves
// the full linear program to confirm 23/27 is also the maximum. Throws
// CertificateViolation if any step fails.
UpperBoundCertificate verify_upper_bound();

}  // namespace dagsel
