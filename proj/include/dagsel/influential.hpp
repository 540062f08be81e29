#pragma once

#include <string>
#include <vector>

#include "dagsel/graph.hpp"

namespace dagsel {

struct UnsupportedK : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The k-influential set: agent i belongs iff, once she hides *all* of her
// out-edges, fewer than k agents still outrank her. Only k = 1 and k = 2 are
// supported. Members are listed by the ranking of the original graph (not the
// manipulated ones), best first.
struct InfluentialSet {
    int k = 0;
    std::vector<int> members;
    int size() const { return int(members.size()); }
    bool contains(int i) const;
};

InfluentialSet influential_set(const Dag& g, int k);

// Both supported sets in one pass; the per-candidate rank probe is shared.
struct InfluentialPair {
    InfluentialSet s1;  // k = 1
    InfluentialSet s2;  // k = 2
};
InfluentialPair influential_sets(const Dag& g);

// --- Structural audit --------------------------------------------------------
//
// The influential sets of every DAG obey a family of structural facts (chain
// decomposition, the factor-two progeny bound, containments between the k=1
// and k=2 sets). check_structure re-verifies them for a concrete graph and
// reports each assertion separately; sweeps over graph corpora use it to
// confirm the facts empirically rather than trusting them.

struct StructureCheck {
    std::string name;
    bool passed = false;
    std::string detail;  // names offending agents when failed
};

struct StructureReport {
    int k = 0;
    std::vector<StructureCheck> checks;
    bool all_passed() const;
};

// For s.k == 1 verifies: the set is [i_1..i_m] in ranking order with i_1 the
// top-ranked agent overall, each i_{t+1} lies in progeny(i_t)\{i_t}, and
// 2*|progeny(i_t)| >= |progeny(i_1)| for every member after the first.
// For s.k == 2 verifies: the k=1 set is contained, the top two ranked agents
// are members (n >= 2), and the chain decomposition appropriate to whether
// the runner-up lies inside the top agent's progeny; when it does not, the
// third member may attach to either of the first two.
StructureReport check_structure(const Dag& g, const InfluentialSet& s);

}  // namespace dagsel
