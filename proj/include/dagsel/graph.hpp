#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// Directed acyclic "follows" graphs over agents 1..n, plus the reach-based
// influence measure everything else in the library is built on.
namespace dagsel {

// Directed edge (from, to): agent `from` follows agent `to`.
struct Edge {
    int from = 0;
    int to = 0;
    auto operator<=>(const Edge&) const = default;
};

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Each validation error names the offending edge or agent in its message.
struct CyclicGraph : GraphError { using GraphError::GraphError; };
struct SelfLoop : GraphError { using GraphError::GraphError; };
struct DuplicateEdge : GraphError { using GraphError::GraphError; };
struct IdOutOfRange : GraphError { using GraphError::GraphError; };
// Raised by hide_edges when asked to remove an edge the agent does not own.
struct NotAnOutEdge : GraphError { using GraphError::GraphError; };

// Immutable validated DAG. Construction rejects self-loops, duplicate edges,
// out-of-range ids and cycles; every operation on an already-built Dag is a
// pure function of its value.
class Dag {
public:
    // Throws SelfLoop/DuplicateEdge/IdOutOfRange/CyclicGraph (or GraphError
    // for a non-positive agent count). Edges are stored sorted.
    Dag(int n, std::vector<Edge> edges);

    int n() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    // Agents this agent follows (targets of its out-edges), ascending.
    const std::vector<int>& out_neighbors(int i) const { return out_.at(size_t(i)); }
    // Agents following this agent directly, ascending.
    const std::vector<int>& in_neighbors(int i) const { return in_.at(size_t(i)); }
    int out_degree(int i) const { return int(out_neighbors(i).size()); }
    // E_i: the out-edges owned by agent i.
    std::vector<Edge> out_edges(int i) const;
    // Topological order: every edge (a,b) has a before b.
    const std::vector<int>& topo_order() const { return topo_; }

    bool operator==(const Dag& other) const {
        return n_ == other.n_ && edges_ == other.edges_;
    }

private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
    std::vector<int> topo_;
};

// Convenience factory matching the JSON wire format ({"n":..., "edges":...}).
Dag build_dag(int n, std::vector<Edge> edges);

// --- Influence (progeny) ---------------------------------------------------
//
// The progeny of agent i is the set of agents that can reach i along directed
// edges, *plus i itself*.  An edge (a,b) means "a follows b", so influence
// flows against nothing: followers sit at the tails of paths and the followee
// at the head.  Note the direction: progeny is IN-reachability of i, i.e. the
// transitive follower set -- the reverse of a "descendants of i" reading.
// Counts are exact integers; |progeny(i)| >= 1 always, since i counts itself.

// Progeny of one agent: its transitive followers plus itself.
struct ProgenySet {
    int agent = 0;
    std::vector<int> members;  // ascending, includes `agent`
    int count() const { return int(members.size()); }
};

ProgenySet progeny(const Dag& g, int i);

// Progeny sizes for all agents at once; index 0 is unused.
std::vector<int> progeny_counts(const Dag& g);

// All progeny sets at once, packed as bitsets. Row i holds the followers of
// agent i (bit j set iff j reaches i); i's own bit is set as well.
class ProgenyTable {
public:
    explicit ProgenyTable(const Dag& g);
    bool contains(int i, int j) const {
        return (rows_[size_t(i) * words_ + size_t(j >> 6)] >> (j & 63)) & 1u;
    }
    int count(int i) const { return counts_[size_t(i)]; }
    int n() const { return n_; }

private:
    int n_;
    size_t words_;
    std::vector<std::uint64_t> rows_;
    std::vector<int> counts_;
};

// --- Ranking ---------------------------------------------------------------

// Strict total order over agents: larger progeny first, ties broken toward
// the larger id. order[0] is the top-ranked agent i_1*.
struct RankingSequence {
    std::vector<int> order;
};

RankingSequence ranking(const Dag& g);

// True iff a outranks b given the progeny counts (a != b assumed).
inline bool outranks(const std::vector<int>& counts, int a, int b) {
    return counts[size_t(a)] != counts[size_t(b)] ? counts[size_t(a)] > counts[size_t(b)]
                                                  : a > b;
}

// --- Manipulation ----------------------------------------------------------

// The graph agent i presents when she hides `subset` of her out-edges.
// Every element must belong to E_i (else NotAnOutEdge, naming the edge);
// duplicates in `subset` are tolerated. An empty subset returns g unchanged.
Dag hide_edges(const Dag& g, int i, std::span<const Edge> subset);

// Shorthand for hiding all of E_i, the move behind influential-set membership.
Dag hide_all_out_edges(const Dag& g, int i);

namespace detail {
// Progeny counts of g with agent `skip_agent`'s out-edges ignored, written
// into `out` (size n+1). skip_agent = 0 means no agent is skipped. This is
// the allocation-light kernel behind influential-set membership tests.
void progeny_counts_into(const Dag& g, int skip_agent, std::vector<int>& out);
}  // namespace detail

}  // namespace dagsel
