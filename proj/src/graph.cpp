#include "dagsel/graph.hpp"

#include <algorithm>
#include <bit>

namespace dagsel {

namespace {

std::string edge_str(const Edge& e) {
    return "(" + std::to_string(e.from) + "," + std::to_string(e.to) + ")";
}

}  // namespace

Dag::Dag(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ <= 0)
        throw GraphError("agent count must be positive, got " + std::to_string(n_));

    std::sort(edges_.begin(), edges_.end());
    for (size_t e = 0; e < edges_.size(); ++e) {
        const Edge& ed = edges_[e];
        if (ed.from < 1 || ed.from > n_ || ed.to < 1 || ed.to > n_)
            throw IdOutOfRange("edge " + edge_str(ed) + " references an agent outside 1.." +
                               std::to_string(n_));
        if (ed.from == ed.to)
            throw SelfLoop("self-loop " + edge_str(ed));
        if (e > 0 && edges_[e - 1] == ed)
            throw DuplicateEdge("duplicate edge " + edge_str(ed));
    }

    out_.assign(size_t(n_) + 1, {});
    in_.assign(size_t(n_) + 1, {});
    for (const Edge& ed : edges_) {
        out_[size_t(ed.from)].push_back(ed.to);
        in_[size_t(ed.to)].push_back(ed.from);
    }

    // Kahn's algorithm; leftovers after the queue drains witness a cycle.
    std::vector<int> indeg(size_t(n_) + 1, 0);
    for (const Edge& ed : edges_) ++indeg[size_t(ed.to)];
    topo_.reserve(size_t(n_));
    for (int v = 1; v <= n_; ++v)
        if (indeg[size_t(v)] == 0) topo_.push_back(v);
    for (size_t head = 0; head < topo_.size(); ++head) {
        for (int w : out_[size_t(topo_[head])])
            if (--indeg[size_t(w)] == 0) topo_.push_back(w);
    }
    if (int(topo_.size()) != n_) {
        // Walk backwards through still-cyclic nodes until one repeats; the
        // step that closes the loop names a genuine cycle edge.
        std::vector<char> stuck(size_t(n_) + 1, 0), seen(size_t(n_) + 1, 0);
        for (int v = 1; v <= n_; ++v) stuck[size_t(v)] = indeg[size_t(v)] > 0;
        int v = 1;
        while (!stuck[size_t(v)]) ++v;
        while (!seen[size_t(v)]) {
            seen[size_t(v)] = 1;
            for (int u : in_[size_t(v)])
                if (stuck[size_t(u)]) {
                    v = u;
                    break;
                }
        }
        int w = v;  // v lies on a cycle; follow it one step to name an edge
        for (int u : in_[size_t(v)])
            if (stuck[size_t(u)]) {
                w = u;
                break;
            }
        throw CyclicGraph("graph is not acyclic: edge " + edge_str({w, v}) +
                          " lies on a cycle");
    }
}

std::vector<Edge> Dag::out_edges(int i) const {
    if (i < 1 || i > n_)
        throw IdOutOfRange("agent " + std::to_string(i) + " outside 1.." + std::to_string(n_));
    std::vector<Edge> es;
    es.reserve(out_[size_t(i)].size());
    for (int j : out_[size_t(i)]) es.push_back({i, j});
    return es;
}

Dag build_dag(int n, std::vector<Edge> edges) { return Dag(n, std::move(edges)); }

namespace detail {

void progeny_counts_into(const Dag& g, int skip_agent, std::vector<int>& out) {
    const int n = g.n();
    const size_t words = size_t(n) / 64 + 1;
    // Row v collects the followers of v; propagate along topo order so each
    // row is final before it is pushed to the agents v follows.
    thread_local std::vector<std::uint64_t> rows;
    rows.assign((size_t(n) + 1) * words, 0);
    for (int v : g.topo_order()) {
        if (v == skip_agent) continue;
        std::uint64_t* rv = rows.data() + size_t(v) * words;
        for (int w : g.out_neighbors(v)) {
            std::uint64_t* rw = rows.data() + size_t(w) * words;
            for (size_t k = 0; k < words; ++k) rw[k] |= rv[k];
            rw[size_t(v) >> 6] |= std::uint64_t(1) << (v & 63);
        }
    }
    out.assign(size_t(n) + 1, 0);
    for (int v = 1; v <= n; ++v) {
        const std::uint64_t* rv = rows.data() + size_t(v) * words;
        int c = 1;  // v itself
        for (size_t k = 0; k < words; ++k) c += std::popcount(rv[k]);
        out[size_t(v)] = c;
    }
}

}  // namespace detail

std::vector<int> progeny_counts(const Dag& g) {
    std::vector<int> counts;
    detail::progeny_counts_into(g, 0, counts);
    return counts;
}

ProgenyTable::ProgenyTable(const Dag& g)
    : n_(g.n()), words_(size_t(g.n()) / 64 + 1) {
    rows_.assign((size_t(n_) + 1) * words_, 0);
    for (int v : g.topo_order()) {
        std::uint64_t* rv = rows_.data() + size_t(v) * words_;
        for (int w : g.out_neighbors(v)) {
            std::uint64_t* rw = rows_.data() + size_t(w) * words_;
            for (size_t k = 0; k < words_; ++k) rw[k] |= rv[k];
            rw[size_t(v) >> 6] |= std::uint64_t(1) << (v & 63);
        }
    }
    counts_.assign(size_t(n_) + 1, 0);
    for (int v = 1; v <= n_; ++v) {
        std::uint64_t* rv = rows_.data() + size_t(v) * words_;
        rv[size_t(v) >> 6] |= std::uint64_t(1) << (v & 63);  // v counts itself
        int c = 0;
        for (size_t k = 0; k < words_; ++k) c += std::popcount(rv[k]);
        counts_[size_t(v)] = c;
    }
}

ProgenySet progeny(const Dag& g, int i) {
    if (i < 1 || i > g.n())
        throw IdOutOfRange("agent " + std::to_string(i) + " outside 1.." +
                           std::to_string(g.n()));
    ProgenyTable table(g);
    ProgenySet ps;
    ps.agent = i;
    for (int j = 1; j <= g.n(); ++j)
        if (table.contains(i, j)) ps.members.push_back(j);
    return ps;
}

RankingSequence ranking(const Dag& g) {
    const std::vector<int> counts = progeny_counts(g);
    RankingSequence r;
    r.order.resize(size_t(g.n()));
    for (int v = 1; v <= g.n(); ++v) r.order[size_t(v) - 1] = v;
    std::sort(r.order.begin(), r.order.end(),
              [&](int a, int b) { return outranks(counts, a, b); });
    return r;
}

Dag hide_edges(const Dag& g, int i, std::span<const Edge> subset) {
    if (i < 1 || i > g.n())
        throw IdOutOfRange("agent " + std::to_string(i) + " outside 1.." +
                           std::to_string(g.n()));
    std::vector<Edge> hide(subset.begin(), subset.end());
    std::sort(hide.begin(), hide.end());
    hide.erase(std::unique(hide.begin(), hide.end()), hide.end());
    for (const Edge& e : hide) {
        if (e.from != i || !std::binary_search(g.edges().begin(), g.edges().end(), e))
            throw NotAnOutEdge("edge (" + std::to_string(e.from) + "," +
                               std::to_string(e.to) + ") is not an out-edge of agent " +
                               std::to_string(i));
    }
    std::vector<Edge> kept;
    kept.reserve(g.edges().size() - hide.size());
    for (const Edge& e : g.edges())
        if (!std::binary_search(hide.begin(), hide.end(), e)) kept.push_back(e);
    return Dag(g.n(), std::move(kept));
}

Dag hide_all_out_edges(const Dag& g, int i) {
    const std::vector<Edge> all = g.out_edges(i);
    return hide_edges(g, i, all);
}

}  // namespace dagsel
