// Naive reference implementations the unit tests trust instead of the
// library: progeny by per-source DFS, influential sets straight from their
// definition, and the labeled-DAG count recurrence. Deliberately slow and
// structured differently from the production code.
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "dagsel/graph.hpp"

namespace oracle {

// Out-adjacency on 1-based ids, straight from an edge list.
inline std::vector<std::vector<int>> adjacency(int n, const std::vector<dagsel::Edge>& edges) {
    std::vector<std::vector<int>> adj(size_t(n) + 1);
    for (const dagsel::Edge& e : edges) adj[size_t(e.from)].push_back(e.to);
    return adj;
}

// Can `from` reach `to` along follow edges? Iterative DFS.
inline bool reaches(const std::vector<std::vector<int>>& adj, int from, int to) {
    if (from == to) return true;
    std::vector<char> seen(adj.size(), 0);
    std::vector<int> stack{from};
    seen[size_t(from)] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[size_t(v)]) {
            if (w == to) return true;
            if (!seen[size_t(w)]) {
                seen[size_t(w)] = 1;
                stack.push_back(w);
            }
        }
    }
    return false;
}

// Progeny of i: everyone who reaches i, i included. Ascending ids.
inline std::vector<int> progeny_members(int n, const std::vector<dagsel::Edge>& edges, int i) {
    auto adj = adjacency(n, edges);
    std::vector<int> out;
    for (int j = 1; j <= n; ++j)
        if (reaches(adj, j, i)) out.push_back(j);
    return out;
}

inline std::vector<int> progeny_counts(int n, const std::vector<dagsel::Edge>& edges) {
    auto adj = adjacency(n, edges);
    std::vector<int> counts(size_t(n) + 1, 0);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (reaches(adj, j, i)) ++counts[size_t(i)];
    return counts;
}

// Strict order: larger progeny first, ties to the larger id.
inline bool outranks(const std::vector<int>& counts, int a, int b) {
    if (counts[size_t(a)] != counts[size_t(b)]) return counts[size_t(a)] > counts[size_t(b)];
    return a > b;
}

inline std::vector<int> ranking(int n, const std::vector<dagsel::Edge>& edges) {
    auto counts = progeny_counts(n, edges);
    std::vector<int> order;
    for (int i = 1; i <= n; ++i) order.push_back(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return outranks(counts, a, b); });
    return order;
}

// How many agents outrank i after i hides every out-edge.
inline int superiors_after_full_hide(int n, const std::vector<dagsel::Edge>& edges, int i) {
    std::vector<dagsel::Edge> kept;
    for (const dagsel::Edge& e : edges)
        if (e.from != i) kept.push_back(e);
    auto counts = progeny_counts(n, kept);
    int sup = 0;
    for (int j = 1; j <= n; ++j)
        if (j != i && outranks(counts, j, i)) ++sup;
    return sup;
}

// Members of the k-influential set, ordered by the original ranking.
inline std::vector<int> influential(int n, const std::vector<dagsel::Edge>& edges, int k) {
    std::vector<int> members;
    for (int i = 1; i <= n; ++i)
        if (superiors_after_full_hide(n, edges, i) < k) members.push_back(i);
    auto counts = progeny_counts(n, edges);
    std::sort(members.begin(), members.end(),
              [&](int a, int b) { return outranks(counts, a, b); });
    return members;
}

// Number of labeled DAGs on n vertices, by the classic inclusion-exclusion
// recurrence over the set of sources: a(n) = sum_{k>=1} (-1)^(k+1) C(n,k)
// 2^(k(n-k)) a(n-k). 1, 3, 25, 543, 29281, ...
inline std::uint64_t labeled_dag_count(int n) {
    std::vector<std::uint64_t> a(size_t(n) + 1, 0);
    a[0] = 1;
    for (int m = 1; m <= n; ++m) {
        // C(m,k) computed incrementally; everything fits in 64 bits for the
        // sizes the corpus supports.
        std::uint64_t binom = 1;
        std::uint64_t total = 0;
        for (int k = 1; k <= m; ++k) {
            binom = binom * std::uint64_t(m - k + 1) / std::uint64_t(k);
            std::uint64_t term = binom * (std::uint64_t(1) << (std::uint64_t(k) * std::uint64_t(m - k))) * a[size_t(m - k)];
            if (k % 2 == 1)
                total += term;
            else
                total -= term;
        }
        a[size_t(m)] = total;
    }
    return a[size_t(n)];
}

}  // namespace oracle
