#include "dagsel/generators.hpp"

#include <algorithm>
#include <numeric>

#include "dagsel/influential.hpp"

namespace dagsel {

namespace {

void ensure(bool ok, const std::string& what) {
    if (!ok) throw GeneratorError("fixture contract violated: " + what);
}

void ensure_counts(const Dag& g, const std::vector<std::pair<int, int>>& expected) {
    const std::vector<int> counts = progeny_counts(g);
    for (auto [agent, want] : expected)
        ensure(counts[size_t(agent)] == want,
               "agent " + std::to_string(agent) + " progeny " +
                   std::to_string(counts[size_t(agent)]) + ", wanted " + std::to_string(want));
}

}  // namespace

Dag figure1_fixture() {
    // Chain 4->3->2->1 with leaves 5,6,7 feeding agent 4; agent 8 stands apart.
    Dag g(8, {{2, 1}, {3, 2}, {4, 3}, {5, 4}, {6, 4}, {7, 4}});
    ensure_counts(g, {{1, 7}, {2, 6}, {3, 5}, {4, 4}});
    const InfluentialSet s1 = influential_set(g, 1);
    ensure(s1.members == std::vector<int>{1, 2, 3, 4}, "1-influential set mismatch");
    ensure(ranking(g).order[4] == 8, "bystander should rank fifth");
    return g;
}

Dag two_star(int y) {
    if (y < 1) throw InvalidSize("two_star needs y >= 1, got " + std::to_string(y));
    std::vector<Edge> edges;
    for (int l = 1; l < y; ++l) edges.push_back({l, y});            // first star, hub y
    for (int l = y + 1; l < 2 * y; ++l) edges.push_back({l, 2 * y});  // second star, hub 2y
    Dag g(2 * y, std::move(edges));
    ensure_counts(g, {{y, y}, {2 * y, y}});
    ensure(influential_set(g, 1).members == std::vector<int>{2 * y},
           "1-influential set should be the higher-id hub alone");
    return g;
}

std::array<Dag, 3> figure3_networks() {
    Dag a(4, {{2, 1}, {3, 2}, {4, 3}});
    const std::array<Edge, 1> hide_b{{{2, 1}}};
    const std::array<Edge, 1> hide_c{{{3, 2}}};
    Dag b = hide_edges(a, 2, hide_b);
    Dag c = hide_edges(a, 3, hide_c);
    ensure_counts(a, {{1, 4}, {2, 3}, {3, 2}, {4, 1}});
    ensure_counts(b, {{1, 1}, {2, 3}, {3, 2}, {4, 1}});
    ensure_counts(c, {{1, 2}, {2, 1}, {3, 2}, {4, 1}});
    return {std::move(a), std::move(b), std::move(c)};
}

Dag figure4_fixture() {
    std::vector<Edge> edges;
    for (int l = 5; l <= 10; ++l) edges.push_back({l, 1});  // private star of agent 1
    edges.push_back({3, 2});                                // chain 4 -> 3 -> 2
    edges.push_back({4, 3});
    for (int l = 11; l <= 13; ++l) edges.push_back({l, 4});  // leaves feeding agent 4
    Dag g(13, std::move(edges));
    ensure_counts(g, {{1, 7}, {2, 6}, {3, 5}, {4, 4}});
    const InfluentialPair sets = influential_sets(g);
    ensure(sets.s1.members == std::vector<int>{1}, "1-influential set should be {1}");
    ensure(sets.s2.members == std::vector<int>{1, 2, 3, 4},
           "2-influential set should be {1,2,3,4}");
    ensure(!ProgenyTable(g).contains(1, 2), "runner-up must not follow the champion");
    return g;
}

Dag lm_tight_chain(int m) {
    if (m < 2) throw InvalidSize("lm_tight_chain needs m >= 2, got " + std::to_string(m));
    std::vector<Edge> edges;
    edges.reserve(size_t(m) - 1);
    for (int t = 1; t < m; ++t) edges.push_back({t + 1, t});
    Dag g(m, std::move(edges));
    ensure_counts(g, {{1, m}, {m, 1}});
    return g;
}

std::vector<Dag> enumerate_dags(int n) {
    if (n < 1) throw InvalidSize("enumerate_dags needs n >= 1, got " + std::to_string(n));
    if (n > 5)
        throw NTooLarge("enumerate_dags supports n <= 5 (n=" + std::to_string(n) +
                        " would mean 2^" + std::to_string(n * (n - 1)) + " candidates)");

    std::vector<Edge> pairs;  // all ordered pairs, lexicographic
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j) pairs.push_back({i, j});

    std::vector<Dag> dags;
    const std::uint32_t masks = std::uint32_t(1) << pairs.size();
    for (std::uint32_t mask = 0; mask < masks; ++mask) {
        // Cheap acyclicity filter on adjacency bitmasks before building a Dag:
        // repeatedly peel agents with no surviving incoming edge.
        std::array<std::uint8_t, 6> out{};
        for (size_t b = 0; b < pairs.size(); ++b)
            if (mask >> b & 1u) out[size_t(pairs[b].from)] |= std::uint8_t(1) << pairs[b].to;
        std::uint8_t alive = std::uint8_t(((1u << (n + 1)) - 1) & ~1u);  // bits 1..n
        bool progress = true;
        while (alive && progress) {
            progress = false;
            std::uint8_t incoming = 0;
            for (int v = 1; v <= n; ++v)
                if (alive >> v & 1u) incoming |= out[size_t(v)];
            const std::uint8_t sources = std::uint8_t(alive & ~incoming);
            if (sources) {
                alive &= std::uint8_t(~sources);
                progress = true;
            }
        }
        if (alive) continue;  // a cycle survived the peeling

        std::vector<Edge> edges;
        for (size_t b = 0; b < pairs.size(); ++b)
            if (mask >> b & 1u) edges.push_back(pairs[b]);
        dags.emplace_back(n, std::move(edges));
    }
    return dags;
}

std::vector<Dag> exhaustive_corpus(int n_max) {
    std::vector<Dag> all;
    for (int n = 1; n <= n_max; ++n) {
        std::vector<Dag> part = enumerate_dags(n);
        all.insert(all.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    return all;
}

Dag random_dag(int n, double edge_prob, std::uint64_t seed, int max_out_degree) {
    if (n < 1) throw InvalidSize("random_dag needs n >= 1, got " + std::to_string(n));
    if (!(edge_prob >= 0.0 && edge_prob <= 1.0))
        throw GeneratorError("edge_prob must lie in [0,1]");

    SplitMix64 rng(seed);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 1);
    for (int i = n - 1; i >= 1; --i) {
        const std::uint64_t j = rng.next_below(std::uint64_t(i) + 1);
        std::swap(order[size_t(i)], order[size_t(j)]);
    }

    std::vector<Edge> edges;
    std::vector<int> out_deg(size_t(n) + 1, 0);
    for (int s = 0; s + 1 < n; ++s) {
        for (int t = s + 1; t < n; ++t) {
            const double u = rng.next_double();  // consumed for every pair
            if (u < edge_prob &&
                (max_out_degree == 0 || out_deg[size_t(order[size_t(s)])] < max_out_degree)) {
                edges.push_back({order[size_t(s)], order[size_t(t)]});
                ++out_deg[size_t(order[size_t(s)])];
            }
        }
    }
    return Dag(n, std::move(edges));
}

std::vector<Dag> random_corpus(int count, int n_max, std::uint64_t seed,
                               int max_out_degree) {
    if (count < 0) throw InvalidSize("random_corpus needs count >= 0");
    if (n_max < 1) throw InvalidSize("random_corpus needs n_max >= 1");
    SplitMix64 master(seed);
    std::vector<Dag> corpus;
    corpus.reserve(size_t(count));
    for (int i = 0; i < count; ++i) {
        const int n = 1 + int(master.next_below(std::uint64_t(n_max)));
        const double p = master.next_double();
        const std::uint64_t sub_seed = master.next();
        corpus.push_back(random_dag(n, p, sub_seed, max_out_degree));
    }
    return corpus;
}

namespace {

int require_int(const std::optional<int>& v, const char* name, const char* family) {
    if (!v)
        throw GeneratorError(std::string("family '") + family + "' requires parameter --" +
                             name);
    return *v;
}

}  // namespace

Dag make_family(const std::string& name, const FamilyParams& params) {
    if (name == "figure1") return figure1_fixture();
    if (name == "figure4") return figure4_fixture();
    if (name == "two_star") return two_star(require_int(params.y, "y", "two_star"));
    if (name == "lm_tight_chain")
        return lm_tight_chain(require_int(params.m, "m", "lm_tight_chain"));
    if (name == "figure3a") return figure3_networks()[0];
    if (name == "figure3b") return figure3_networks()[1];
    if (name == "figure3c") return figure3_networks()[2];
    if (name == "random") {
        const int n = require_int(params.n, "n", "random");
        if (!params.p) throw GeneratorError("family 'random' requires parameter --p");
        if (!params.seed) throw GeneratorError("family 'random' requires parameter --seed");
        return random_dag(n, *params.p, *params.seed, params.max_out_degree);
    }
    throw GeneratorError("unknown graph family '" + name + "'");
}

std::vector<std::string> family_names() {
    return {"figure1", "two_star",       "figure3a", "figure3b",
            "figure3c", "figure4",       "lm_tight_chain", "random"};
}

}  // namespace dagsel
