#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dagsel/graph.hpp"

// Canonical graph families: hand-built fixtures with self-checked contracts,
// the exhaustive small-graph corpus, and seeded random DAGs. Every generator
// is deterministic; identical parameters always produce identical graphs.
namespace dagsel {

struct GeneratorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidSize : GeneratorError { using GeneratorError::GeneratorError; };
struct NTooLarge : GeneratorError { using GeneratorError::GeneratorError; };

// --- Portable RNG ------------------------------------------------------------
//
// splitmix64: the exact algorithm is spelled out (constants and all) so that
// seeded corpora reproduce bit-for-bit on any platform or reimplementation.
//   state += 0x9E3779B97F4A7C15
//   z = state; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9
//   z = (z ^ z>>27) * 0x94D049BB133111EB; return z ^ z>>31
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    // Uniform in [0,1): the top 53 bits scaled by 2^-53.
    double next_double() { return double(next() >> 11) * 0x1.0p-53; }
    // Uniform in [0, bound) via modulo; bias is irrelevant at our sizes and
    // the reduction is trivially portable.
    std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

// --- Fixtures ----------------------------------------------------------------
//
// Each fixture re-derives its advertised properties at build time and throws
// GeneratorError if its own contract fails, so tests can trust the shape.

// Eight agents: a four-link follower chain 4->3->2->1 fed by three leaves at
// its tail, plus bystander 8. Progenies of agents 1..4 are 7,6,5,4; the
// 1-influential set is exactly {1,2,3,4}; the bystander ranks fifth.
Dag figure1_fixture();

// Two disjoint stars with y agents each (hub progeny y). Hubs are agents y and
// 2y; the higher id wins the progeny tie, so the 1-influential set is {2y}.
// y = 1 degenerates to two isolated agents.
Dag two_star(int y);

// The three four-agent networks behind the incentive upper bound: (a) the
// chain 4->3->2->1, (b) the chain with edge (2,1) hidden, (c) with (3,2)
// hidden. Progeny profiles (4,3,2,1), (1,3,2,1), (2,1,2,1).
std::array<Dag, 3> figure3_networks();

// Thirteen agents in two components: agent 1 with a private six-leaf star,
// and the chain 4->3->2 fed by three leaves. Progenies of 1..4 are 7,6,5,4;
// the 1-influential set is {1}, the 2-influential set {1,2,3,4}, and the
// runner-up (agent 2) does not follow the champion (agent 1).
Dag figure4_fixture();

// Directed path of m agents m -> m-1 -> ... -> 1 (m >= 2). Progeny of agent t
// is m-t+1; the 1-influential set is the upper half {1..floor(m/2)+1} with
// consecutive progenies, which drives lm mechanisms toward their worst case
// as m grows.
Dag lm_tight_chain(int m);

// --- Corpora -----------------------------------------------------------------

// Every labeled DAG on exactly n agents (n <= 5; counts 1, 3, 25, 543, 29281),
// produced by filtering all 2^(n(n-1)) edge subsets for acyclicity in a fixed
// order, so the stream is deterministic and duplicate-free.
std::vector<Dag> enumerate_dags(int n);

// enumerate_dags(1) + ... + enumerate_dags(n_max), in that order.
std::vector<Dag> exhaustive_corpus(int n_max);

// Seeded random DAG: a splitmix64(seed) stream first shuffles 1..n into a
// topological order (Fisher-Yates, next_below), then visits position pairs
// (s,t), s < t, in lexicographic order and adds the edge "order[s] follows
// order[t]" iff next_double() < edge_prob. One double is consumed per pair
// even when the cap below suppresses the edge. max_out_degree > 0 caps each
// agent's out-degree (keeping whole-out-edge-set enumeration tractable);
// 0 means uncapped. edge_prob = 1 yields the transitive tournament, where the
// last agent in the order has progeny n.
Dag random_dag(int n, double edge_prob, std::uint64_t seed, int max_out_degree = 0);

// `count` random DAGs from one master splitmix64(seed) stream. Per graph the
// stream yields n in 1..n_max, then edge_prob in [0,1), then the sub-seed
// passed to random_dag. Materialized up front so sweeps can run in parallel.
std::vector<Dag> random_corpus(int count, int n_max, std::uint64_t seed,
                               int max_out_degree = 0);

// --- Named families (CLI surface) ---------------------------------------------

struct FamilyParams {
    std::optional<int> y;       // two_star
    std::optional<int> m;       // lm_tight_chain
    std::optional<int> n;       // random
    std::optional<double> p;    // random
    std::optional<std::uint64_t> seed;  // random
    int max_out_degree = 0;     // random
};

// Families: figure1, two_star, figure3a, figure3b, figure3c, figure4,
// lm_tight_chain, random. Throws GeneratorError for unknown names or missing
// parameters, naming what is missing.
Dag make_family(const std::string& name, const FamilyParams& params);

std::vector<std::string> family_names();

}  // namespace dagsel
