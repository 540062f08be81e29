#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dagsel/graph.hpp"
#include "dagsel/mechanisms.hpp"

// Evaluation machinery: expected influence, approximation ratios against the
// progeny-optimal subset, an exhaustive incentive-compatibility oracle, and
// corpus sweeps. The sweeps ship in two interchangeable forms -- an OpenMP
// kernel and a plain serial reference -- that are checked against each other;
// both merge per-graph results associatively, so outputs never depend on the
// schedule or thread count.
namespace dagsel {

struct KExceedsN : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DistributionGraphMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// The exhaustive manipulation audit refuses graphs whose out-edge subsets
// outnumber the configured budget.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sum over outcomes of prob * (total progeny of the selected agents).
// Progeny sums stay integers; only the probability weighting is floating.
double expected_progeny(const SelectionDistribution& dist, const Dag& g);

// Sum of the k largest progenies -- the best any size-k subset can do, since
// the ranking prefix is optimal. Requires 0 <= k <= n (KExceedsN otherwise).
long long optimal_sum(const Dag& g, int k);

// expected_progeny / optimal_sum, in [0,1]. The denominator uses min(k, n)
// so that k=2 mechanisms evaluate sensibly on single-agent graphs.
double approx_ratio(const SelectionDistribution& dist, const Dag& g, int k);
double approx_ratio(const Mechanism& mech, const Dag& g);

// --- Incentive-compatibility oracle ------------------------------------------

struct IcOptions {
    double tolerance = 1e-9;          // marginal gains above this count as violations
    std::int64_t subset_budget = 1'000'000;  // per graph, across all agents
    bool parallel = true;             // use the OpenMP kernel when available
};

struct IcViolation {
    int agent = 0;
    std::vector<Edge> hidden;  // the profitable subset of the agent's out-edges
    double marginal_before = 0.0;
    double marginal_after = 0.0;
};

struct IcReport {
    std::string mechanism;
    std::int64_t subsets_examined = 0;
    std::vector<IcViolation> violations;
    bool passed() const { return violations.empty(); }
};

// Brute force over every agent and every nonempty subset of her out-edges:
// recompute the mechanism on the manipulated graph and flag any increase of
// her own marginal beyond the tolerance. Throws BudgetExceeded up front when
// the graph has more subsets than opts.subset_budget.
IcReport ic_check(const Mechanism& mech, const Dag& g, const IcOptions& opts = {});

// --- Corpus sweeps -------------------------------------------------------------

struct IcSweepResult {
    std::string mechanism;
    std::int64_t graphs = 0;
    std::int64_t subsets_examined = 0;
    std::vector<std::size_t> failing_indices;  // into the corpus, ascending
    std::vector<IcReport> failing_reports;     // parallel to failing_indices
    std::vector<int> violation_counts;         // per corpus graph
    bool passed() const { return failing_indices.empty(); }
};

IcSweepResult ic_sweep(const Mechanism& mech, std::span<const Dag> corpus,
                       const IcOptions& opts = {});
// Plain-loop reference implementation; must agree with ic_sweep exactly.
IcSweepResult ic_sweep_serial(const Mechanism& mech, std::span<const Dag> corpus,
                              const IcOptions& opts = {});

struct RatioSweepResult {
    std::string mechanism;
    int k = 0;
    double min_ratio = 1.0;
    std::size_t argmin_index = 0;  // first corpus index attaining the minimum
    std::vector<double> ratios;    // per corpus graph
};

RatioSweepResult ratio_sweep(const Mechanism& mech, std::span<const Dag> corpus);
RatioSweepResult ratio_sweep_serial(const Mechanism& mech, std::span<const Dag> corpus);

struct StructureSweepResult {
    std::int64_t graphs = 0;
    std::vector<std::size_t> failing_indices;  // graphs where any k=1/k=2 check failed
    bool passed() const { return failing_indices.empty(); }
};

// Runs check_structure for k=1 and k=2 on every graph.
StructureSweepResult structure_sweep(std::span<const Dag> corpus);
StructureSweepResult structure_sweep_serial(std::span<const Dag> corpus);

// The lm guarantee as a function of beta: min{(beta + (1-beta)/ln2)/2, beta}.
double lm_ratio_floor(double beta);
// lald's design target (3+ln2)/(4(1+ln2)) ~= 0.5453. Not a true floor: the
// collapsing-anchor family undercuts it (see the ratio-floors suite).
double lald_ratio_floor();

}  // namespace dagsel
