#include "dagsel/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "dagsel/influential.hpp"

namespace dagsel {

double expected_progeny(const SelectionDistribution& dist, const Dag& g) {
    if (dist.n_agents() != g.n())
        throw DistributionGraphMismatch("distribution is over " +
                                        std::to_string(dist.n_agents()) +
                                        " agents, graph has " + std::to_string(g.n()));
    const std::vector<int> counts = progeny_counts(g);
    double ev = 0.0;
    for (const SelectionDistribution::Outcome& o : dist.outcomes()) {
        long long sum = 0;
        for (int a : o.agents) sum += counts[size_t(a)];
        ev += o.prob * double(sum);
    }
    return ev;
}

long long optimal_sum(const Dag& g, int k) {
    if (k < 0 || k > g.n())
        throw KExceedsN("k=" + std::to_string(k) + " outside 0..n=" + std::to_string(g.n()));
    std::vector<int> counts = progeny_counts(g);
    counts.erase(counts.begin());  // drop unused slot 0
    std::sort(counts.begin(), counts.end(), std::greater<>());
    long long sum = 0;
    for (int t = 0; t < k; ++t) sum += counts[size_t(t)];
    return sum;
}

double approx_ratio(const SelectionDistribution& dist, const Dag& g, int k) {
    const long long best = optimal_sum(g, std::min(k, g.n()));
    return expected_progeny(dist, g) / double(best);
}

double approx_ratio(const Mechanism& mech, const Dag& g) {
    return approx_ratio(mech.run(g), g, mech.k);
}

double lm_ratio_floor(double beta) {
    return std::min((beta + (1.0 - beta) / std::numbers::ln2) / 2.0, beta);
}

double lald_ratio_floor() {
    return (3.0 + std::numbers::ln2) / (4.0 * (1.0 + std::numbers::ln2));
}

// --- IC oracle -----------------------------------------------------------------

namespace {

// Flat work space over (agent, nonempty out-edge subset) pairs so a single
// loop index can be scheduled across threads.
struct IcWorkPlan {
    std::vector<int> agents;            // agents with out-edges
    std::vector<std::int64_t> offsets;  // prefix start per agent, plus total
    std::int64_t total = 0;
};

IcWorkPlan plan_ic_work(const Dag& g, std::int64_t budget) {
    IcWorkPlan plan;
    for (int i = 1; i <= g.n(); ++i) {
        const int d = g.out_degree(i);
        if (d == 0) continue;
        if (d >= 62)
            throw BudgetExceeded("agent " + std::to_string(i) + " has " + std::to_string(d) +
                                 " out-edges; subset enumeration is infeasible");
        plan.agents.push_back(i);
        plan.offsets.push_back(plan.total);
        plan.total += (std::int64_t(1) << d) - 1;
    }
    plan.offsets.push_back(plan.total);
    if (plan.total > budget)
        throw BudgetExceeded("graph needs " + std::to_string(plan.total) +
                             " subset evaluations, budget is " + std::to_string(budget));
    return plan;
}

// Evaluates work item `w`; returns the violation if the hidden subset is
// profitable for its agent.
std::optional<IcViolation> ic_work_item(const Mechanism& mech, const Dag& g,
                                        const IcWorkPlan& plan,
                                        const std::vector<double>& honest_marginals,
                                        std::int64_t w, double tolerance) {
    const size_t a = size_t(std::upper_bound(plan.offsets.begin(), plan.offsets.end(), w) -
                            plan.offsets.begin()) - 1;
    const int agent = plan.agents[a];
    const std::uint64_t mask = std::uint64_t(w - plan.offsets[a]) + 1;  // 1..2^d-1
    const std::vector<int>& outs = g.out_neighbors(agent);

    std::vector<Edge> hide;
    for (size_t b = 0; b < outs.size(); ++b)
        if (mask >> b & 1u) hide.push_back({agent, outs[b]});

    const Dag manipulated = hide_edges(g, agent, hide);
    const double after = mech.run(manipulated).marginal(agent);
    const double before = honest_marginals[size_t(agent)];
    if (after > before + tolerance) return IcViolation{agent, std::move(hide), before, after};
    return std::nullopt;
}

}  // namespace

IcReport ic_check(const Mechanism& mech, const Dag& g, const IcOptions& opts) {
    const IcWorkPlan plan = plan_ic_work(g, opts.subset_budget);
    const std::vector<double> honest = mech.run(g).marginals();

    IcReport report;
    report.mechanism = mech.name;
    report.subsets_examined = plan.total;

    std::vector<std::pair<std::int64_t, IcViolation>> found;
#ifdef _OPENMP
    if (opts.parallel) {
#pragma omp parallel
        {
            std::vector<std::pair<std::int64_t, IcViolation>> local;
#pragma omp for schedule(dynamic, 64) nowait
            for (std::int64_t w = 0; w < plan.total; ++w) {
                auto v = ic_work_item(mech, g, plan, honest, w, opts.tolerance);
                if (v) local.emplace_back(w, std::move(*v));
            }
#pragma omp critical
            found.insert(found.end(), std::make_move_iterator(local.begin()),
                         std::make_move_iterator(local.end()));
        }
        std::sort(found.begin(), found.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
    } else
#endif
    {
        for (std::int64_t w = 0; w < plan.total; ++w) {
            auto v = ic_work_item(mech, g, plan, honest, w, opts.tolerance);
            if (v) found.emplace_back(w, std::move(*v));
        }
    }
    for (auto& [w, v] : found) report.violations.push_back(std::move(v));
    return report;
}

// --- Sweeps ----------------------------------------------------------------------
//
// Each parallel sweep distributes whole graphs across threads, keeps thread-
// local partial results, and merges them in corpus order afterwards, so the
// outcome is identical to the serial reference no matter the interleaving.

namespace {

void merge_ic_failure(IcSweepResult& result, std::size_t index, IcReport&& report) {
    result.failing_indices.push_back(index);
    result.failing_reports.push_back(std::move(report));
}

}  // namespace

IcSweepResult ic_sweep_serial(const Mechanism& mech, std::span<const Dag> corpus,
                              const IcOptions& opts) {
    IcOptions inner = opts;
    inner.parallel = false;
    IcSweepResult result;
    result.mechanism = mech.name;
    result.graphs = std::int64_t(corpus.size());
    result.violation_counts.assign(corpus.size(), 0);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        IcReport r = ic_check(mech, corpus[i], inner);
        result.subsets_examined += r.subsets_examined;
        result.violation_counts[i] = int(r.violations.size());
        if (!r.passed()) merge_ic_failure(result, i, std::move(r));
    }
    return result;
}

IcSweepResult ic_sweep(const Mechanism& mech, std::span<const Dag> corpus,
                       const IcOptions& opts) {
#ifndef _OPENMP
    return ic_sweep_serial(mech, corpus, opts);
#else
    if (!opts.parallel) return ic_sweep_serial(mech, corpus, opts);
    IcOptions inner = opts;
    inner.parallel = false;  // one level of parallelism: across graphs
    IcSweepResult result;
    result.mechanism = mech.name;
    result.graphs = std::int64_t(corpus.size());
    result.violation_counts.assign(corpus.size(), 0);

    std::vector<std::pair<std::size_t, IcReport>> failures;
    std::int64_t subsets = 0;
#pragma omp parallel
    {
        std::vector<std::pair<std::size_t, IcReport>> local;
        std::int64_t local_subsets = 0;
#pragma omp for schedule(dynamic, 16) nowait
        for (std::int64_t i = 0; i < std::int64_t(corpus.size()); ++i) {
            IcReport r = ic_check(mech, corpus[size_t(i)], inner);
            local_subsets += r.subsets_examined;
            result.violation_counts[size_t(i)] = int(r.violations.size());
            if (!r.passed()) local.emplace_back(std::size_t(i), std::move(r));
        }
#pragma omp critical
        {
            subsets += local_subsets;
            failures.insert(failures.end(), std::make_move_iterator(local.begin()),
                            std::make_move_iterator(local.end()));
        }
    }
    std::sort(failures.begin(), failures.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    result.subsets_examined = subsets;
    for (auto& [i, r] : failures) merge_ic_failure(result, i, std::move(r));
    return result;
#endif
}

RatioSweepResult ratio_sweep_serial(const Mechanism& mech, std::span<const Dag> corpus) {
    RatioSweepResult result;
    result.mechanism = mech.name;
    result.k = mech.k;
    result.ratios.assign(corpus.size(), 1.0);
    for (std::size_t i = 0; i < corpus.size(); ++i) result.ratios[i] = approx_ratio(mech, corpus[i]);
    for (std::size_t i = 0; i < corpus.size(); ++i)
        if (result.ratios[i] < result.min_ratio) {
            result.min_ratio = result.ratios[i];
            result.argmin_index = i;
        }
    return result;
}

RatioSweepResult ratio_sweep(const Mechanism& mech, std::span<const Dag> corpus) {
#ifndef _OPENMP
    return ratio_sweep_serial(mech, corpus);
#else
    RatioSweepResult result;
    result.mechanism = mech.name;
    result.k = mech.k;
    result.ratios.assign(corpus.size(), 1.0);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < std::int64_t(corpus.size()); ++i)
        result.ratios[size_t(i)] = approx_ratio(mech, corpus[size_t(i)]);
    // min + first argmin: order-independent given the full ratio vector
    for (std::size_t i = 0; i < corpus.size(); ++i)
        if (result.ratios[i] < result.min_ratio) {
            result.min_ratio = result.ratios[i];
            result.argmin_index = i;
        }
    return result;
#endif
}

namespace {

bool structure_ok(const Dag& g) {
    const InfluentialPair sets = influential_sets(g);
    return check_structure(g, sets.s1).all_passed() &&
           check_structure(g, sets.s2).all_passed();
}

}  // namespace

StructureSweepResult structure_sweep_serial(std::span<const Dag> corpus) {
    StructureSweepResult result;
    result.graphs = std::int64_t(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i)
        if (!structure_ok(corpus[i])) result.failing_indices.push_back(i);
    return result;
}

StructureSweepResult structure_sweep(std::span<const Dag> corpus) {
#ifndef _OPENMP
    return structure_sweep_serial(corpus);
#else
    StructureSweepResult result;
    result.graphs = std::int64_t(corpus.size());
    std::vector<char> failed(corpus.size(), 0);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < std::int64_t(corpus.size()); ++i)
        failed[size_t(i)] = !structure_ok(corpus[size_t(i)]);
    for (std::size_t i = 0; i < corpus.size(); ++i)
        if (failed[i]) result.failing_indices.push_back(i);
    return result;
#endif
}

}  // namespace dagsel
