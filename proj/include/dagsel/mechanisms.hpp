#pragma once

#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "dagsel/graph.hpp"

// Randomized selection mechanisms. Each takes a whole graph and returns the
// full selection distribution (no sampling happens in here); probabilities
// are IEEE doubles, while the progeny ratios they are derived from stay exact
// integers until the final division feeding the logarithm.
namespace dagsel {

struct InvalidBeta : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The beta maximizing the lm guarantee min{(beta + (1-beta)/ln2)/2, beta}:
// 1/(1+ln 2) ~= 0.5906.
inline constexpr double OPTIMAL_BETA = 1.0 / (1.0 + std::numbers::ln2);

// A probability distribution over subsets of agents of size <= k. Outcomes
// are canonically ordered (by size, then lexicographically), carry strictly
// positive probability, sum to 1 within 1e-9, and never repeat a subset; the
// empty subset appears exactly when leftover mass exists. Marginals are the
// per-agent selection probabilities implied by the outcomes.
class SelectionDistribution {
public:
    struct Outcome {
        std::vector<int> agents;  // ascending
        double prob = 0.0;
    };

    // Normalizes, fills in leftover mass as the empty outcome, and validates
    // the invariants above; violations throw std::logic_error since they can
    // only arise from a buggy mechanism.
    SelectionDistribution(std::string mechanism, int k, int n_agents,
                          std::vector<Outcome> outcomes, bool ic_guaranteed);

    const std::string& mechanism() const { return mechanism_; }
    int k() const { return k_; }
    int n_agents() const { return n_agents_; }
    bool ic_guaranteed() const { return ic_guaranteed_; }
    const std::vector<Outcome>& outcomes() const { return outcomes_; }
    // P(i is selected); zero for agents no outcome mentions.
    double marginal(int i) const;
    const std::vector<double>& marginals() const { return marginals_; }

private:
    std::string mechanism_;
    int k_;
    int n_agents_;
    bool ic_guaranteed_;
    std::vector<Outcome> outcomes_;
    std::vector<double> marginals_;  // index 0 unused
};

// --- The mechanisms ----------------------------------------------------------

// Singleton lottery over the 1-influential set [i_1..i_m]: the last member
// gets beta, member i_t (t < m) gets (1-beta) * log2(P(i_t)/P(i_{t+1})), and
// whatever mass is left goes to selecting nobody. Incentive compatibility is
// guaranteed exactly for beta >= 1/2; smaller beta still computes but the
// distribution is flagged accordingly. Throws InvalidBeta outside [0,1].
SelectionDistribution beta_lm(const Dag& g, double beta);

// Deterministic pair: the two lowest-ranked members of the 1-influential set
// (or its sole member when m = 1).
SelectionDistribution ldm(const Dag& g);

// Lottery over pairs built on the 1- and 2-influential sets S1 and S2.
// With S2 = S1 = [i_1..i_m], i_m is always selected and her companion is
// drawn from [i_1..i_{m-1}] by a 1/(1+ln2)-lm rule (possibly nobody).
// With S2 \ S1 nonempty, the last member of S2 is always selected and the
// companion is drawn by 1/(1+ln2)-lm over S1; a companion draw that collides
// with the deterministic pick collapses to the singleton. When that collision
// is possible the rule is manipulable and its ratio floor fails, so the
// returned distribution is never flagged as incentive-guaranteed.
SelectionDistribution lald(const Dag& g);

// A named mechanism closed over its parameters, for sweeps and the CLI.
struct Mechanism {
    std::string name;
    int k = 1;
    std::function<SelectionDistribution(const Dag&)> run;
};

Mechanism make_beta_lm(double beta);
Mechanism make_ldm();
Mechanism make_lald();
// name in {"beta-lm", "ldm", "lald"}; beta applies to beta-lm only.
Mechanism make_mechanism(const std::string& name, double beta = OPTIMAL_BETA);

}  // namespace dagsel
