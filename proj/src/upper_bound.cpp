#include "dagsel/upper_bound.hpp"

#include <algorithm>

#include "dagsel/analysis.hpp"
#include "dagsel/generators.hpp"
#include "dagsel/graph.hpp"

namespace dagsel {

namespace {

// A hiding move links a manipulator on the chain to her identity in the graph
// the move produces; when the produced graph only matches after renaming, the
// relabeling is recorded too (sigma[old] = new).
struct HidingMove {
    int manipulator;                // agent on the chain hiding her out-edges
    int target;                     // 1 -> the (2,1)-hidden network, 2 -> the (3,2)-hidden one
    std::array<int, 5> sigma;       // index 1..4; sigma[old] = new
    int image;                      // sigma[manipulator]
};

Dag relabel(const Dag& g, const std::array<int, 5>& sigma) {
    std::vector<Edge> edges;
    edges.reserve(g.edges().size());
    for (const Edge& e : g.edges())
        edges.push_back({sigma[size_t(e.from)], sigma[size_t(e.to)]});
    return Dag(g.n(), std::move(edges));
}

constexpr std::array<int, 5> kIdentity = {0, 1, 2, 3, 4};
// The chain minus agent 4's out-edge is the (2,1)-hidden network with every
// agent shifted one step up the chain.
constexpr std::array<int, 5> kShift = {0, 2, 3, 4, 1};
// The (3,2)-hidden network splits into two isomorphic halves; swapping them
// maps the manipulator (agent 3) onto agent 1.
constexpr std::array<int, 5> kSwapHalves = {0, 3, 4, 1, 2};

const std::array<HidingMove, 4> kMoves = {{
    {2, 1, kIdentity, 2},
    {4, 1, kShift, 1},
    {3, 2, kIdentity, 3},
    {3, 2, kSwapHalves, 1},
}};

void require(bool ok, const std::string& what) {
    if (!ok) throw CertificateViolation(what);
}

// The three networks with their integer progeny profiles and optimal pair
// sums, rebuilt from scratch and cross-checked.
struct Networks {
    std::array<Dag, 3> g;
    std::array<std::vector<int>, 3> counts;
    std::array<long long, 3> optimal;
};

Networks build_networks() {
    Networks nets{figure3_networks(), {}, {}};
    const std::array<std::vector<int>, 3> expected = {
        std::vector<int>{0, 4, 3, 2, 1},
        std::vector<int>{0, 1, 3, 2, 1},
        std::vector<int>{0, 2, 1, 2, 1},
    };
    for (size_t i = 0; i < 3; ++i) {
        nets.counts[i] = progeny_counts(nets.g[i]);
        require(nets.counts[i] == expected[i],
                "network " + std::to_string(i) + " has an unexpected progeny profile");
        nets.optimal[i] = optimal_sum(nets.g[i], 2);
    }
    // Each hiding move must actually produce the target network, possibly
    // after the documented relabeling.
    for (const HidingMove& mv : kMoves) {
        const Dag manipulated = hide_all_out_edges(nets.g[0], mv.manipulator);
        require(relabel(manipulated, mv.sigma) == nets.g[size_t(mv.target)],
                "hiding move by agent " + std::to_string(mv.manipulator) +
                    " does not reach its target network");
        require(mv.sigma[size_t(mv.manipulator)] == mv.image, "relabeling image mismatch");
    }
    return nets;
}

Rat ratio_for(const std::vector<int>& counts, long long optimal,
              const std::array<Rat, 4>& x) {
    Rat num = 0;
    for (int i = 1; i <= 4; ++i) num += Rat(counts[size_t(i)]) * x[size_t(i) - 1];
    return num / Rat(optimal);
}

}  // namespace

bool certificate_feasible(const std::array<Rat, 4>& x_chain,
                          const std::array<Rat, 4>& x_hide21,
                          const std::array<Rat, 4>& x_hide32, std::string* why) {
    const std::array<const std::array<Rat, 4>*, 3> xs = {&x_chain, &x_hide21,
                                                         &x_hide32};
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    for (size_t gidx = 0; gidx < 3; ++gidx) {
        Rat sum = 0;
        for (const Rat& v : *xs[gidx]) {
            if (v < 0 || v > 1) return fail("a marginal leaves [0,1]");
            sum += v;
        }
        if (sum > 2) return fail("marginals on one network sum beyond 2");
    }
    for (const HidingMove& mv : kMoves) {
        const Rat& honest = x_chain[size_t(mv.manipulator) - 1];
        const Rat& deviant = (*xs[size_t(mv.target)])[size_t(mv.image) - 1];
        if (deviant > honest)
            return fail("agent " + std::to_string(mv.manipulator) +
                        " profits by hiding (gets the image of agent " +
                        std::to_string(mv.image) + ")");
    }
    return true;
}

Rat certificate_min_ratio(const std::array<Rat, 4>& x_chain,
                          const std::array<Rat, 4>& x_hide21,
                          const std::array<Rat, 4>& x_hide32) {
    const Networks nets = build_networks();
    const std::array<const std::array<Rat, 4>*, 3> xs = {&x_chain, &x_hide21,
                                                         &x_hide32};
    Rat best;
    for (size_t i = 0; i < 3; ++i) {
        const Rat r = ratio_for(nets.counts[i], nets.optimal[i], *xs[i]);
        if (i == 0 || r < best) best = r;
    }
    return best;
}

UpperBoundCertificate verify_upper_bound() {
    const Networks nets = build_networks();

    UpperBoundCertificate cert;
    cert.x_chain = {Rat(2, 3), Rat(17, 27), Rat(19, 27), Rat(0)};
    cert.x_hide21 = {Rat(0), Rat(17, 27), Rat(1), Rat(10, 27)};
    cert.x_hide32 = {Rat(19, 27), Rat(16, 27), Rat(19, 27), Rat(0)};

    std::string why;
    require(certificate_feasible(cert.x_chain, cert.x_hide21, cert.x_hide32, &why),
            "known assignment is infeasible: " + why);

    const std::array<const std::array<Rat, 4>*, 3> xs = {&cert.x_chain, &cert.x_hide21,
                                                         &cert.x_hide32};
    for (size_t i = 0; i < 3; ++i)
        cert.ratios[i] = ratio_for(nets.counts[i], nets.optimal[i], *xs[i]);
    cert.min_ratio = *std::min_element(cert.ratios.begin(), cert.ratios.end());
    require(cert.min_ratio == Rat(23, 27),
            "known assignment achieves " + rat_to_string(cert.min_ratio) +
                ", expected 23/27");

    // Independent check that nothing beats 23/27: maximize t subject to the
    // same constraints, as a 13-variable LP [t, x^chain, x^tail, x^mid].
    const size_t nv = 13;
    std::vector<std::vector<Rat>> A;
    std::vector<Rat> b;
    auto var = [](size_t gidx, int agent) { return 1 + gidx * 4 + size_t(agent) - 1; };

    for (size_t gidx = 0; gidx < 3; ++gidx) {  // opt*t - sum_i P(i)*x_i <= 0
        std::vector<Rat> row(nv, Rat(0));
        row[0] = Rat(nets.optimal[gidx]);
        for (int i = 1; i <= 4; ++i) row[var(gidx, i)] = -Rat(nets.counts[gidx][size_t(i)]);
        A.push_back(std::move(row));
        b.push_back(Rat(0));
    }
    for (const HidingMove& mv : kMoves) {  // x_image^target - x_manipulator^chain <= 0
        std::vector<Rat> row(nv, Rat(0));
        row[var(size_t(mv.target), mv.image)] = Rat(1);
        row[var(0, mv.manipulator)] -= Rat(1);
        A.push_back(std::move(row));
        b.push_back(Rat(0));
    }
    for (size_t gidx = 0; gidx < 3; ++gidx) {  // sum_i x_i^g <= 2
        std::vector<Rat> row(nv, Rat(0));
        for (int i = 1; i <= 4; ++i) row[var(gidx, i)] = Rat(1);
        A.push_back(std::move(row));
        b.push_back(Rat(2));
    }
    for (size_t j = 1; j < nv; ++j) {  // x <= 1
        std::vector<Rat> row(nv, Rat(0));
        row[j] = Rat(1);
        A.push_back(std::move(row));
        b.push_back(Rat(1));
    }
    std::vector<Rat> c(nv, Rat(0));
    c[0] = Rat(1);

    const LpSolution sol = solve_lp(A, b, c);
    require(sol.status == LpStatus::Optimal, "upper-bound LP did not solve");
    cert.lp_optimum = sol.objective;
    require(cert.lp_optimum == Rat(23, 27),
            "LP optimum is " + rat_to_string(cert.lp_optimum) + ", expected 23/27");
    return cert;
}

}  // namespace dagsel
