#include "dagsel/influential.hpp"

#include <algorithm>

namespace dagsel {

bool InfluentialSet::contains(int i) const {
    return std::find(members.begin(), members.end(), i) != members.end();
}

namespace {

// Members of both sets discovered with one rank probe per agent: hide all of
// E_i, recount progenies, count the agents still outranking i. Hiding E_i
// never changes i's own progeny (her followers keep following her), which is
// why cnt[i] below is valid for i too.
InfluentialPair compute_sets(const Dag& g) {
    const std::vector<int> counts = progeny_counts(g);
    InfluentialPair result;
    result.s1.k = 1;
    result.s2.k = 2;
    std::vector<int> cnt;
    for (int i = 1; i <= g.n(); ++i) {
        const std::vector<int>* c = &counts;
        if (g.out_degree(i) > 0) {
            detail::progeny_counts_into(g, i, cnt);
            c = &cnt;
        }
        int superiors = 0;
        for (int j = 1; j <= g.n() && superiors < 2; ++j)
            if (j != i && outranks(*c, j, i)) ++superiors;
        if (superiors < 1) result.s1.members.push_back(i);
        if (superiors < 2) result.s2.members.push_back(i);
    }
    auto by_original_rank = [&](int a, int b) { return outranks(counts, a, b); };
    std::sort(result.s1.members.begin(), result.s1.members.end(), by_original_rank);
    std::sort(result.s2.members.begin(), result.s2.members.end(), by_original_rank);
    return result;
}

}  // namespace

InfluentialPair influential_sets(const Dag& g) { return compute_sets(g); }

InfluentialSet influential_set(const Dag& g, int k) {
    if (k != 1 && k != 2)
        throw UnsupportedK("k-influential sets are only defined here for k in {1,2}, got k=" +
                           std::to_string(k));
    InfluentialPair p = compute_sets(g);
    return k == 1 ? std::move(p.s1) : std::move(p.s2);
}

bool StructureReport::all_passed() const {
    for (const StructureCheck& c : checks)
        if (!c.passed) return false;
    return true;
}

namespace {

std::string agents_str(const std::vector<int>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + "]";
}

void add_check(StructureReport& r, std::string name, bool ok, std::string detail) {
    r.checks.push_back({std::move(name), ok, std::move(detail)});
}

// i_{t+1} in progeny(i_t)\{i_t} for t in [first, last); reports the first
// broken link.
void check_chain(StructureReport& r, const ProgenyTable& table,
                 const std::vector<int>& m, size_t first, size_t last,
                 const std::string& name) {
    for (size_t t = first; t + 1 <= last && t + 1 < m.size(); ++t) {
        if (!table.contains(m[t], m[t + 1]) || m[t] == m[t + 1]) {
            add_check(r, name, false,
                      "agent " + std::to_string(m[t + 1]) + " does not follow agent " +
                          std::to_string(m[t]));
            return;
        }
    }
    add_check(r, name, true, "");
}

}  // namespace

StructureReport check_structure(const Dag& g, const InfluentialSet& s) {
    StructureReport r;
    r.k = s.k;
    const ProgenyTable table(g);
    const std::vector<int> counts = progeny_counts(g);
    const RankingSequence rank = ranking(g);
    const std::vector<int>& m = s.members;

    {
        // Membership order must follow the original graph's ranking.
        bool ordered = true;
        for (size_t t = 0; t + 1 < m.size(); ++t)
            if (!outranks(counts, m[t], m[t + 1])) ordered = false;
        add_check(r, "ordered_by_rank", ordered, ordered ? "" : agents_str(m));
    }

    if (s.k == 1) {
        add_check(r, "first_is_top", !m.empty() && m[0] == rank.order[0],
                  m.empty() ? "set is empty" : "first member " + std::to_string(m[0]));
        check_chain(r, table, m, 0, m.empty() ? 0 : m.size() - 1, "follower_chain");
        bool half = true;
        std::string bad;
        for (size_t t = 1; t < m.size(); ++t)
            if (2 * counts[size_t(m[t])] < counts[size_t(m[0])]) {
                half = false;
                bad = "agent " + std::to_string(m[t]);
                break;
            }
        add_check(r, "half_progeny_bound", half, bad);
        return r;
    }

    // k == 2 from here on.
    const InfluentialSet s1 = influential_set(g, 1);
    {
        bool contained = true;
        std::string bad;
        for (int i : s1.members)
            if (!s.contains(i)) {
                contained = false;
                bad = "agent " + std::to_string(i) + " in k=1 set only";
                break;
            }
        add_check(r, "contains_k1_set", contained, bad);
    }
    if (g.n() >= 2) {
        const int top1 = rank.order[0], top2 = rank.order[1];
        add_check(r, "contains_top_two", s.contains(top1) && s.contains(top2),
                  "top two are " + std::to_string(top1) + "," + std::to_string(top2));
        if (table.contains(top1, top2)) {
            // Runner-up follows the champion: the whole set is one chain.
            bool heads = m.size() >= 2 && m[0] == top1 && m[1] == top2;
            add_check(r, "heads_are_top_two", heads, agents_str(m));
            check_chain(r, table, m, 0, m.empty() ? 0 : m.size() - 1, "follower_chain");
        } else {
            // Two separate heads; the third member may attach to either one,
            // and the chain condition binds from the third member onward.
            bool heads = m.size() >= 2 && m[0] == top1 && m[1] == top2;
            add_check(r, "heads_are_top_two", heads, agents_str(m));
            if (m.size() >= 3) {
                bool attached = table.contains(m[0], m[2]) || table.contains(m[1], m[2]);
                add_check(r, "third_attaches_to_a_head", attached,
                          "agent " + std::to_string(m[2]));
                check_chain(r, table, m, 2, m.size() - 1, "tail_follower_chain");
            }
        }
    }
    return r;
}

}  // namespace dagsel
