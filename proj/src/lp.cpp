#include "dagsel/lp.hpp"

#include <cstddef>
#include <stdexcept>

namespace dagsel {

std::string rat_to_string(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

namespace {

// Dense tableau over columns [structural | slack | artificial | rhs] with one
// objective row appended. basis[i] names the variable owning row i.
struct Tableau {
    size_t rows = 0, cols = 0;  // constraint rows, total columns incl. rhs
    std::vector<std::vector<Rat>> t;
    std::vector<size_t> basis;

    Rat& at(size_t r, size_t c) { return t[r][c]; }
    size_t rhs() const { return cols - 1; }

    void pivot(size_t pr, size_t pc) {
        const Rat inv = Rat(1) / t[pr][pc];
        for (size_t c = 0; c < cols; ++c) t[pr][c] *= inv;
        for (size_t r = 0; r < t.size(); ++r) {
            if (r == pr || t[r][pc] == 0) continue;
            const Rat f = t[r][pc];
            for (size_t c = 0; c < cols; ++c) t[r][c] -= f * t[pr][c];
        }
        basis[pr] = pc;
    }

    // Primal simplex with Bland's rule on the objective row `obj` (a row
    // index into t), restricted to columns < limit. Returns false when the
    // problem is unbounded in the improving direction.
    bool run(size_t obj, size_t limit) {
        for (;;) {
            size_t enter = limit;
            for (size_t c = 0; c < limit; ++c)
                if (t[obj][c] < 0) {  // improving column, smallest index first
                    enter = c;
                    break;
                }
            if (enter == limit) return true;  // optimal
            size_t leave = rows;
            for (size_t r = 0; r < rows; ++r) {
                if (t[r][enter] <= 0) continue;
                if (leave == rows) {
                    leave = r;
                    continue;
                }
                const Rat lhs = t[r][rhs()] * t[leave][enter];
                const Rat rhs_v = t[leave][rhs()] * t[r][enter];
                if (lhs < rhs_v || (lhs == rhs_v && basis[r] < basis[leave])) leave = r;
            }
            if (leave == rows) return false;  // unbounded
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpSolution solve_lp(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
                    const std::vector<Rat>& c) {
    const size_t m = A.size(), n = c.size();
    if (b.size() != m) throw std::invalid_argument("lp: |b| != rows of A");
    for (const auto& row : A)
        if (row.size() != n) throw std::invalid_argument("lp: ragged row in A");

    // Count artificials: one per constraint with negative rhs (after negating
    // that row so the rhs becomes nonnegative, its slack points the wrong way).
    std::vector<char> negated(m, 0);
    size_t artificials = 0;
    for (size_t r = 0; r < m; ++r)
        if (b[r] < 0) {
            negated[r] = 1;
            ++artificials;
        }

    Tableau tab;
    tab.rows = m;
    tab.cols = n + m + artificials + 1;
    // rows 0..m-1: constraints; row m: phase-2 objective; row m+1: phase-1.
    tab.t.assign(m + 2, std::vector<Rat>(tab.cols, Rat(0)));
    tab.basis.assign(m, 0);

    size_t next_art = n + m;
    for (size_t r = 0; r < m; ++r) {
        const int sign = negated[r] ? -1 : 1;
        for (size_t j = 0; j < n; ++j) tab.at(r, j) = A[r][j] * sign;
        tab.at(r, n + r) = sign;         // slack
        tab.at(r, tab.rhs()) = b[r] * sign;
        if (negated[r]) {
            tab.at(r, next_art) = 1;
            tab.basis[r] = next_art++;
        } else {
            tab.basis[r] = n + r;
        }
    }

    const size_t obj2 = m, obj1 = m + 1;
    for (size_t j = 0; j < n; ++j) tab.at(obj2, j) = -c[j];

    if (artificials > 0) {
        // Phase 1: minimize the artificial sum. Its objective row starts as
        // minus the sum of the artificial-basis rows (pricing them out).
        for (size_t r = 0; r < m; ++r)
            if (negated[r])
                for (size_t c2 = 0; c2 < tab.cols; ++c2)
                    if (c2 < n + m || c2 == tab.rhs()) tab.at(obj1, c2) -= tab.at(r, c2);
        // Artificial columns are barred from re-entering (limit = n + m).
        if (!tab.run(obj1, n + m))
            throw std::logic_error("lp: phase 1 unbounded");  // cannot happen
        if (tab.at(obj1, tab.rhs()) != 0) return {LpStatus::Infeasible, Rat(0), {}};
        // Pivot any artificial still sitting (at zero) in the basis out of it.
        for (size_t r = 0; r < m; ++r) {
            if (tab.basis[r] < n + m) continue;
            size_t c2 = 0;
            while (c2 < n + m && tab.at(r, c2) == 0) ++c2;
            if (c2 < n + m) tab.pivot(r, c2);
            // An all-zero row is a redundant constraint; harmless to leave.
        }
    }

    if (!tab.run(obj2, n + m)) return {LpStatus::Unbounded, Rat(0), {}};

    LpSolution sol;
    sol.status = LpStatus::Optimal;
    sol.x.assign(n, Rat(0));
    for (size_t r = 0; r < m; ++r)
        if (tab.basis[r] < n) sol.x[tab.basis[r]] = tab.at(r, tab.rhs());
    sol.objective = Rat(0);
    for (size_t j = 0; j < n; ++j) sol.objective += c[j] * sol.x[j];
    return sol;
}

}  // namespace dagsel
