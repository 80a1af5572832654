#include "subd/checker.hpp"

#include <algorithm>
#include <stdexcept>

namespace subd {

namespace {

// Index of [a, b] in the (length, left endpoint) enumeration of all
// intervals over n points: intervals of length l start at offset
// l*n - l(l-1)/2 and are ordered by a.
inline int interval_index(int n, int a, int b) {
    const int l = b - a;
    return l * n - l * (l - 1) / 2 + a;
}

}  // namespace

bool CheckResult::at(int sub_id, const Interval& i) const {
    const int n = intervals.empty() ? 0 : (intervals.back().b + 1);
    return table.at(sub_id).at(interval_index(n, i.a, i.b)) != 0;
}

CheckResult check_full(const IntervalModel& m, const Interval& i, const FormulaPtr& f,
                       const CheckOptions& opts) {
    m.require_valid(i);
    const int n = m.points();
    const int total = n * (n + 1) / 2;

    CheckResult res;
    res.index = index_subformulas(f);
    res.intervals = all_intervals(n);
    const int nsubs = res.index.size();
    res.table.assign(nsubs, {});

    // Label lookups go through a dense snapshot so the hot loops stay
    // allocation-free.
    std::vector<std::vector<uint8_t>> var_table;  // one row per Var subformula
    const bool par = opts.parallel;

    for (int s = 0; s < nsubs; ++s) {
        const Formula& node = *res.index.nodes[s];
        std::vector<uint8_t>& row = res.table[s];
        row.assign(total, 0);
        const uint8_t* lhs = node.lhs ? res.table[res.index.lhs_id[s]].data() : nullptr;
        const uint8_t* rhs = node.rhs ? res.table[res.index.rhs_id[s]].data() : nullptr;

        switch (node.kind) {
            case FKind::True:
                std::fill(row.begin(), row.end(), 1);
                break;
            case FKind::False:
                break;
            case FKind::Var: {
                // sparse labeling: only touch the keyed intervals
                for (const auto& [iv, vars] : m.labeling())
                    if (vars.count(node.var)) row[interval_index(n, iv.a, iv.b)] = 1;
                break;
            }
            case FKind::Not: {
#pragma omp parallel for schedule(static) if (par)
                for (int t = 0; t < total; ++t) row[t] = !lhs[t];
                break;
            }
            case FKind::And: {
#pragma omp parallel for schedule(static) if (par)
                for (int t = 0; t < total; ++t) row[t] = lhs[t] & rhs[t];
                break;
            }
            case FKind::Or: {
#pragma omp parallel for schedule(static) if (par)
                for (int t = 0; t < total; ++t) row[t] = lhs[t] | rhs[t];
                break;
            }
            case FKind::Implies: {
#pragma omp parallel for schedule(static) if (par)
                for (int t = 0; t < total; ++t) row[t] = (!lhs[t]) | rhs[t];
                break;
            }
            case FKind::Iff: {
#pragma omp parallel for schedule(static) if (par)
                for (int t = 0; t < total; ++t) row[t] = lhs[t] == rhs[t];
                break;
            }
            case FKind::DiamondD: {
                // wavefront by length; every proper sub-interval of [a, b]
                // lies under [a+1, b] or [a, b-1]
                for (int l = 1; l < n; ++l) {
                    const int off = interval_index(n, 0, l);
                    const int offs = interval_index(n, 0, l - 1);  // length l-1
#pragma omp parallel for schedule(static) if (par)
                    for (int a = 0; a + l < n; ++a) {
                        const int left = offs + a + 1;  // [a+1, b]
                        const int right = offs + a;     // [a, b-1]
                        row[off + a] = lhs[left] | lhs[right] | row[left] | row[right];
                    }
                }
                break;
            }
            case FKind::BoxD: {
                for (int a = 0; a < n; ++a) row[a] = 1;  // leaves: vacuous
                for (int l = 1; l < n; ++l) {
                    const int off = interval_index(n, 0, l);
                    const int offs = interval_index(n, 0, l - 1);
#pragma omp parallel for schedule(static) if (par)
                    for (int a = 0; a + l < n; ++a) {
                        const int left = offs + a + 1;
                        const int right = offs + a;
                        row[off + a] = lhs[left] & lhs[right] & row[left] & row[right];
                    }
                }
                break;
            }
        }
    }
    (void)var_table;

    res.value = res.table[res.index.root][interval_index(n, i.a, i.b)] != 0;
    if (!opts.keep_table) {
        // keep only the root row to stay small; callers wanting the full
        // table pass keep_table = true
        std::vector<std::vector<uint8_t>> root_only(1, std::move(res.table[res.index.root]));
        res.table.clear();
        res.table = std::move(root_only);
        SubformulaIndex ix;
        ix.nodes = {res.index.nodes[res.index.root]};
        ix.lhs_id = {-1};
        ix.rhs_id = {-1};
        ix.root = 0;
        res.index = std::move(ix);
    }
    return res;
}

bool check(const IntervalModel& m, const Interval& i, const FormulaPtr& f,
           const CheckOptions& opts) {
    CheckOptions o = opts;
    o.keep_table = false;
    return check_full(m, i, f, o).value;
}

bool check_naive(const IntervalModel& m, const Interval& i, const FormulaPtr& f) {
    m.require_valid(i);
    switch (f->kind) {
        case FKind::True: return true;
        case FKind::False: return false;
        case FKind::Var: return m.has_label(i, f->var);
        case FKind::Not: return !check_naive(m, i, f->lhs);
        case FKind::And: return check_naive(m, i, f->lhs) && check_naive(m, i, f->rhs);
        case FKind::Or: return check_naive(m, i, f->lhs) || check_naive(m, i, f->rhs);
        case FKind::Implies: return !check_naive(m, i, f->lhs) || check_naive(m, i, f->rhs);
        case FKind::Iff: return check_naive(m, i, f->lhs) == check_naive(m, i, f->rhs);
        case FKind::DiamondD: {
            for (const Interval& j : proper_subintervals(i))
                if (check_naive(m, j, f->lhs)) return true;
            return false;
        }
        case FKind::BoxD: {
            for (const Interval& j : proper_subintervals(i))
                if (!check_naive(m, j, f->lhs)) return false;
            return true;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace subd
