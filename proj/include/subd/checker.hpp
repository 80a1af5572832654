#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "subd/formula.hpp"
#include "subd/model.hpp"

namespace subd {

struct CheckOptions {
    bool parallel = true;     // use OpenMP across intervals when available
    bool keep_table = false;  // retain the full (subformula, interval) table
};

// Truth table of every subformula over every interval of the model.
// Interval order matches all_intervals(N): by (length, left endpoint).
struct CheckResult {
    bool value = false;
    SubformulaIndex index;
    std::vector<Interval> intervals;
    std::vector<std::vector<uint8_t>> table;  // table[sub_id][interval_idx]

    bool at(int sub_id, const Interval& i) const;
};

// Truth value of f at interval i under the rules of the sub-interval
// fragment: <D>g holds iff some proper sub-interval satisfies g.
// Evaluates bottom-up per subformula over interval tables; work is
// O(|subformulas| * N^2) with the per-length recurrence
//   dia[a,b] = g[a+1,b] | g[a,b-1] | dia[a+1,b] | dia[a,b-1].
bool check(const IntervalModel& m, const Interval& i, const FormulaPtr& f,
           const CheckOptions& opts = {});

CheckResult check_full(const IntervalModel& m, const Interval& i, const FormulaPtr& f,
                       const CheckOptions& opts = {});

// Reference implementation: direct recursion with no memoization.
// Exponential in modal depth; intended for small models only.
bool check_naive(const IntervalModel& m, const Interval& i, const FormulaPtr& f);

}  // namespace subd
