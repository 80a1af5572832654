#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subd/checker.hpp"
#include "subd/formula.hpp"
#include "subd/model.hpp"

namespace subd {

struct CnfError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Labeling constraints fixed before the search: (interval, variable) -> value.
class Pinning {
public:
    void pin(const Interval& i, const VarName& v, bool value) {
        auto [it, inserted] = pins_.emplace(std::make_pair(i, v), value);
        if (!inserted && it->second != value)
            throw CnfError("contradictory pins on " + to_string(i) + " / " + v);
    }
    const std::map<std::pair<Interval, VarName>, bool>& entries() const { return pins_; }
    bool empty() const { return pins_.empty(); }

private:
    std::map<std::pair<Interval, VarName>, bool> pins_;
};

// CNF with a variable map back to the encoded model. Clause literals are
// nonzero signed ints; variables are 1-based. Clauses live in a flat pool.
struct CnfInstance {
    int var_count = 0;
    std::vector<int> pool;               // concatenated clause literals
    std::vector<uint32_t> clause_start;  // clause c = pool[start[c] .. start[c+1])

    int points = 0;
    std::vector<VarName> vocabulary;                  // encode order
    std::map<std::pair<Interval, VarName>, int> assignment_var;
    std::map<std::pair<Interval, int>, int> definition_var;  // (interval, sub id)

    int clause_count() const { return static_cast<int>(clause_start.size()) - 1; }
    void add_clause(const std::vector<int>& lits);
};

// Tseitin encoding over N points: one assignment variable per
// (interval, vocabulary variable), one definition variable per
// (interval, subformula); <D>g at I is defined as the disjunction of g's
// definitions over the proper sub-intervals of I, [D]g as the conjunction.
// The root is asserted at [0, N-1]; pins become unit clauses.
CnfInstance encode(const FormulaPtr& f, int points, const Pinning& pins,
                   const std::vector<VarName>& vocabulary);

enum class SolveStatus { Sat, Unsat };

struct SolveResult {
    SolveStatus status = SolveStatus::Unsat;
    std::vector<int8_t> assignment;  // 1-based; +1 true, -1 false (total on SAT)

    bool sat() const { return status == SolveStatus::Sat; }
    bool value(int var) const { return assignment[var] > 0; }
};

// DPLL with two-watched-literal unit propagation. Branching is
// deterministic: lowest unassigned index first, true before false.
SolveResult solve(const CnfInstance& c);

// Model whose labeling matches the assignment restricted to the
// (interval, variable) pairs of the encoding.
IntervalModel decode(const SolveResult& r, const CnfInstance& c);

std::string export_dimacs(const CnfInstance& c);

// Accepts "v ..." lines or one literal per line; "c"/"s" lines are ignored;
// a 0 terminates. Returns a map var -> value.
std::map<int, bool> import_assignment(const std::string& text);

struct SatSearchResult {
    int points = 0;
    IntervalModel model{1};
};

// Smallest N in [n_min, n_max] admitting a model of f, with its decoded
// witness; nullopt when every size is UNSAT.
std::optional<SatSearchResult> sat_search(const FormulaPtr& f, int n_min, int n_max,
                                          const Pinning& pins,
                                          const std::vector<VarName>& vocabulary);

}  // namespace subd
