#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace subd {

// Propositional variable name: [A-Za-z_][A-Za-z0-9_']*
using VarName = std::string;

bool is_valid_var_name(const std::string& s);

enum class FKind {
    True,
    False,
    Var,
    Not,
    And,
    Or,
    Implies,
    Iff,
    DiamondD,
    BoxD,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable AST node. Subtrees are freely shared between formulas.
struct Formula {
    FKind kind;
    VarName var;       // Var only
    FormulaPtr lhs;    // unary child / left child
    FormulaPtr rhs;    // right child (binary only)
};

FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_var(const VarName& name);
FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b);
FormulaPtr f_diamond(FormulaPtr a);
FormulaPtr f_box(FormulaPtr a);

// [G]f is not a node of its own; it expands to f & [D]f at construction.
FormulaPtr f_always(FormulaPtr a);

// Conjunction/disjunction of a list, folded left. Empty list yields the unit
// (true for and, false for or); a single element is returned as-is.
FormulaPtr big_and(const std::vector<FormulaPtr>& fs);
FormulaPtr big_or(const std::vector<FormulaPtr>& fs);

// \/_{x in X} (x /\ /\_{x' != x} ~x'), disjuncts in input order.
// The inner conjunction is grouped as (negations before x) /\ (negations
// after x) so that those chains are shared across disjuncts.
FormulaPtr exactly_one_of(const std::vector<VarName>& vars);

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg), line(line_), column(col_) {}
};

FormulaPtr parse_formula(const std::string& text);
std::string print_formula(const FormulaPtr& f);

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);

// All distinct subformulas (deduplicated by structure), children before
// parents; the last element is the formula itself.
std::vector<FormulaPtr> subformulas(const FormulaPtr& f);

// Subformula index of a formula DAG: ids are assigned so that structurally
// equal subtrees get one id and every child id precedes its parent's.
struct SubformulaIndex {
    std::vector<FormulaPtr> nodes;           // representative per id
    std::vector<int> lhs_id;                 // -1 when absent
    std::vector<int> rhs_id;                 // -1 when absent
    int root = -1;
    int size() const { return static_cast<int>(nodes.size()); }
};

SubformulaIndex index_subformulas(const FormulaPtr& f);

// Variables occurring in f, sorted by name.
std::vector<VarName> formula_vars(const FormulaPtr& f);

}  // namespace subd
