#include "subd/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>

namespace subd {

bool is_valid_var_name(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (size_t i = 1; i < s.size(); ++i) {
        char c = s[i];
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
    }
    return s != "true" && s != "false";
}

static FormulaPtr make_node(FKind k, VarName v, FormulaPtr l, FormulaPtr r) {
    auto n = std::make_shared<Formula>();
    n->kind = k;
    n->var = std::move(v);
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

FormulaPtr f_true() {
    static const FormulaPtr t = make_node(FKind::True, {}, nullptr, nullptr);
    return t;
}

FormulaPtr f_false() {
    static const FormulaPtr f = make_node(FKind::False, {}, nullptr, nullptr);
    return f;
}

FormulaPtr f_var(const VarName& name) {
    if (!is_valid_var_name(name))
        throw std::invalid_argument("invalid variable name: '" + name + "'");
    return make_node(FKind::Var, name, nullptr, nullptr);
}

FormulaPtr f_not(FormulaPtr a) { return make_node(FKind::Not, {}, std::move(a), nullptr); }
FormulaPtr f_and(FormulaPtr a, FormulaPtr b) { return make_node(FKind::And, {}, std::move(a), std::move(b)); }
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) { return make_node(FKind::Or, {}, std::move(a), std::move(b)); }
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) { return make_node(FKind::Implies, {}, std::move(a), std::move(b)); }
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) { return make_node(FKind::Iff, {}, std::move(a), std::move(b)); }
FormulaPtr f_diamond(FormulaPtr a) { return make_node(FKind::DiamondD, {}, std::move(a), nullptr); }
FormulaPtr f_box(FormulaPtr a) { return make_node(FKind::BoxD, {}, std::move(a), nullptr); }

FormulaPtr f_always(FormulaPtr a) { return f_and(a, f_box(a)); }

FormulaPtr big_and(const std::vector<FormulaPtr>& fs) {
    if (fs.empty()) return f_true();
    FormulaPtr acc = fs[0];
    for (size_t i = 1; i < fs.size(); ++i) acc = f_and(acc, fs[i]);
    return acc;
}

FormulaPtr big_or(const std::vector<FormulaPtr>& fs) {
    if (fs.empty()) return f_false();
    FormulaPtr acc = fs[0];
    for (size_t i = 1; i < fs.size(); ++i) acc = f_or(acc, fs[i]);
    return acc;
}

FormulaPtr exactly_one_of(const std::vector<VarName>& vars) {
    if (vars.empty()) throw std::invalid_argument("exactly_one_of: empty variable set");
    {
        std::set<VarName> seen;
        for (const auto& v : vars)
            if (!seen.insert(v).second)
                throw std::invalid_argument("exactly_one_of: duplicate variable '" + v + "'");
    }
    const size_t n = vars.size();
    std::vector<FormulaPtr> neg(n);
    for (size_t i = 0; i < n; ++i) neg[i] = f_not(f_var(vars[i]));

    // prefix[i] = ~x_0 & ... & ~x_{i-1}; suffix[i] = ~x_i & ... & ~x_{n-1}.
    // Shared between disjuncts, so the tree stays linear in |vars|.
    std::vector<FormulaPtr> prefix(n + 1), suffix(n + 1);
    prefix[0] = nullptr;
    for (size_t i = 0; i < n; ++i)
        prefix[i + 1] = prefix[i] ? f_and(prefix[i], neg[i]) : neg[i];
    suffix[n] = nullptr;
    for (size_t i = n; i-- > 0;)
        suffix[i] = suffix[i + 1] ? f_and(neg[i], suffix[i + 1]) : neg[i];

    std::vector<FormulaPtr> disjuncts;
    disjuncts.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        FormulaPtr others;
        if (prefix[i] && suffix[i + 1]) others = f_and(prefix[i], suffix[i + 1]);
        else if (prefix[i]) others = prefix[i];
        else if (suffix[i + 1]) others = suffix[i + 1];
        disjuncts.push_back(others ? f_and(f_var(vars[i]), others) : f_var(vars[i]));
    }
    return big_or(disjuncts);
}

// ---------------------------------------------------------------------------
// Lexer / parser

namespace {

enum class Tok {
    Ident, True, False, Not, And, Or, Implies, Iff,
    Diamond, Box, Always, LParen, RParen, End,
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : src_(text) { advance(); }

    const Token& peek() const { return cur_; }

    Token next() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_ws_and_comments();
        cur_.line = line_;
        cur_.col = col_;
        if (pos_ >= src_.size()) {
            cur_.kind = Tok::End;
            cur_.text = "<end>";
            return;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (pos_ < src_.size()) {
                char d = src_[pos_];
                if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'') {
                    id += d;
                    take();
                } else {
                    break;
                }
            }
            if (id == "true") { cur_.kind = Tok::True; }
            else if (id == "false") { cur_.kind = Tok::False; }
            else { cur_.kind = Tok::Ident; }
            cur_.text = id;
            return;
        }
        switch (c) {
            case '~': take(); cur_.kind = Tok::Not; cur_.text = "~"; return;
            case '&': take(); cur_.kind = Tok::And; cur_.text = "&"; return;
            case '|': take(); cur_.kind = Tok::Or; cur_.text = "|"; return;
            case '(': take(); cur_.kind = Tok::LParen; cur_.text = "("; return;
            case ')': take(); cur_.kind = Tok::RParen; cur_.text = ")"; return;
            case '-':
                take();
                if (pos_ < src_.size() && src_[pos_] == '>') { take(); cur_.kind = Tok::Implies; cur_.text = "->"; return; }
                fail("expected '->'");
            case '<':
                take();
                if (pos_ < src_.size() && src_[pos_] == '-') {
                    take();
                    if (pos_ < src_.size() && src_[pos_] == '>') { take(); cur_.kind = Tok::Iff; cur_.text = "<->"; return; }
                    fail("expected '<->'");
                }
                if (pos_ < src_.size() && src_[pos_] == 'D') {
                    take();
                    if (pos_ < src_.size() && src_[pos_] == '>') { take(); cur_.kind = Tok::Diamond; cur_.text = "<D>"; return; }
                    fail("expected '<D>'");
                }
                fail("expected '<->' or '<D>'");
            case '[':
                take();
                if (pos_ < src_.size() && (src_[pos_] == 'D' || src_[pos_] == 'G')) {
                    char op = src_[pos_];
                    take();
                    if (pos_ < src_.size() && src_[pos_] == ']') {
                        take();
                        cur_.kind = op == 'D' ? Tok::Box : Tok::Always;
                        cur_.text = op == 'D' ? "[D]" : "[G]";
                        return;
                    }
                }
                fail("expected '[D]' or '[G]'");
            default:
                fail(std::string("unknown token starting with '") + c + "'");
        }
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, col_);
    }

    void take() {
        if (src_[pos_] == '\n') { ++line_; col_ = 1; }
        else { ++col_; }
        ++pos_;
    }

    void skip_ws_and_comments() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') take();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                take();
            } else {
                break;
            }
        }
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token cur_;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    FormulaPtr parse() {
        FormulaPtr f = parse_iff();
        const Token& t = lex_.peek();
        if (t.kind != Tok::End)
            throw ParseError("unexpected token '" + t.text + "'", t.line, t.col);
        return f;
    }

private:
    // iff := imp ( "<->" imp )*      (left-associative)
    FormulaPtr parse_iff() {
        FormulaPtr f = parse_imp();
        while (lex_.peek().kind == Tok::Iff) {
            lex_.next();
            f = f_iff(f, parse_imp());
        }
        return f;
    }

    // imp := or ( "->" imp )?        (right-associative)
    FormulaPtr parse_imp() {
        FormulaPtr f = parse_or();
        if (lex_.peek().kind == Tok::Implies) {
            lex_.next();
            return f_implies(f, parse_imp());
        }
        return f;
    }

    FormulaPtr parse_or() {
        FormulaPtr f = parse_and();
        while (lex_.peek().kind == Tok::Or) {
            lex_.next();
            f = f_or(f, parse_and());
        }
        return f;
    }

    FormulaPtr parse_and() {
        FormulaPtr f = parse_unary();
        while (lex_.peek().kind == Tok::And) {
            lex_.next();
            f = f_and(f, parse_unary());
        }
        return f;
    }

    FormulaPtr parse_unary() {
        const Token t = lex_.peek();
        switch (t.kind) {
            case Tok::Not: lex_.next(); return f_not(parse_unary());
            case Tok::Diamond: lex_.next(); return f_diamond(parse_unary());
            case Tok::Box: lex_.next(); return f_box(parse_unary());
            case Tok::Always: lex_.next(); return f_always(parse_unary());
            default: return parse_atom();
        }
    }

    FormulaPtr parse_atom() {
        Token t = lex_.next();
        switch (t.kind) {
            case Tok::True: return f_true();
            case Tok::False: return f_false();
            case Tok::Ident: return f_var(t.text);
            case Tok::LParen: {
                FormulaPtr f = parse_iff();
                Token r = lex_.next();
                if (r.kind != Tok::RParen)
                    throw ParseError("expected ')', got '" + r.text + "'", r.line, r.col);
                return f;
            }
            default:
                throw ParseError("expected formula, got '" + t.text + "'", t.line, t.col);
        }
    }

    Lexer lex_;
};

// Precedence levels used by the printer; higher binds tighter.
int prec(FKind k) {
    switch (k) {
        case FKind::Iff: return 1;
        case FKind::Implies: return 2;
        case FKind::Or: return 3;
        case FKind::And: return 4;
        case FKind::Not:
        case FKind::DiamondD:
        case FKind::BoxD: return 5;
        default: return 6;
    }
}

void print_rec(const FormulaPtr& f, std::ostream& os, int min_prec) {
    const int p = prec(f->kind);
    const bool parens = p < min_prec;
    if (parens) os << '(';
    switch (f->kind) {
        case FKind::True: os << "true"; break;
        case FKind::False: os << "false"; break;
        case FKind::Var: os << f->var; break;
        case FKind::Not:
            os << '~';
            print_rec(f->lhs, os, 5);
            break;
        case FKind::DiamondD:
            os << "<D> ";
            print_rec(f->lhs, os, 5);
            break;
        case FKind::BoxD:
            os << "[D] ";
            print_rec(f->lhs, os, 5);
            break;
        case FKind::And:
            print_rec(f->lhs, os, 4);
            os << " & ";
            print_rec(f->rhs, os, 5);
            break;
        case FKind::Or:
            print_rec(f->lhs, os, 3);
            os << " | ";
            print_rec(f->rhs, os, 4);
            break;
        case FKind::Implies:
            // right-associative: the right child may be another implication
            print_rec(f->lhs, os, 3);
            os << " -> ";
            print_rec(f->rhs, os, 2);
            break;
        case FKind::Iff:
            print_rec(f->lhs, os, 1);
            os << " <-> ";
            print_rec(f->rhs, os, 2);
            break;
    }
    if (parens) os << ')';
}

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
    Parser p(text);
    return p.parse();
}

std::string print_formula(const FormulaPtr& f) {
    std::ostringstream os;
    print_rec(f, os, 0);
    return os.str();
}

// ---------------------------------------------------------------------------
// Structural identity

namespace {

struct NodeKey {
    FKind kind;
    std::string var;
    int lhs;
    int rhs;
    bool operator==(const NodeKey& o) const {
        return kind == o.kind && lhs == o.lhs && rhs == o.rhs && var == o.var;
    }
};

struct NodeKeyHash {
    size_t operator()(const NodeKey& k) const {
        size_t h = std::hash<int>()(static_cast<int>(k.kind));
        h = h * 1000003u ^ std::hash<std::string>()(k.var);
        h = h * 1000003u ^ std::hash<int>()(k.lhs);
        h = h * 1000003u ^ std::hash<int>()(k.rhs);
        return h;
    }
};

// Iterative postorder over the pointer DAG; visited pointers are walked once
// and structurally equal subtrees share one id.
struct Indexer {
    std::unordered_map<const Formula*, int> by_ptr;
    std::unordered_map<NodeKey, int, NodeKeyHash> by_key;
    SubformulaIndex out;

    int run(const FormulaPtr& root) {
        struct Item {
            FormulaPtr node;
            bool expanded;
        };
        std::vector<Item> stack;
        stack.push_back({root, false});
        while (!stack.empty()) {
            Item it = stack.back();
            stack.pop_back();
            const Formula* raw = it.node.get();
            if (by_ptr.count(raw)) continue;
            if (!it.expanded) {
                stack.push_back({it.node, true});
                if (it.node->rhs && !by_ptr.count(it.node->rhs.get()))
                    stack.push_back({it.node->rhs, false});
                if (it.node->lhs && !by_ptr.count(it.node->lhs.get()))
                    stack.push_back({it.node->lhs, false});
                continue;
            }
            NodeKey key{it.node->kind, it.node->var,
                        it.node->lhs ? by_ptr.at(it.node->lhs.get()) : -1,
                        it.node->rhs ? by_ptr.at(it.node->rhs.get()) : -1};
            auto found = by_key.find(key);
            int id;
            if (found != by_key.end()) {
                id = found->second;
            } else {
                id = static_cast<int>(out.nodes.size());
                out.nodes.push_back(it.node);
                out.lhs_id.push_back(key.lhs);
                out.rhs_id.push_back(key.rhs);
                by_key.emplace(key, id);
            }
            by_ptr.emplace(raw, id);
        }
        return by_ptr.at(root.get());
    }
};

}  // namespace

SubformulaIndex index_subformulas(const FormulaPtr& f) {
    Indexer ix;
    int root = ix.run(f);
    ix.out.root = root;
    return ix.out;
}

std::vector<FormulaPtr> subformulas(const FormulaPtr& f) {
    return index_subformulas(f).nodes;
}

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a.get() == b.get()) return true;
    Indexer ix;
    int ia = ix.run(a);
    int ib = ix.run(b);
    return ia == ib;
}

std::vector<VarName> formula_vars(const FormulaPtr& f) {
    std::set<VarName> vars;
    for (const auto& n : subformulas(f))
        if (n->kind == FKind::Var) vars.insert(n->var);
    return {vars.begin(), vars.end()};
}

}  // namespace subd
