#include "subd/cnf.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace subd {

void CnfInstance::add_clause(const std::vector<int>& lits) {
    if (clause_start.empty()) clause_start.push_back(0);
    for (int l : lits) {
        if (l == 0 || std::abs(l) > var_count)
            throw CnfError("literal out of range: " + std::to_string(l));
        pool.push_back(l);
    }
    clause_start.push_back(static_cast<uint32_t>(pool.size()));
}

CnfInstance encode(const FormulaPtr& f, int points, const Pinning& pins,
                   const std::vector<VarName>& vocabulary) {
    if (points < 1) throw CnfError("encode: need at least one point");
    {
        std::set<VarName> vocab(vocabulary.begin(), vocabulary.end());
        if (vocab.size() != vocabulary.size())
            throw CnfError("encode: duplicate vocabulary entry");
        for (const auto& v : formula_vars(f))
            if (!vocab.count(v))
                throw CnfError("encode: formula variable '" + v + "' not in vocabulary");
    }

    CnfInstance c;
    c.points = points;
    c.vocabulary = vocabulary;
    c.clause_start.push_back(0);

    const std::vector<Interval> intervals = all_intervals(points);

    // assignment variables first (branching order: short intervals, then
    // vocabulary order), definition variables after
    for (const Interval& i : intervals)
        for (const VarName& v : vocabulary)
            c.assignment_var[{i, v}] = ++c.var_count;

    const SubformulaIndex ix = index_subformulas(f);
    for (const Interval& i : intervals)
        for (int s = 0; s < ix.size(); ++s)
            c.definition_var[{i, s}] = ++c.var_count;

    auto def = [&](const Interval& i, int s) { return c.definition_var.at({i, s}); };

    for (const Interval& i : intervals) {
        for (int s = 0; s < ix.size(); ++s) {
            const Formula& node = *ix.nodes[s];
            const int d = def(i, s);
            switch (node.kind) {
                case FKind::True:
                    c.add_clause({d});
                    break;
                case FKind::False:
                    c.add_clause({-d});
                    break;
                case FKind::Var: {
                    auto it = c.assignment_var.find({i, node.var});
                    if (it == c.assignment_var.end())
                        throw CnfError("encode: variable '" + node.var + "' not in vocabulary");
                    c.add_clause({-d, it->second});
                    c.add_clause({d, -it->second});
                    break;
                }
                case FKind::Not: {
                    const int a = def(i, ix.lhs_id[s]);
                    c.add_clause({-d, -a});
                    c.add_clause({d, a});
                    break;
                }
                case FKind::And: {
                    const int a = def(i, ix.lhs_id[s]);
                    const int b = def(i, ix.rhs_id[s]);
                    c.add_clause({-d, a});
                    c.add_clause({-d, b});
                    c.add_clause({d, -a, -b});
                    break;
                }
                case FKind::Or: {
                    const int a = def(i, ix.lhs_id[s]);
                    const int b = def(i, ix.rhs_id[s]);
                    c.add_clause({d, -a});
                    c.add_clause({d, -b});
                    c.add_clause({-d, a, b});
                    break;
                }
                case FKind::Implies: {
                    const int a = def(i, ix.lhs_id[s]);
                    const int b = def(i, ix.rhs_id[s]);
                    c.add_clause({d, a});
                    c.add_clause({d, -b});
                    c.add_clause({-d, -a, b});
                    break;
                }
                case FKind::Iff: {
                    const int a = def(i, ix.lhs_id[s]);
                    const int b = def(i, ix.rhs_id[s]);
                    c.add_clause({-d, -a, b});
                    c.add_clause({-d, a, -b});
                    c.add_clause({d, a, b});
                    c.add_clause({d, -a, -b});
                    break;
                }
                case FKind::DiamondD: {
                    const int g = ix.lhs_id[s];
                    std::vector<int> big{-d};
                    for (const Interval& j : proper_subintervals(i)) {
                        const int a = def(j, g);
                        c.add_clause({d, -a});
                        big.push_back(a);
                    }
                    c.add_clause(big);  // leaf: (-d) alone, i.e. false
                    break;
                }
                case FKind::BoxD: {
                    const int g = ix.lhs_id[s];
                    std::vector<int> big{d};
                    for (const Interval& j : proper_subintervals(i)) {
                        const int a = def(j, g);
                        c.add_clause({-d, a});
                        big.push_back(-a);
                    }
                    c.add_clause(big);  // leaf: (d) alone, i.e. true
                    break;
                }
            }
        }
    }

    c.add_clause({def({0, points - 1}, ix.root)});

    for (const auto& [key, value] : pins.entries()) {
        const auto& [iv, name] = key;
        if (!(0 <= iv.a && iv.a <= iv.b && iv.b < points))
            throw CnfError("pin on out-of-range interval " + to_string(iv));
        auto it = c.assignment_var.find({iv, name});
        if (it == c.assignment_var.end())
            throw CnfError("pin on variable '" + name + "' not in vocabulary");
        c.add_clause({value ? it->second : -it->second});
    }
    return c;
}

// ---------------------------------------------------------------------------
// DPLL

namespace {

struct Watcher {
    std::vector<std::vector<uint32_t>> lists;  // indexed by literal encoding

    static size_t slot(int lit, int var_count) {
        return static_cast<size_t>(lit > 0 ? lit : var_count - lit);
    }
};

}  // namespace

SolveResult solve(const CnfInstance& c) {
    SolveResult res;
    const int nv = c.var_count;
    std::vector<int8_t> assign(nv + 1, 0);

    // clause views
    const int nc = c.clause_count();
    auto clause_begin = [&](int cl) { return c.pool.data() + c.clause_start[cl]; };
    auto clause_size = [&](int cl) { return c.clause_start[cl + 1] - c.clause_start[cl]; };

    std::vector<int> w1(nc), w2(nc);  // watched literals per clause
    std::vector<std::vector<uint32_t>> watch(2 * (nv + 1));
    auto slot = [&](int lit) { return static_cast<size_t>(lit > 0 ? lit : nv - lit); };

    std::vector<int> trail;
    std::vector<int> trail_lim;  // decision level boundaries
    std::vector<int> units;
    size_t qhead = 0;

    auto lit_value = [&](int lit) -> int {
        int8_t v = assign[std::abs(lit)];
        if (v == 0) return 0;
        return (lit > 0) == (v > 0) ? 1 : -1;
    };

    auto enqueue = [&](int lit) -> bool {
        int v = lit_value(lit);
        if (v == 1) return true;
        if (v == -1) return false;
        assign[std::abs(lit)] = lit > 0 ? 1 : -1;
        trail.push_back(lit);
        return true;
    };

    for (int cl = 0; cl < nc; ++cl) {
        const uint32_t sz = clause_size(cl);
        if (sz == 0) {
            res.status = SolveStatus::Unsat;
            return res;
        }
        if (sz == 1) {
            units.push_back(clause_begin(cl)[0]);
            w1[cl] = w2[cl] = clause_begin(cl)[0];
            continue;
        }
        w1[cl] = clause_begin(cl)[0];
        w2[cl] = clause_begin(cl)[1];
        watch[slot(w1[cl])].push_back(cl);
        watch[slot(w2[cl])].push_back(cl);
    }

    for (int u : units)
        if (!enqueue(u)) {
            res.status = SolveStatus::Unsat;
            return res;
        }

    // propagate() returns false on conflict
    auto propagate = [&]() -> bool {
        while (qhead < trail.size()) {
            const int lit = trail[qhead++];
            const int flit = -lit;  // falsified literal
            std::vector<uint32_t>& wl = watch[slot(flit)];
            size_t keep = 0;
            bool conflict = false;
            for (size_t k = 0; k < wl.size(); ++k) {
                const uint32_t cl = wl[k];
                if (conflict) {
                    wl[keep++] = cl;
                    continue;
                }
                int other = (w1[cl] == flit) ? w2[cl] : w1[cl];
                if (lit_value(other) == 1) {
                    wl[keep++] = cl;
                    continue;
                }
                // look for a replacement watch
                const int* lits = clause_begin(cl);
                const uint32_t sz = clause_size(cl);
                int replacement = 0;
                for (uint32_t t = 0; t < sz; ++t) {
                    const int cand = lits[t];
                    if (cand == other || cand == flit) continue;
                    if (lit_value(cand) != -1) {
                        replacement = cand;
                        break;
                    }
                }
                if (replacement != 0) {
                    if (w1[cl] == flit) w1[cl] = replacement;
                    else w2[cl] = replacement;
                    watch[slot(replacement)].push_back(cl);
                    continue;  // dropped from this list
                }
                // unit or conflict
                wl[keep++] = cl;
                if (!enqueue(other)) conflict = true;
            }
            wl.resize(keep);
            if (conflict) return false;
        }
        return true;
    };

    auto backtrack = [&]() -> bool {
        // undo to the last decision whose 'true' branch we can flip
        while (!trail_lim.empty()) {
            const int lim = trail_lim.back();
            const int decision = trail[lim];
            for (size_t t = trail.size(); t-- > static_cast<size_t>(lim);)
                assign[std::abs(trail[t])] = 0;
            trail.resize(lim);
            trail_lim.pop_back();
            qhead = trail.size();
            if (decision > 0) {
                // tried true; now try false
                trail_lim.push_back(static_cast<int>(trail.size()));
                enqueue(-decision);
                return true;
            }
            // both branches exhausted at this level; keep unwinding
        }
        return false;
    };

    if (!propagate()) {
        res.status = SolveStatus::Unsat;
        return res;
    }

    int next_var = 1;
    for (;;) {
        while (next_var <= nv && assign[next_var] != 0) ++next_var;
        if (next_var > nv) {
            res.status = SolveStatus::Sat;
            res.assignment = assign;
            return res;
        }
        trail_lim.push_back(static_cast<int>(trail.size()));
        enqueue(next_var);  // true first
        while (!propagate()) {
            if (!backtrack()) {
                res.status = SolveStatus::Unsat;
                return res;
            }
        }
        next_var = 1;  // assignments may have been undone below next_var
    }
}

IntervalModel decode(const SolveResult& r, const CnfInstance& c) {
    if (!r.sat() || r.assignment.size() != static_cast<size_t>(c.var_count) + 1)
        throw CnfError("decode: assignment is not total for this instance");
    IntervalModel m(c.points);
    for (const auto& [key, var] : c.assignment_var)
        if (r.value(var)) m.add_label(key.first, key.second);
    return m;
}

std::string export_dimacs(const CnfInstance& c) {
    std::ostringstream os;
    os << "p cnf " << c.var_count << " " << c.clause_count() << "\n";
    for (int cl = 0; cl < c.clause_count(); ++cl) {
        for (uint32_t t = c.clause_start[cl]; t < c.clause_start[cl + 1]; ++t)
            os << c.pool[t] << " ";
        os << "0\n";
    }
    return os.str();
}

std::map<int, bool> import_assignment(const std::string& text) {
    std::map<int, bool> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "c" || first == "s") continue;
        if (first != "v") {
            // plain literal-per-line format
            ls.clear();
            ls.str(line);
        }
        long lit;
        while (ls >> lit) {
            if (lit == 0) return out;
            out[static_cast<int>(std::labs(lit))] = lit > 0;
        }
    }
    return out;
}

std::optional<SatSearchResult> sat_search(const FormulaPtr& f, int n_min, int n_max,
                                          const Pinning& pins,
                                          const std::vector<VarName>& vocabulary) {
    if (n_min < 1 || n_min > n_max) throw CnfError("sat_search: bad point range");
    for (int n = n_min; n <= n_max; ++n) {
        CnfInstance c = encode(f, n, pins, vocabulary);
        SolveResult r = solve(c);
        if (r.sat()) return SatSearchResult{n, decode(r, c)};
    }
    return std::nullopt;
}

}  // namespace subd
