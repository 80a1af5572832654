#include "subd/minsky.hpp"

#include <algorithm>
#include <sstream>

namespace subd {

bool MinskyMachine::is_state(const std::string& s) const {
    return std::find(states.begin(), states.end(), s) != states.end();
}

bool MinskyMachine::is_final(const std::string& s) const {
    return std::find(finals.begin(), finals.end(), s) != finals.end();
}

const RuleAction* MinskyMachine::rule_for(const std::string& state, bool c1_zero,
                                          bool c2_zero) const {
    RuleKey k{state, c1_zero ? ZeroTest::Z : ZeroTest::P,
              c2_zero ? ZeroTest::Z : ZeroTest::P};
    auto it = rules.find(k);
    return it == rules.end() ? nullptr : &it->second;
}

void MinskyMachine::validate() const {
    if (states.empty()) throw MachineError("machine has no states");
    {
        std::vector<std::string> sorted = states;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw MachineError("duplicate state name");
    }
    if (!is_state(initial)) throw MachineError("initial state '" + initial + "' not declared");
    for (const auto& f : finals)
        if (!is_state(f)) throw MachineError("final state '" + f + "' not declared");
    for (const auto& [key, act] : rules) {
        if (!is_state(key.state)) throw MachineError("rule from unknown state '" + key.state + "'");
        if (!is_state(act.next)) throw MachineError("rule to unknown state '" + act.next + "'");
        if (act.op1 == CounterOp::Dec && key.z1 == ZeroTest::Z)
            throw MachineError("rule decrements counter 1 under a Z test");
        if (act.op2 == CounterOp::Dec && key.z2 == ZeroTest::Z)
            throw MachineError("rule decrements counter 2 under a Z test");
    }
}

std::optional<MachineConfig> step(const MinskyMachine& m, const MachineConfig& cfg) {
    const RuleAction* act = m.rule_for(cfg.state, cfg.c1 == 0, cfg.c2 == 0);
    if (!act) return std::nullopt;
    auto apply = [](long v, CounterOp op) {
        switch (op) {
            case CounterOp::Inc: return v + 1;
            case CounterOp::Dec: return v - 1;
            default: return v;
        }
    };
    MachineConfig next{act->next, apply(cfg.c1, act->op1), apply(cfg.c2, act->op2)};
    if (next.c1 < 0 || next.c2 < 0)
        throw MachineError("step produced a negative counter");  // ruled out by validate()
    return next;
}

MachineRun run(const MinskyMachine& m, long max_steps) {
    if (max_steps < 0) throw MachineError("run: negative step bound");
    MachineRun r;
    MachineConfig cfg{m.initial, 0, 0};
    r.configs.push_back(cfg);
    r.max_counter = 0;
    for (long s = 0; ; ++s) {
        r.max_counter = std::max({r.max_counter, cfg.c1, cfg.c2});
        if (m.is_final(cfg.state)) {
            r.outcome = RunOutcome::Halted;
            return r;
        }
        if (s >= max_steps) {
            r.outcome = RunOutcome::Timeout;
            return r;
        }
        auto next = step(m, cfg);
        if (!next) {
            r.outcome = RunOutcome::Stuck;
            return r;
        }
        cfg = *next;
        r.configs.push_back(cfg);
    }
}

namespace {

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

ZeroTest parse_ztest(const std::string& s, int lineno) {
    if (s == "Z") return ZeroTest::Z;
    if (s == "P") return ZeroTest::P;
    throw MachineError("line " + std::to_string(lineno) + ": expected Z or P, got '" + s + "'");
}

CounterOp parse_op(const std::string& s, int lineno) {
    if (s == "inc") return CounterOp::Inc;
    if (s == "dec") return CounterOp::Dec;
    if (s == "keep") return CounterOp::Keep;
    throw MachineError("line " + std::to_string(lineno) + ": expected inc/dec/keep, got '" + s + "'");
}

}  // namespace

MinskyMachine parse_machine(const std::string& text) {
    MinskyMachine m;
    bool saw_states = false, saw_initial = false, saw_final = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(strip_comment(line));
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "states:") {
            saw_states = true;
            std::string s;
            while (ls >> s) m.states.push_back(s);
        } else if (head == "initial:") {
            saw_initial = true;
            if (!(ls >> m.initial))
                throw MachineError("line " + std::to_string(lineno) + ": missing initial state");
        } else if (head == "final:") {
            saw_final = true;
            std::string s;
            while (ls >> s) m.finals.push_back(s);
        } else if (head == "rule:") {
            std::string from, t1, t2, arrow, to, o1, o2;
            if (!(ls >> from >> t1 >> t2 >> arrow >> to >> o1 >> o2) || arrow != "->")
                throw MachineError("line " + std::to_string(lineno) + ": malformed rule");
            RuleKey key{from, parse_ztest(t1, lineno), parse_ztest(t2, lineno)};
            RuleAction act{to, parse_op(o1, lineno), parse_op(o2, lineno)};
            if (m.rules.count(key))
                throw MachineError("line " + std::to_string(lineno) +
                                   ": duplicate rule for (" + from + ", " + t1 + ", " + t2 + ")");
            m.rules.emplace(key, act);
        } else {
            throw MachineError("line " + std::to_string(lineno) + ": unknown directive '" + head + "'");
        }
    }
    if (!saw_states) throw MachineError("missing 'states:' line");
    if (!saw_initial) throw MachineError("missing 'initial:' line");
    if (!saw_final) throw MachineError("missing 'final:' line");
    m.validate();
    return m;
}

std::string print_machine(const MinskyMachine& m) {
    std::ostringstream os;
    os << "states:";
    for (const auto& s : m.states) os << " " << s;
    os << "\ninitial: " << m.initial << "\nfinal:";
    for (const auto& s : m.finals) os << " " << s;
    os << "\n";
    auto ztxt = [](ZeroTest z) { return z == ZeroTest::Z ? "Z" : "P"; };
    auto otxt = [](CounterOp o) {
        return o == CounterOp::Inc ? "inc" : o == CounterOp::Dec ? "dec" : "keep";
    };
    for (const auto& [key, act] : m.rules)
        os << "rule: " << key.state << " " << ztxt(key.z1) << " " << ztxt(key.z2)
           << " -> " << act.next << " " << otxt(act.op1) << " " << otxt(act.op2) << "\n";
    return os.str();
}

}  // namespace subd
