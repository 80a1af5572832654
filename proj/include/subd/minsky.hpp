#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace subd {

struct MachineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CounterOp { Inc, Dec, Keep };
enum class ZeroTest { Z, P };  // counter == 0 / counter > 0

struct RuleKey {
    std::string state;
    ZeroTest z1;
    ZeroTest z2;
    bool operator<(const RuleKey& o) const {
        if (state != o.state) return state < o.state;
        if (z1 != o.z1) return z1 < o.z1;
        return z2 < o.z2;
    }
};

struct RuleAction {
    std::string next;
    CounterOp op1;
    CounterOp op2;
};

// Deterministic two-counter machine: at most one rule per
// (state, zero-test, zero-test) triple; dec is only allowed under a P test.
struct MinskyMachine {
    std::vector<std::string> states;  // declaration order
    std::string initial;
    std::vector<std::string> finals;
    std::map<RuleKey, RuleAction> rules;

    bool is_state(const std::string& s) const;
    bool is_final(const std::string& s) const;
    const RuleAction* rule_for(const std::string& state, bool c1_zero, bool c2_zero) const;
    void validate() const;
};

struct MachineConfig {
    std::string state;
    long c1 = 0;
    long c2 = 0;
    bool operator==(const MachineConfig& o) const {
        return state == o.state && c1 == o.c1 && c2 == o.c2;
    }
};

enum class RunOutcome { Halted, Stuck, Timeout };

struct MachineRun {
    std::vector<MachineConfig> configs;
    RunOutcome outcome = RunOutcome::Stuck;
    long max_counter = 0;

    bool accepting() const { return outcome == RunOutcome::Halted; }
    bool operator==(const MachineRun& o) const {
        return configs == o.configs && outcome == o.outcome;
    }
};

// One step from cfg, or nullopt when no rule matches (STUCK).
std::optional<MachineConfig> step(const MinskyMachine& m, const MachineConfig& cfg);

// Run from (initial, 0, 0). Halts as soon as a final state is entered, even
// if rules would still apply there.
MachineRun run(const MinskyMachine& m, long max_steps);

// Text format:
//   states: q0 q1 qf
//   initial: q0
//   final: qf
//   rule: q0 Z Z -> q1 inc keep
MinskyMachine parse_machine(const std::string& text);
std::string print_machine(const MinskyMachine& m);

}  // namespace subd
