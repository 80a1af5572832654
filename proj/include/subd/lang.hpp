#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subd/minsky.hpp"

namespace subd {

struct LangError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Token groups of the marker alphabet B. A letter carries at most one token
// per group: none, the plain (shade-interior) token, the l (counter) token,
// or the r (shadow) token.
enum class GroupToken : uint8_t { None, Plain, L, R };

// Group indices: 0 = f family, 1 = f' family, 2 = s family, 3 = s' family.
inline constexpr int kGroups = 4;

struct Letter {
    bool is_state = false;
    std::string state;  // state letters only
    bool primed = false;
    std::array<GroupToken, kGroups> g{GroupToken::None, GroupToken::None,
                                      GroupToken::None, GroupToken::None};

    static Letter make_state(const std::string& name, bool primed);
    static Letter make_subset(GroupToken f, GroupToken fp, GroupToken s, GroupToken sp);

    bool operator==(const Letter& o) const;
    bool operator<(const Letter& o) const;

    bool has(int group, GroupToken t) const { return !is_state && g[group] == t; }
    bool first_counter() const { return has(0, GroupToken::L) || has(1, GroupToken::L); }
    bool second_counter() const { return has(2, GroupToken::L) || has(3, GroupToken::L); }
    bool first_shadow() const { return has(0, GroupToken::R) || has(1, GroupToken::R); }
    bool second_shadow() const { return has(2, GroupToken::R) || has(3, GroupToken::R); }
};

using Word = std::vector<Letter>;

// Canonical rendering: states "st_<name>" / "st_<name>p"; subsets "sub_"
// followed by the sorted token list from {f,fl,fr,fp,fpl,fpr,s,sl,sr,sp,
// spl,spr}; the empty subset is "sub_empty".
std::string render_letter(const Letter& l);
Letter parse_letter(const std::string& text, const MinskyMachine& m);

Word parse_word(const std::string& text, const MinskyMachine& m);  // one letter per line
std::string print_word(const Word& w);

// All state letters (primed and unprimed, declaration order) followed by all
// 256 subset letters in nested group order.
std::vector<Letter> alphabet(const MinskyMachine& m);

// Membership verdict with the earliest failing condition (1-6) and the
// position it was detected at.
struct LaVerdict {
    bool member = false;
    int condition = 0;      // 0 when member
    size_t position = 0;    // letter index
    std::string detail;
};

LaVerdict in_LA_direct(const Word& w, const MinskyMachine& m);

// Shade geometry: every configuration except the last spans n-1 letters and
// every complete shade spans n letters including both ends.
struct GeometryParams {
    int n;
    explicit GeometryParams(int n_) : n(n_) {
        if (n < 3) throw LangError("geometry: n must be at least 3");
    }
    int config_len() const { return n - 1; }
    int cloud_len() const { return n - 2; }
};

bool check_geometry(const Word& w, const GeometryParams& g, const MinskyMachine& m);

struct Nfa {
    std::vector<Letter> letters;  // alphabet, id = position
    int state_count = 0;
    std::vector<int> initials;
    std::vector<uint8_t> finals;  // per state

    struct Edge {
        int from;
        int letter;
        int to;
    };
    std::vector<Edge> edges;                            // sorted (from, letter, to)
    std::vector<std::vector<std::pair<int, int>>> adj;  // from -> [(letter, to)]

    int letter_id(const Letter& l) const;
    void index_edges();
};

// Scanner automaton for the word language: one tracker per condition family
// (configuration parity and state alternation; per-configuration counter and
// shadow occurrence; shade-interior tokens; instruction matching with
// coincide/predecessor/successor placement), stepped in lockstep. Only the
// "is the next configuration the bare final one" guess is nondeterministic.
// States are restricted to those reachable from the initial state.
Nfa build_nfa(const MinskyMachine& m);

bool nfa_accepts(const Nfa& a, const Word& w);

// Word of the accepting run r: configuration k is the (primed iff k odd)
// state letter followed by n-2 subset letters; counters sit at offset
// 1+value, shadows mirror the previous configuration's counter offsets, and
// shade interiors carry the plain tokens. The final configuration is the
// bare state letter.
Word encode_run(const MachineRun& r, int n);

// Inverse of encode_run; infers n from the first configuration.
MachineRun decode_word(const Word& w, const MinskyMachine& m);

// Largest counter value that appears in the run.
long run_max_counter(const MachineRun& r);

// n used for witness words: max(6, max counter + 4).
int witness_shade_length(const MachineRun& r);

}  // namespace subd
