#include "subd/model.hpp"

#include <sstream>

namespace subd {

const std::set<VarName> IntervalModel::empty_{};

std::string to_string(const Interval& i) {
    return "[" + std::to_string(i.a) + ", " + std::to_string(i.b) + "]";
}

std::vector<Interval> proper_subintervals(const Interval& i) {
    std::vector<Interval> out;
    const int len = i.length();
    out.reserve(static_cast<size_t>(len) * (len + 3) / 2);
    for (int l = 0; l <= len; ++l) {
        for (int a = i.a; a + l <= i.b; ++a) {
            Interval j{a, a + l};
            if (j != i) out.push_back(j);
        }
    }
    return out;
}

std::vector<Interval> all_intervals(int points) {
    std::vector<Interval> out;
    out.reserve(static_cast<size_t>(points) * (points + 1) / 2);
    for (int l = 0; l < points; ++l)
        for (int a = 0; a + l < points; ++a)
            out.push_back({a, a + l});
    return out;
}

namespace {

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

IntervalModel parse_model(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int points = -1;

    // points: header (first non-blank line)
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(strip_comment(line));
        std::string word;
        if (!(ls >> word)) continue;
        if (word != "points:")
            throw ModelError("line " + std::to_string(lineno) + ": expected 'points: <N>'");
        if (!(ls >> points) || points < 1)
            throw ModelError("line " + std::to_string(lineno) + ": invalid point count");
        if (ls >> word)
            throw ModelError("line " + std::to_string(lineno) + ": trailing tokens after point count");
        break;
    }
    if (points < 1) throw ModelError("missing 'points:' line");

    IntervalModel m(points);
    std::set<Interval> seen;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(strip_comment(line));
        std::string word;
        if (!(ls >> word)) continue;
        if (word != "interval")
            throw ModelError("line " + std::to_string(lineno) + ": expected 'interval <a> <b> : ...'");
        int a, b;
        std::string colon;
        if (!(ls >> a >> b >> colon) || colon != ":")
            throw ModelError("line " + std::to_string(lineno) + ": malformed interval line");
        Interval i{a, b};
        if (a > b)
            throw ModelError("line " + std::to_string(lineno) + ": interval with a > b");
        if (!m.valid(i))
            throw ModelError("line " + std::to_string(lineno) + ": interval out of range");
        if (!seen.insert(i).second)
            throw ModelError("line " + std::to_string(lineno) + ": duplicate interval " + to_string(i));
        std::set<VarName> vars;
        while (ls >> word) {
            if (!is_valid_var_name(word))
                throw ModelError("line " + std::to_string(lineno) + ": invalid variable name '" + word + "'");
            vars.insert(word);
        }
        if (!vars.empty()) m.set_labels(i, vars);
    }
    return m;
}

std::string print_model(const IntervalModel& m) {
    std::ostringstream os;
    os << "points: " << m.points() << "\n";
    for (const auto& [i, vars] : m.labeling()) {
        if (vars.empty()) continue;
        os << "interval " << i.a << " " << i.b << " :";
        for (const auto& v : vars) os << " " << v;
        os << "\n";
    }
    return os.str();
}

}  // namespace subd
