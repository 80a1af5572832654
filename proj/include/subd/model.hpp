#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "subd/formula.hpp"

namespace subd {

// Closed interval [a, b] over points 0..N-1 of a finite discrete order.
struct Interval {
    int a = 0;
    int b = 0;

    int length() const { return b - a; }
    bool is_leaf() const { return a == b; }
    bool contains(const Interval& o) const { return a <= o.a && o.b <= b; }
    bool operator==(const Interval& o) const { return a == o.a && b == o.b; }
    bool operator!=(const Interval& o) const { return !(*this == o); }
    bool operator<(const Interval& o) const {
        return a != o.a ? a < o.a : b < o.b;
    }
};

std::string to_string(const Interval& i);

// All [a', b'] with a <= a', b' <= b and [a', b'] != [a, b],
// ordered by (length, left endpoint). Count is L(L+3)/2 for L = length.
std::vector<Interval> proper_subintervals(const Interval& i);

// All intervals over N points, ordered by (length, left endpoint);
// leaves come first, the full interval last.
std::vector<Interval> all_intervals(int points);

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite model: N points plus a labeling from intervals to variable sets.
// Unlisted intervals carry the empty label set.
class IntervalModel {
public:
    explicit IntervalModel(int points) : points_(points) {
        if (points < 1) throw ModelError("model needs at least one point");
    }

    int points() const { return points_; }
    Interval full() const { return {0, points_ - 1}; }

    bool valid(const Interval& i) const {
        return 0 <= i.a && i.a <= i.b && i.b < points_;
    }

    void require_valid(const Interval& i) const {
        if (!valid(i))
            throw ModelError("interval " + to_string(i) + " out of range for " +
                             std::to_string(points_) + " points");
    }

    void set_labels(const Interval& i, const std::set<VarName>& vars) {
        require_valid(i);
        if (vars.empty()) labels_.erase(i);
        else labels_[i] = vars;
    }

    void add_label(const Interval& i, const VarName& v) {
        require_valid(i);
        labels_[i].insert(v);
    }

    const std::set<VarName>& get_labels(const Interval& i) const {
        require_valid(i);
        auto it = labels_.find(i);
        if (it == labels_.end()) return empty_;
        return it->second;
    }

    bool has_label(const Interval& i, const VarName& v) const {
        auto it = labels_.find(i);
        return it != labels_.end() && it->second.count(v) > 0;
    }

    const std::map<Interval, std::set<VarName>>& labeling() const { return labels_; }

    bool operator==(const IntervalModel& o) const {
        return points_ == o.points_ && labels_ == o.labels_;
    }

private:
    int points_;
    std::map<Interval, std::set<VarName>> labels_;
    static const std::set<VarName> empty_;
};

// Line-oriented text format:
//   points: <N>
//   interval <a> <b> : <var> <var> ...
// '#' starts a comment; duplicate (a, b) lines are an error; intervals with
// empty label sets are omitted on print.
IntervalModel parse_model(const std::string& text);
std::string print_model(const IntervalModel& m);

}  // namespace subd
