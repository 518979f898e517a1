#pragma once

// Finite semantic values: integers, booleans, carrier-set atoms, ordered
// pairs, and finite sets.  Sets are kept canonical (sorted, deduplicated)
// so structural equality is value equality and values can key maps.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "ebadt/span.hpp"

namespace ebadt {

class Value;

// An element of a named carrier set: the k-th atom of carrier `carrier`.
struct Atom {
    std::string carrier;
    std::int32_t index = 0;
    std::string name;  // display name ("A", "B", ...) or synthesized "CARRIER!k"
};

struct ValueRep;
using ValueRepPtr = std::shared_ptr<const ValueRep>;

class Value {
public:
    Value() = default;  // empty handle; only produced by default construction
    explicit Value(ValueRepPtr rep) : rep_(std::move(rep)) {}

    static Value of_int(std::int64_t v);
    static Value of_bool(bool v);
    static Value of_atom(Atom a);
    static Value pair(Value first, Value second);
    // `elems` need not be sorted or unique; canonicalized here.
    static Value set(std::vector<Value> elems);
    // Precondition: already strictly sorted — skips the canonicalization pass.
    static Value set_sorted(std::vector<Value> elems);
    static const Value& empty_set();

    bool valid() const { return rep_ != nullptr; }
    const ValueRep& rep() const { return *rep_; }

    bool is_int() const;
    bool is_bool() const;
    bool is_atom() const;
    bool is_pair() const;
    bool is_set() const;

    std::int64_t as_int() const;
    bool as_bool() const;
    const Atom& as_atom() const;
    const Value& first() const;
    const Value& second() const;
    const std::vector<Value>& elements() const;

    friend int compare(const Value& a, const Value& b);
    bool operator==(const Value& o) const { return compare(*this, o) == 0; }
    bool operator!=(const Value& o) const { return compare(*this, o) != 0; }
    bool operator<(const Value& o) const { return compare(*this, o) < 0; }

private:
    ValueRepPtr rep_;
};

struct PairRep {
    Value first;
    Value second;
};

struct ValueRep {
    // Order of alternatives fixes the cross-kind ordering: int < bool < atom
    // < pair < set.
    std::variant<std::int64_t, bool, Atom, PairRep, std::vector<Value>> v;
};

inline bool Value::is_int() const { return rep_ && rep_->v.index() == 0; }
inline bool Value::is_bool() const { return rep_ && rep_->v.index() == 1; }
inline bool Value::is_atom() const { return rep_ && rep_->v.index() == 2; }
inline bool Value::is_pair() const { return rep_ && rep_->v.index() == 3; }
inline bool Value::is_set() const { return rep_ && rep_->v.index() == 4; }

inline std::int64_t Value::as_int() const { return std::get<0>(rep_->v); }
inline bool Value::as_bool() const { return std::get<1>(rep_->v); }
inline const Atom& Value::as_atom() const { return std::get<2>(rep_->v); }
inline const Value& Value::first() const { return std::get<3>(rep_->v).first; }
inline const Value& Value::second() const { return std::get<3>(rep_->v).second; }
inline const std::vector<Value>& Value::elements() const { return std::get<4>(rep_->v); }

inline int compare(const Value& a, const Value& b) {
    if (a.rep_.get() == b.rep_.get()) return 0;
    std::size_t ka = a.rep_->v.index(), kb = b.rep_->v.index();
    if (ka != kb) return ka < kb ? -1 : 1;
    switch (ka) {
        case 0: {
            std::int64_t x = a.as_int(), y = b.as_int();
            return x < y ? -1 : (x > y ? 1 : 0);
        }
        case 1: {
            int x = a.as_bool() ? 1 : 0, y = b.as_bool() ? 1 : 0;
            return x - y;
        }
        case 2: {
            const Atom& x = a.as_atom();
            const Atom& y = b.as_atom();
            int c = x.carrier.compare(y.carrier);
            if (c != 0) return c < 0 ? -1 : 1;
            return x.index < y.index ? -1 : (x.index > y.index ? 1 : 0);
        }
        case 3: {
            int c = compare(a.first(), b.first());
            return c != 0 ? c : compare(a.second(), b.second());
        }
        case 4: {
            const auto& xs = a.elements();
            const auto& ys = b.elements();
            std::size_t n = xs.size() < ys.size() ? xs.size() : ys.size();
            for (std::size_t i = 0; i < n; ++i) {
                int c = compare(xs[i], ys[i]);
                if (c != 0) return c;
            }
            if (xs.size() != ys.size()) return xs.size() < ys.size() ? -1 : 1;
            return 0;
        }
    }
    return 0;
}

inline Value Value::of_int(std::int64_t v) {
    return Value(std::make_shared<ValueRep>(ValueRep{v}));
}
inline Value Value::of_bool(bool v) {
    return Value(std::make_shared<ValueRep>(ValueRep{v}));
}
inline Value Value::of_atom(Atom a) {
    return Value(std::make_shared<ValueRep>(ValueRep{std::move(a)}));
}
inline Value Value::pair(Value f, Value s) {
    return Value(std::make_shared<ValueRep>(ValueRep{PairRep{std::move(f), std::move(s)}}));
}
inline Value Value::set(std::vector<Value> elems) {
    std::sort(elems.begin(), elems.end(),
              [](const Value& a, const Value& b) { return compare(a, b) < 0; });
    elems.erase(std::unique(elems.begin(), elems.end(),
                            [](const Value& a, const Value& b) { return compare(a, b) == 0; }),
                elems.end());
    return Value(std::make_shared<ValueRep>(ValueRep{std::move(elems)}));
}
inline Value Value::set_sorted(std::vector<Value> elems) {
    return Value(std::make_shared<ValueRep>(ValueRep{std::move(elems)}));
}
inline const Value& Value::empty_set() {
    static const Value e = Value::set_sorted({});
    return e;
}

// Sorted-vector membership.
inline bool set_contains(const std::vector<Value>& sorted, const Value& x) {
    std::size_t lo = 0, hi = sorted.size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        int c = compare(sorted[mid], x);
        if (c == 0) return true;
        if (c < 0) lo = mid + 1; else hi = mid;
    }
    return false;
}

// Rendering (used by witnesses and traces).  Sets print {a, b}; pairs a |-> b
// with left association (parens only on a pair in second position).
inline std::string to_string(const Value& v) {
    if (!v.valid()) return "<none>";
    if (v.is_int()) return std::to_string(v.as_int());
    if (v.is_bool()) return v.as_bool() ? "TRUE" : "FALSE";
    if (v.is_atom()) return v.as_atom().name;
    if (v.is_pair()) {
        std::string rhs = to_string(v.second());
        if (v.second().is_pair()) rhs = "(" + rhs + ")";
        return to_string(v.first()) + " |-> " + rhs;
    }
    std::string out = "{";
    bool first = true;
    for (const auto& e : v.elements()) {
        if (!first) out += ", ";
        first = false;
        out += to_string(e);
    }
    out += "}";
    return out;
}

// ---------------------------------------------------------------------------
// Set-algebra helpers on canonical sorted element vectors
// ---------------------------------------------------------------------------

inline Value set_union(const Value& a, const Value& b) {
    const auto& xs = a.elements();
    const auto& ys = b.elements();
    std::vector<Value> out;
    out.reserve(xs.size() + ys.size());
    std::size_t i = 0, j = 0;
    while (i < xs.size() && j < ys.size()) {
        int c = compare(xs[i], ys[j]);
        if (c < 0) out.push_back(xs[i++]);
        else if (c > 0) out.push_back(ys[j++]);
        else { out.push_back(xs[i++]); ++j; }
    }
    while (i < xs.size()) out.push_back(xs[i++]);
    while (j < ys.size()) out.push_back(ys[j++]);
    return Value::set_sorted(std::move(out));
}

inline Value set_inter(const Value& a, const Value& b) {
    const auto& xs = a.elements();
    const auto& ys = b.elements();
    std::vector<Value> out;
    std::size_t i = 0, j = 0;
    while (i < xs.size() && j < ys.size()) {
        int c = compare(xs[i], ys[j]);
        if (c < 0) ++i;
        else if (c > 0) ++j;
        else { out.push_back(xs[i++]); ++j; }
    }
    return Value::set_sorted(std::move(out));
}

inline Value set_diff(const Value& a, const Value& b) {
    const auto& xs = a.elements();
    const auto& ys = b.elements();
    std::vector<Value> out;
    std::size_t i = 0, j = 0;
    while (i < xs.size()) {
        while (j < ys.size() && compare(ys[j], xs[i]) < 0) ++j;
        if (j < ys.size() && compare(ys[j], xs[i]) == 0) { ++i; ++j; }
        else out.push_back(xs[i++]);
    }
    return Value::set_sorted(std::move(out));
}

inline bool set_subset(const Value& a, const Value& b) {
    const auto& xs = a.elements();
    const auto& ys = b.elements();
    std::size_t j = 0;
    for (const auto& x : xs) {
        while (j < ys.size() && compare(ys[j], x) < 0) ++j;
        if (j >= ys.size() || compare(ys[j], x) != 0) return false;
        ++j;
    }
    return true;
}

}  // namespace ebadt
