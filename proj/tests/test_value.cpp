// Semantic value layer: canonical sets, the total order, set algebra.
//
// The set-algebra operations are checked against an independent oracle built
// on std::set (which exercises operator< through a different code path than
// the merge loops under test).

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "ebadt/value.hpp"

using namespace ebadt;

namespace {

Value atom(const std::string& carrier, std::int32_t index) {
    Atom a;
    a.carrier = carrier;
    a.index = index;
    a.name = carrier + "!" + std::to_string(index);
    return Value::of_atom(std::move(a));
}

// A small, diverse pool of values covering every kind, nesting included.
std::vector<Value> value_pool() {
    std::vector<Value> pool;
    for (int i = -2; i <= 2; ++i) pool.push_back(Value::of_int(i));
    pool.push_back(Value::of_bool(false));
    pool.push_back(Value::of_bool(true));
    pool.push_back(atom("S", 0));
    pool.push_back(atom("S", 1));
    pool.push_back(atom("T", 0));
    pool.push_back(Value::pair(Value::of_int(1), Value::of_int(2)));
    pool.push_back(Value::pair(Value::of_int(2), Value::of_int(1)));
    pool.push_back(Value::pair(atom("S", 0), Value::of_bool(true)));
    pool.push_back(Value::pair(Value::pair(Value::of_int(0), Value::of_int(0)),
                               Value::of_int(0)));
    pool.push_back(Value::empty_set());
    pool.push_back(Value::set({Value::of_int(1)}));
    pool.push_back(Value::set({Value::of_int(1), Value::of_int(2)}));
    pool.push_back(Value::set({Value::of_int(2), Value::of_int(1)}));  // == previous
    pool.push_back(Value::set({atom("S", 0), atom("S", 1)}));
    pool.push_back(Value::set({Value::set({Value::of_int(1)}), Value::empty_set()}));
    pool.push_back(Value::set({Value::pair(Value::of_int(1), atom("S", 0))}));
    return pool;
}

int sign(int c) { return c < 0 ? -1 : (c > 0 ? 1 : 0); }

}  // namespace

TEST_CASE("constructors, kind predicates, accessors", "[value]") {
    Value none;
    CHECK_FALSE(none.valid());

    Value i = Value::of_int(-7);
    REQUIRE(i.valid());
    CHECK(i.is_int());
    CHECK_FALSE(i.is_bool());
    CHECK(i.as_int() == -7);

    Value b = Value::of_bool(true);
    CHECK(b.is_bool());
    CHECK(b.as_bool());

    Value a = atom("SECTION", 2);
    CHECK(a.is_atom());
    CHECK(a.as_atom().carrier == "SECTION");
    CHECK(a.as_atom().index == 2);

    Value p = Value::pair(i, b);
    CHECK(p.is_pair());
    CHECK(p.first() == i);
    CHECK(p.second() == b);

    Value s = Value::set({i, b, a});
    CHECK(s.is_set());
    CHECK(s.elements().size() == 3);

    CHECK(Value::empty_set().is_set());
    CHECK(Value::empty_set().elements().empty());
}

TEST_CASE("sets canonicalize: order and duplicates never matter", "[value]") {
    // Fixed cases first.
    Value a = Value::set({Value::of_int(3), Value::of_int(1), Value::of_int(2)});
    Value b = Value::set({Value::of_int(2), Value::of_int(3), Value::of_int(1),
                          Value::of_int(2)});
    CHECK(a == b);
    REQUIRE(a.elements().size() == 3);
    CHECK(a.elements()[0].as_int() == 1);
    CHECK(a.elements()[1].as_int() == 2);
    CHECK(a.elements()[2].as_int() == 3);

    // Property: any shuffle (with random duplication) of the same element
    // multiset builds the identical value, and its size matches a std::set
    // oracle.
    std::mt19937 rng(0xC0FFEE);
    auto pool = value_pool();
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<Value> elems;
        std::size_t n = rng() % 8;
        for (std::size_t k = 0; k < n; ++k) elems.push_back(pool[rng() % pool.size()]);
        // Duplicate a random prefix to stress dedup.
        std::size_t dup = elems.empty() ? 0 : rng() % elems.size();
        for (std::size_t k = 0; k < dup; ++k) elems.push_back(elems[k]);

        std::vector<Value> shuffled = elems;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);

        Value s1 = Value::set(elems);
        Value s2 = Value::set(shuffled);
        REQUIRE(s1 == s2);

        std::set<Value> oracle(elems.begin(), elems.end());
        REQUIRE(s1.elements().size() == oracle.size());
        // Canonical order must be strictly increasing.
        for (std::size_t k = 1; k < s1.elements().size(); ++k)
            REQUIRE(compare(s1.elements()[k - 1], s1.elements()[k]) < 0);
    }
}

TEST_CASE("compare is a total order", "[value]") {
    auto pool = value_pool();

    // Kind ranking: int < bool < atom < pair < set.
    Value i = Value::of_int(1000);
    Value b = Value::of_bool(false);
    Value a = atom("Z", 9);
    Value p = Value::pair(Value::of_int(0), Value::of_int(0));
    Value s = Value::empty_set();
    CHECK(i < b);
    CHECK(b < a);
    CHECK(a < p);
    CHECK(p < s);

    // Within kinds.
    CHECK(Value::of_int(-1) < Value::of_int(0));
    CHECK(Value::of_bool(false) < Value::of_bool(true));
    CHECK(atom("A", 5) < atom("B", 0));  // carrier name first
    CHECK(atom("A", 0) < atom("A", 1));  // then index
    CHECK(Value::pair(Value::of_int(1), Value::of_int(9)) <
          Value::pair(Value::of_int(2), Value::of_int(0)));  // lexicographic
    CHECK(Value::set({Value::of_int(1)}) <
          Value::set({Value::of_int(1), Value::of_int(2)}));  // prefix is smaller

    // Reflexivity and antisymmetry over all pool pairs.
    for (const auto& x : pool) {
        CHECK(compare(x, x) == 0);
        for (const auto& y : pool) {
            CHECK(sign(compare(x, y)) == -sign(compare(y, x)));
            // Consistency of the operators with compare.
            CHECK((x == y) == (compare(x, y) == 0));
            CHECK((x < y) == (compare(x, y) < 0));
        }
    }

    // Transitivity over random triples.
    std::mt19937 rng(0xDECADE);
    for (int iter = 0; iter < 5000; ++iter) {
        const Value& x = pool[rng() % pool.size()];
        const Value& y = pool[rng() % pool.size()];
        const Value& z = pool[rng() % pool.size()];
        if (compare(x, y) <= 0 && compare(y, z) <= 0) REQUIRE(compare(x, z) <= 0);
    }
}

TEST_CASE("set algebra agrees with a std::set oracle", "[value]") {
    auto pool = value_pool();
    std::mt19937 rng(0xBEEF);

    auto random_subset = [&]() {
        std::vector<Value> elems;
        for (const auto& v : pool)
            if (rng() % 2) elems.push_back(v);
        return elems;
    };

    for (int iter = 0; iter < 300; ++iter) {
        std::vector<Value> xs = random_subset();
        std::vector<Value> ys = random_subset();
        Value a = Value::set(xs);
        Value b = Value::set(ys);
        std::set<Value> sa(xs.begin(), xs.end());
        std::set<Value> sb(ys.begin(), ys.end());

        std::set<Value> su = sa;
        su.insert(sb.begin(), sb.end());
        REQUIRE(set_union(a, b) ==
                Value::set(std::vector<Value>(su.begin(), su.end())));

        std::vector<Value> si;
        for (const auto& v : sa)
            if (sb.count(v)) si.push_back(v);
        REQUIRE(set_inter(a, b) == Value::set(si));

        std::vector<Value> sd;
        for (const auto& v : sa)
            if (!sb.count(v)) sd.push_back(v);
        REQUIRE(set_diff(a, b) == Value::set(sd));

        bool subset = true;
        for (const auto& v : sa)
            if (!sb.count(v)) { subset = false; break; }
        REQUIRE(set_subset(a, b) == subset);

        // Membership agrees with the oracle for every pool element.
        for (const auto& v : pool)
            REQUIRE(set_contains(a.elements(), v) == (sa.count(v) != 0));
    }

    // Algebraic identities on a fixed pair.
    Value a = Value::set({Value::of_int(1), Value::of_int(2), Value::of_int(3)});
    Value b = Value::set({Value::of_int(2), Value::of_int(4)});
    CHECK(set_union(a, b) == set_union(b, a));
    CHECK(set_inter(a, b) == set_inter(b, a));
    CHECK(set_diff(a, a) == Value::empty_set());
    CHECK(set_union(a, Value::empty_set()) == a);
    CHECK(set_inter(a, Value::empty_set()) == Value::empty_set());
    CHECK(set_subset(Value::empty_set(), a));
    CHECK(set_subset(a, a));
    CHECK_FALSE(set_subset(a, b));
}

TEST_CASE("value rendering", "[value]") {
    CHECK(to_string(Value::of_int(-3)) == "-3");
    CHECK(to_string(Value::of_bool(true)) == "TRUE");
    CHECK(to_string(Value::of_bool(false)) == "FALSE");
    CHECK(to_string(atom("S", 1)) == "S!1");
    CHECK(to_string(Value::empty_set()) == "{}");
    CHECK(to_string(Value::set({Value::of_int(2), Value::of_int(1)})) == "{1, 2}");
    // Pairs render left-associatively: parens only on a pair in second position.
    Value p12 = Value::pair(Value::of_int(1), Value::of_int(2));
    CHECK(to_string(Value::pair(p12, Value::of_int(3))) == "1 |-> 2 |-> 3");
    CHECK(to_string(Value::pair(Value::of_int(1), p12)) == "1 |-> (1 |-> 2)");
    CHECK(to_string(Value()) == "<none>");
}
