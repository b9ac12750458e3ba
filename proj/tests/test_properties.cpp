#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "ordkit/corpus.hpp"
#include "ordkit/hull.hpp"
#include "ordkit/order.hpp"

using namespace ordkit;
using namespace ordkit::testing;

namespace {

bool root_true(const Derivation& d) {
    for (const auto& f : d.seq) {
        auto v = try_eval(f);
        if (v && *v) return true;
    }
    return false;
}

template <class F>
void each_node(const Derivation& d, F&& f) {
    f(d);
    for (const auto& c : d.children) each_node(c, f);
}

}  // namespace

TEST_CASE("normal terms: render/parse round trip and normalize is the identity") {
    for (const auto& t : normal_terms(6)) {
        CHECK(parse_term(render(t)) == t);
        CHECK(is_normal(t));
        CHECK(normalize(t) == t);
    }
}

TEST_CASE("addition on small normal terms") {
    const auto& ts = normal_terms(4);
    for (const auto& a : ts)
        for (const auto& b : ts) {
            Term s = add(a, b);
            CHECK(is_normal(s));
            CHECK(le(a, s));
            CHECK(le(b, s));
            if (b != zero()) CHECK(lt(a, s));
            for (const auto& c : {zero(), one(), omega(), big_i()}) CHECK(add(add(a, b), c) == add(a, add(b, c)));
        }
}

TEST_CASE("cmp agrees with the sorted universe") {
    const auto& ts = normal_terms(5);
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = 0; j < ts.size(); ++j) {
            Ordering want = i < j ? Ordering::Less : i == j ? Ordering::Equal : Ordering::Greater;
            CHECK(cmp(ts[i], ts[j]) == want);
        }
}

TEST_CASE("serial and parallel hull stages agree") {
    const auto& ts = normal_terms(4);
    for (std::size_t g = 0; g < ts.size(); g += 3)
        for (std::size_t b = 0; b < ts.size(); b += 5) {
            auto s = hull_stages(ts[g], ts[b], 5, 12);
            auto p = hull_stages_parallel(ts[g], ts[b], 5, 12);
            CHECK(s.terms == p.terms);
            CHECK(s.sizes == p.sizes);
            CHECK(s.saturated == p.saturated);
        }
}

TEST_CASE("in_hull matches the stage oracle on size 4") {
    const HullOracle& o = oracle_for(4);
    for (std::size_t g = 0; g < o.size(); ++g)
        for (std::size_t b = 0; b < o.size(); ++b) {
            bool sat = false;
            auto h = o.saturate(static_cast<int>(g), static_cast<int>(b), 64, false, &sat);
            REQUIRE(sat);
            for (std::size_t t = 0; t < o.size(); ++t)
                CHECK(in_hull(o.term(t), o.term(g), o.term(b)) == static_cast<bool>(h[t]));
        }
}

TEST_CASE("corpus is deterministic and well formed") {
    Corpus a = gen_corpus(7, 30);
    Corpus b = gen_corpus(7, 30);
    CHECK(manifest(a).dump() == manifest(b).dump());
    CHECK(manifest(gen_corpus(8, 30)).dump() != manifest(a).dump());
    REQUIRE(a.terms.size() == 30);
    REQUIRE(a.formulas.size() == 30);
    for (const auto& t : a.terms) CHECK(is_normal(t));
    for (const auto& f : a.formulas) CHECK(try_eval(f).has_value());
}

TEST_CASE("corpus derivations: check is hereditary and JSON round trips") {
    Corpus c = gen_corpus(11, 25);
    for (const auto& d : c.derivations) {
        REQUIRE(check(d).ok());
        each_node(d, [](const Derivation& n) { CHECK(check(n).ok()); });
        std::string s = serialize(d);
        CHECK(serialize(deserialize(s)) == s);
    }
}

TEST_CASE("transformers preserve truth of the root sequent") {
    Corpus c = gen_corpus(13, 40);
    const Formula g = F("ex x in L(W(0+1)) . mem(x,{{}})");
    for (const auto& f : c.formulas) {
        const bool v = *try_eval(f);
        const Formula t = v ? f : neg(f);
        const Formula fl = v ? neg(f) : f;

        // drop the false one of {not A, A}
        Derivation d = build_tautology(make_sequent({g}), f);
        Derivation e = eliminate_false(d, fl);
        CHECK(check(e).ok());
        CHECK(root_true(e));
        CHECK(e.bound == d.bound);

        // invert a true universal
        if (t.kind() == FKind::All) {
            Derivation i = invert(d, t);
            CHECK(check(i).ok());
            CHECK(root_true(i));
        }
    }
}
