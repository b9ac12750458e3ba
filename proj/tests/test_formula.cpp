#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "ordkit/errors.hpp"
#include "ordkit/hf.hpp"
#include "ordkit/order.hpp"

using namespace ordkit;
using namespace ordkit::testing;

namespace {

HFSet H(const char* s) { return parse_hf(s); }

template <class V, class X>
bool has(const V& v, const X& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

TEST_CASE("HF order and rank") {
    CHECK(lorder(H("{}"), H("{{}}")) == Ordering::Less);
    CHECK(lorder(H("{{}}"), H("{{}}")) == Ordering::Equal);
    // same rank: sorted element lists [{0}] vs [0,{0}] differ first at {0} > 0
    CHECK(lorder(H("{{{}}}"), H("{{},{{}}}")) == Ordering::Greater);
    CHECK(vn_rank(H("{}")) == 0);
    CHECK(vn_rank(H("{{}}")) == 1);
    CHECK(vn_rank(H("{{},{{}}}")) == 2);
    CHECK(H("{}") == HFSet());
    CHECK(H("{{},{}}") == H("{{}}"));
}

TEST_CASE("HF universe is an lorder chain") {
    const auto& u = hf_universe(4);
    CHECK(u.size() == 16);
    for (std::size_t i = 1; i < u.size(); ++i) CHECK(lorder(u[i - 1], u[i]) == Ordering::Less);
}

TEST_CASE("evaluation") {
    CHECK(eval_sentence(F("mem({},{{}})")));
    CHECK(eval_sentence(F("all x in {{},{{}}} . mem(x,{{},{{}},{{{}}}})")));
    CHECK(eval_sentence(F("reg(W(0+1))")));
    CHECK_FALSE(eval_sentence(F("reg(w^(w^(0)))")));
    CHECK(eval_sentence(F("ex x in L(W(0+1)) . mem(x,{{}})")));
    CHECK_FALSE(try_eval(F("ex x in L(W(0+1)) . mem(x,{})")).has_value());
}

TEST_CASE("mu witness") {
    // z = {0}, spelled with membership only
    CHECK(mu_witness(H("{{},{{}}}"), F("ex z in {{},{{}}} . and(mem({},z), all y in z . mem(y,{{}}))")) == H("{{}}"));
    CHECK(mu_witness(H("{{}}"), F("ex z in {{}} . mem(z,z)")) == H("{}"));
    CHECK(mu_witness(H("{{{}},{}}"), F("ex z in {{{}},{}} . mem({},{{}})")) == H("{}"));
}

TEST_CASE("negation") {
    CHECK(neg(F("mem({},{{}})")) == F("!mem({},{{}})"));
    CHECK(neg(F("and(mem({},{}),reg(I))")) == F("or(!mem({},{}),!reg(I))"));
    CHECK(neg(F("all x in {{}} . mem(x,x)")) == F("ex x in {{}} . !mem(x,x)"));
    Formula a = F("all x in L(I) . or(mem(x,{}), ex y in x . reg(y))");
    CHECK(neg(neg(a)) == a);
}

TEST_CASE("k and qk") {
    KSet k1 = k_set(F("mem({},{{}})"));
    CHECK(k1.hf.size() == 2);
    CHECK(has(k1.hf, H("{}")));
    CHECK(has(k1.hf, H("{{}}")));
    KSet k2 = k_set(F("ex x in L(I) . mem(x,{{}})"));
    CHECK(has(k2.hf, H("{{}}")));
    CHECK(k2.levels == std::vector<Term>{big_i()});
    KSet k3 = k_set(F("reg(W(0+1))"));
    CHECK(k3.hf == std::vector<HFSet>{HFSet()});
    CHECK(k3.ord == std::vector<Term>{T("W(0+1)")});
    CHECK(qk_set(F("mem({{}},{{{}}})")).hf == std::vector<HFSet>{HFSet()});
    KSet q = qk_set(F("all x in {{}} . mem(x,x)"));
    CHECK(q.hf.size() == 2);
    CHECK(qk_set(F("and(mem({{}},{}),mem({},{{}}))")).hf.size() == 1);
}

TEST_CASE("rank") {
    CHECK(rk(F("mem({},{{}})")) == zero());
    CHECK(rk(F("reg(W(0+1))")) == one());
    CHECK(rk(F("ex x in L(I) . mem(x,{})")) == big_i());
    CHECK(rk(F("or(mem({},{}),mem({},{}))")) == one());
    CHECK(rk_l(Const::of(H("{{},{{}}}"))) == nat(2));
    CHECK(rk_l(Const::of(T("W(0+1)"))) == T("W(0+1)"));
}

TEST_CASE("Sigma/Pi classes") {
    CHECK(to_string(sigma_pi_class(F("mem({},{})"))) == to_string(ClassInfo{FClass::Delta0, 0}));
    ClassInfo c = sigma_pi_class(F("ex x in L(I) . mem(x,{})"));
    CHECK(c.cls == FClass::Sigma);
    CHECK(c.level == 1);
    CHECK(sigma_pi_class(F("reg(W(0+1))")).cls == FClass::NotPrenex);
    CHECK(in_sigma(F("ex x in L(I) . all y in L(I) . mem(x,y)"), 2));
    CHECK_FALSE(in_sigma(F("all x in L(I) . ex y in L(I) . mem(x,y)"), 2 - 1));
}

TEST_CASE("Sigma-hat(lambda)") {
    Term l = T("W(0+1)");
    CHECK(in_sigma_hat(F("ex x in L(I) . all y in L(I) . ex z in L(I) . mem(x,z)"), l));
    // Delta0, hence Sigma_{n+1}: the rank clause does not apply
    CHECK(in_sigma_hat(F("all x in L(W(0+1)) . mem(x,{{}})"), l));
    // reg makes the matrix non-prenex, so the bound rank decides
    CHECK_FALSE(in_sigma_hat(F("all x in L(W(0+1)) . and(!reg(x), !mem(x,{{}}))"), l));
    CHECK(in_sigma_hat(F("ex x in L(W(0+1)) . or(reg(x), mem(x,{{}}))"), l));
    CHECK(in_sigma_hat(F("all x in L(W(0+1)) . and(!reg(x), !mem(x,{{}}))"), T("W(w^(0)+1)")));
}

TEST_CASE("decomposition") {
    Decomposition o = decompose(F("or(mem({},{}),mem({},{{}}))"));
    CHECK(o.junctor == Junctor::Disj);
    CHECK(o.space == WitnessSpace::Finite);
    REQUIRE(o.branches.size() == 2);
    CHECK(o.branches[1].f == F("mem({},{{}})"));

    Decomposition r = decompose(F("reg(W(0+1))"));
    CHECK(r.junctor == Junctor::Disj);
    REQUIRE(r.branches.size() == 1);
    CHECK(eval_sentence(r.branches[0].f));

    Formula e = F("ex z in {{},{{}}} . mem({},z)");
    Decomposition m = decompose(e);
    CHECK(m.mu_clause);
    CHECK(m.space == WitnessSpace::Singleton);
    REQUIRE(m.branches.size() == 1);
    CHECK(m.branches[0].iota == Const::of(mu_witness(H("{{},{{}}}"), e)));
    CHECK(m.branches[0].iota == Const::of(H("{{}}")));

    Decomposition all_lvl = decompose(F("all x in L(I) . ex y in L(I) . all z in L(I) . mem(x,z)"));
    CHECK(all_lvl.space == WitnessSpace::SymbolicLevel);
    CHECK(all_lvl.branches.empty());
}

TEST_CASE("Mostowski collapse of terms and formulas") {
    Term x = psi(w1(), zero());
    CHECK(mostowski_term(zero(), x, w1()) == zero());
    CHECK(mostowski_term(T("W(0+1)"), x, w1()) == x);
    Formula f = F("ex y in L(I) . mem(y,{{}})");
    Formula g = mostowski_apply(f, x, w1());
    CHECK(g->bound.level);
    CHECK(g->bound.c.ord == fc1(x, w1()));
}

TEST_CASE("formula parse errors carry a position") {
    try {
        parse_formula("and(mem({},{}) mem({},{}))");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.pos() > 0);
    }
    CHECK_THROWS_AS(parse_formula("ex x in L(3) . mem(x,x)"), ParseError);
}
