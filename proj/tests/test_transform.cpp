#include <functional>

#include "doctest.h"
#include "helpers.hpp"
#include "ordkit/config.hpp"
#include "ordkit/errors.hpp"
#include "ordkit/order.hpp"

using namespace ordkit;
using namespace ordkit::testing;

namespace {

const char* kG = "ex x in L(W(0+1)) . mem(x,{{}})";

bool any_node(const Derivation& d, const std::function<bool(const Derivation&)>& p) {
    if (p(d)) return true;
    for (const auto& c : d.children)
        if (any_node(c, p)) return true;
    return false;
}

bool root_true(const Derivation& d) {
    for (const auto& f : d.seq) {
        auto v = try_eval(f);
        if (v && *v) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("tautology bounds") {
    Derivation a = build_tautology({}, F("mem({},{{}})"));
    CHECK(a.bound == zero());
    CHECK(node_count(a) == 1);

    // one unfolding: (and) over the two negated disjuncts, each an (or) over a literal axiom
    Derivation b = build_tautology({}, F("or(mem({},{}),mem({},{{}}))"));
    CHECK(b.bound == nat(2));
    REQUIRE(b.children.size() == 2);
    CHECK(b.children[0].bound == nat(1));

    Derivation r = build_tautology({}, F("reg(W(0+1))"));
    CHECK(r.bound == nat(2));

    Derivation w = build_tautology(make_sequent({F(kG)}), F("all x in {{},{{}}} . mem(x,x)"));
    CHECK(seq_contains(w.seq, F(kG)));
    CHECK(w.cutrank == zero());
}

TEST_CASE("tautology on a symbolic conjunction is a domain error") {
    try {
        build_tautology({}, F("all x in L(I) . ex y in L(I) . all z in L(I) . mem(x,z)"));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Domain);
    }
}

TEST_CASE("completeness") {
    Derivation lit = build_completeness(F("mem({},{{}})"));
    CHECK(lit.bound == zero());
    CHECK(lit.rule.tag == RuleTag::And);
    CHECK(lit.children.empty());

    Formula e = F("ex z in {{},{{}}} . mem({},z)");
    Derivation d = build_completeness(e);
    CHECK(d.rule.tag == RuleTag::Or);
    CHECK(d.rule.iota == Const::of(parse_hf("{{}}")));
    CHECK(d.bound == add(rk(e), rk(e)));

    CHECK_THROWS_AS(build_completeness(F("mem({},{})")), Error);
}

TEST_CASE("elimination of false sentences") {
    Formula f = F("mem({},{})");
    Derivation t = build_tautology(make_sequent({f}), F(kG));
    Derivation e = eliminate_false(t, f);
    CHECK_FALSE(seq_contains(e.seq, f));
    CHECK(e.bound == t.bound);
    CHECK(e.cutrank == t.cutrank);

    Formula ex = F("ex x in {{},{{}}} . mem(x,{})");
    Derivation tx = build_tautology({}, ex);
    Derivation ex_out = eliminate_false(tx, ex);
    CHECK(ex_out.seq == make_sequent({neg(ex)}));
    CHECK_FALSE(any_node(ex_out, [&](const Derivation& n) { return n.rule.tag == RuleTag::Or && n.rule.main == ex; }));

    Derivation only = build_completeness(F("mem({},{{}})"));
    only.seq = make_sequent({f});
    CHECK_THROWS_AS(eliminate_false(only, f), Error);
    CHECK_THROWS_AS(eliminate_false(t, F("mem({},{{}})")), Error);
}

TEST_CASE("inversion") {
    Formula e = F("ex z in {{},{{}}} . mem({},z)");
    Derivation t = build_tautology({}, e);
    Decomposition de = decompose(e);
    Derivation ie = invert(t, e);
    CHECK(seq_contains(ie.seq, de.branches[0].f));
    CHECK_FALSE(seq_contains(ie.seq, e));
    CHECK(ie.bound == t.bound);

    Formula a = neg(e);
    Decomposition da = decompose(a);
    Derivation ia = invert(t, a);
    // d in b -> not theta[d], spelled as a disjunction
    CHECK(da.branches[0].f.kind() == FKind::Or);
    CHECK(seq_contains(ia.seq, da.branches[0].f));
    CHECK(check(ia).ok());
}

TEST_CASE("reduction: quantified cut formula") {
    Formula c = F("ex x in {{},{{}}} . mem(x,{{}})");
    Derivation dl = build_tautology({}, c);
    Derivation dr = build_completeness(c);
    Derivation out = reduce_cut(dl, dr, c, rk(c));
    CHECK(out.bound == add(dl.bound, dr.bound));
    CHECK(out.seq == make_sequent({c}));
    CHECK(root_true(out));
}

TEST_CASE("reduction: false literal is pruned") {
    Formula c = F("mem({},{})");
    Derivation dl = build_tautology({}, c);
    Derivation dr = build_tautology(make_sequent({c}), F(kG));
    Derivation out = reduce_cut(dl, dr, c, zero());
    CHECK(out.bound == add(dl.bound, dr.bound));
    CHECK(seq_contains(out.seq, F(kG)));
}

TEST_CASE("reduction rejects conjunctive and axiom-shaped cut formulas") {
    Formula c = F("all x in {{}} . mem(x,{{}})");
    Derivation t = build_tautology({}, c);
    CHECK_THROWS_AS(reduce_cut(t, t, c, rk(c)), Error);
    Formula p = pi_axiom_formula(zero());
    CHECK_THROWS_AS(reduce_cut(t, t, p, big_i()), Error);
}

TEST_CASE("P-axiom witnesses") {
    AxiomWitness w = axiom_witness(p_axiom_formula(T("W(0+1)"), zero()), zero());
    CHECK(w.iota == psi(w1(), zero()));
    CHECK(lt(zero(), w.iota));
    AxiomWitness top = axiom_witness(pi_axiom_formula(zero()), one());
    CHECK(top.iota == psi(reg_top(), one()));
    // alpha must sit below the witness
    CHECK_THROWS_AS(axiom_witness(pi_axiom_formula(T("psi(I;w^(0))")), zero()), Error);
}

TEST_CASE("reduce_axiom_P drops the negated axiom formula") {
    Formula c = pi_axiom_formula(zero());
    Derivation d = build_completeness(F(kG), make_sequent({neg(c)}));
    Derivation out = reduce_axiom_P(d, c, zero());
    CHECK(out.seq == make_sequent({F(kG)}));
    CHECK(out.op.gamma == one());
    CHECK(out.bound == d.bound);
}

TEST_CASE("predicative elimination: one rank") {
    Formula c = F("ex x in {{},{{}}} . mem(x,{{}})");
    Derivation d = cut_on(F(kG), c, succ(rk(c)));
    Derivation out = pred_cut_elim(d, zero(), rk(c));
    CHECK(out.bound == omega_pow(d.bound));
    CHECK(out.cutrank == rk(c));
}

TEST_CASE("predicative elimination: lambda+2 to lambda+1") {
    Formula c = F("or(ex y in L(W(0+1)) . mem(y,{{}}), mem({},{}))");
    Term l1 = T("W(0+1)+w^(0)");
    REQUIRE(rk(c) == l1);
    Derivation d = cut_on(F(kG), c, succ(l1));
    Derivation out = pred_cut_elim(d, zero(), l1, PredPart::Two);
    CHECK(out.bound == omega_pow(d.bound));
    CHECK(out.cutrank == l1);
    CHECK(out.op.gamma == add(d.op.gamma, d.bound));
    // the same window under part 1 crosses lambda+1
    CHECK_THROWS_AS(pred_cut_elim(d, zero(), l1), Error);
}

TEST_CASE("window violations") {
    Term w1t = T("W(0+1)");
    CHECK(window_violation(zero(), omega(), true).empty());
    CHECK_FALSE(window_violation(add(w1t, one()), add(w1t, omega()), true).empty());
    CHECK_FALSE(window_violation(big_i(), succ(big_i()), true).empty());
    CHECK(window_violation(add(w1t, nat(3)), add(w1t, omega()), true).empty());
    CHECK_FALSE(window_violation(w1t, add(w1t, one()), false).empty());
    CHECK(window_violation(add(w1t, one()), add(w1t, omega()), false).empty());
}

TEST_CASE("boundedness") {
    Formula g = F(kG);
    Derivation d = build_completeness(g);
    d.bound = nat(5);
    REQUIRE(check(d).ok());
    Derivation e = boundedness(d, g, nat(5), BoundSide::Exists);
    CHECK(e.seq == make_sequent({F("ex x in L(w^(0)+w^(0)+w^(0)+w^(0)+w^(0)) . mem(x,{{}})")}));
    CHECK(e.bound == d.bound);
    CHECK(e.cutrank == d.cutrank);
    // exists side needs a <= b
    CHECK_THROWS_AS(boundedness(d, g, nat(4), BoundSide::Exists), Error);

    Derivation t = build_tautology({}, g);
    Derivation u = boundedness(t, g, omega(), BoundSide::Dual);
    CHECK(u.bound == t.bound);
    CHECK(seq_contains(u.seq, neg(F("ex x in L(w^(w^(0))) . mem(x,{{}})"))));
}

TEST_CASE("collapsing") {
    Formula g = F(kG);
    Term s = T("W(0+1)");

    SUBCASE("cut-free tree") {
        Derivation d = build_completeness(g);
        Derivation out = collapse(d, w1(), s);
        CHECK(lt(out.bound, s));
        CHECK(out.bound == psi(w1(), collapse_index(zero(), s, d.bound)));
        CHECK(out.op.gamma == succ(collapse_index(zero(), s, d.bound)));
    }
    SUBCASE("small-rank cut is re-cut") {
        Formula c = F("ex x in {{}} . mem(x,{{}})");
        Derivation out = collapse(cut_on(g, c, succ(rk(c))), w1(), s);
        CHECK(out.rule.tag == RuleTag::Cut);
        CHECK(out.rule.main == c);
    }
    SUBCASE("rank between regulars") {
        Formula c = F("all x in {{}} . ex y in L(W(0+1)) . mem(y,{{}})");
        Derivation d = cut_on(g, c, T("W(0+1)+w^(0)+w^(0)+w^(0)"));
        Derivation out = collapse(d, w1(), T("W(w^(0)+1)"));
        CHECK(lt(out.bound, s));
        CHECK(cut_free(out));
    }
    SUBCASE("P_I-rank cut goes through the axiom reduction") {
        Formula c = pi_axiom_formula(zero());
        Derivation left = build_completeness(g, make_sequent({neg(c)}));
        Derivation right;
        right.op = make_operator(zero());
        right.kappa = reg_top();
        right.bound = zero();
        right.cutrank = zero();
        right.seq = make_sequent({c, g});
        right.rule = rule_axpi(zero());
        Derivation d;
        d.op = make_operator(zero());
        d.kappa = reg_top();
        d.bound = succ(left.bound);
        d.cutrank = succ(big_i());
        d.seq = make_sequent({g});
        d.rule = rule_cut(c);
        d.children = {left, right};
        REQUIRE(check(d).ok());
        Derivation out = collapse(d, w1(), big_i());
        CHECK(cut_free(out));
        CHECK(out.bound == psi(w1(), collapse_index(zero(), big_i(), d.bound)));
    }
    SUBCASE("hypotheses") {
        Derivation d = build_completeness(g);
        Formula c = F("all x in {{}} . ex y in L(W(0+1)) . mem(y,{{}})");
        // cutrank above mu = sigma+1
        CHECK_THROWS_AS(collapse(cut_on(g, c, T("W(0+1)+w^(0)+w^(0)+w^(0)")), w1(), s), Error);
        // kappa below sigma
        CHECK_THROWS_AS(collapse(weaken_kappa(d, w1()), w1(), T("W(w^(0)+1)")), Error);
        // a non-prenex universal over L(lambda) is outside Sigma-hat(lambda)
        Formula h = F("ex x in L(W(0+1)) . or(reg(x), mem(x,{{}}))");
        CHECK_THROWS_AS(collapse(build_tautology({}, h), w1(), s), Error);
    }
}

TEST_CASE("pipeline on the replica") {
    for (unsigned k : {1u, 2u}) {
        Derivation in = build_replica_input(2, k);
        PipelineResult r = pipeline_complete_ce(in, 2, k);
        Term b = omega_tower(2, add(i_times(3), nat(k)));
        CHECK(r.b == b);
        CHECK(r.beta == psi(w1(), b));
        CHECK(r.witness_bound == veblen(r.beta, r.beta));
        CHECK(cut_free(r.d));
        CHECK(check(r.d).ok());
        CHECK(r.truth);
        CHECK(lt(r.witness_bound, in.bound));
    }
}

TEST_CASE("pipeline on a cut-free input") {
    Derivation d = build_completeness(F(kG));
    d.bound = add(i_times(2), one());
    d.cutrank = add(big_i(), nat(2));
    REQUIRE(check(d).ok());
    PipelineResult r = pipeline_complete_ce(d, 2, 1);
    CHECK(cut_free(r.d));
    for (const auto& s : r.stages)
        if (s.stage.rfind("predce", 0) == 0) CHECK(le(s.cut_after, s.cut_before));
}

TEST_CASE("pipeline cap") {
    try {
        pipeline_complete_ce(build_replica_input(3, 1), 3, 1);
        FAIL("expected a cap error at n = 2");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Cap);
    }
    Config c = config();
    c.n = 3;
    set_config(c);
    PipelineResult r = pipeline_complete_ce(build_replica_input(3, 1), 3, 1);
    CHECK(r.truth);
    c.n = 2;
    set_config(c);
}
