#include "ordkit/transform.hpp"

#include <functional>

#include "ordkit/arith.hpp"
#include "ordkit/config.hpp"
#include "ordkit/errors.hpp"

namespace ordkit {

Term tmax(const Term& a, const Term& b) { return lt(a, b) ? b : a; }

namespace {

Term from_parts(const std::vector<Term>& ps) {
    if (ps.empty()) return zero();
    if (ps.size() == 1) return ps[0];
    return sum(ps);
}

}  // namespace

Term sub_left(const Term& c, const Term& r) {
    if (lt(r, c)) fail(ErrorKind::Domain, "cannot subtract " + render(c) + " from the smaller " + render(r));
    auto cp = parts_of(c);
    auto rp = parts_of(r);
    std::size_t i = 0;
    while (i < cp.size() && i < rp.size() && cp[i] == rp[i]) ++i;
    return from_parts(std::vector<Term>(rp.begin() + static_cast<long>(i), rp.end()));
}

Term collapse_index(const Term& gamma, const Term& sigma, const Term& a) {
    return add(gamma, omega_pow(add(sigma, a)));
}

namespace {

bool is_regular_term(const Term& t) { return t.kind() != Kind::Mu && is_regular_const(Const::of(t)); }

Reg slot_of_regular(const Term& t) {
    if (t.kind() == Kind::BigI) return reg_top();
    if (!is_regular_term(t)) fail(ErrorKind::Domain, render(t) + " is not a regular cardinal below I");
    auto ps = parts_of(t->args[0]);
    ps.pop_back();
    return reg_succ(from_parts(ps));
}

// least element of R+ that is >= t
Reg regular_at_least(const Term& t) {
    if (t.kind() == Kind::BigI || is_regular_term(t)) return slot_of_regular(t);
    if (!lt(t, big_i())) fail(ErrorKind::Domain, "no regular slot at or above " + render(t));
    return next_regular(t);
}

Reg min_reg(const Reg& a, const Reg& b) { return le(reg_ordinal(a), reg_ordinal(b)) ? a : b; }

Operator join(const Operator& a, const Operator& b) {
    std::vector<Const> th = a.theta;
    th.insert(th.end(), b.theta.begin(), b.theta.end());
    return make_operator(tmax(a.gamma, b.gamma), std::move(th));
}

Operator with_param(const Operator& op, const Const& iota) {
    if (const_in_operator(iota, op)) return op;
    std::vector<Const> th = op.theta;
    th.push_back(iota);
    return make_operator(op.gamma, std::move(th));
}

Derivation make_node(Operator op, Reg kappa, Term bound, Term cutrank, Sequent seq, Rule rule,
                     std::vector<Derivation> children) {
    Derivation d;
    d.op = std::move(op);
    d.kappa = std::move(kappa);
    d.bound = std::move(bound);
    d.cutrank = std::move(cutrank);
    d.seq = std::move(seq);
    d.rule = std::move(rule);
    d.children = std::move(children);
    return d;
}

// every node's operator index raised to at least g
Derivation raise_op(const Derivation& d, const Term& g) {
    Derivation out = d;
    out.op.gamma = tmax(d.op.gamma, g);
    for (auto& c : out.children) c = raise_op(c, g);
    return out;
}

Derivation set_kappa(const Derivation& d, const Reg& k) {
    Derivation out = d;
    out.kappa = k;
    for (auto& c : out.children) c = set_kappa(c, k);
    return out;
}

Derivation lift(Derivation d, const Term& bound) {
    if (lt(bound, d.bound)) fail(ErrorKind::Domain, "cannot lower a bound from " + render(d.bound) + " to " + render(bound));
    d.bound = bound;
    return d;
}

Term max_child_bound(const Derivation& d) {
    Term m = zero();
    for (const auto& c : d.children) m = tmax(m, c.bound);
    return m;
}

Sequent replace(const Sequent& s, const Formula& from, const Formula& to) {
    if (!seq_contains(s, from)) return s;
    return seq_with(seq_without(s, from), to);
}

bool is_f_rule(const Rule& r) { return r.tag == RuleTag::F1 || r.tag == RuleTag::FN; }

// x is produced by an F-rule from Gamma_0 (and not merely carried in Lambda)
bool f_image(const Derivation& n, const Formula& x) {
    const Rule& r = n.rule;
    if (!is_f_rule(r) || seq_contains(r.side, x)) return false;
    for (const auto& g : r.gamma0)
        if (mostowski_apply(g, r.x, r.slot) == x) return true;
    return false;
}

// least bound an (or)-node needs for its witness: "rk_L(iota) < kappa => rk_L(iota) < a"
Term or_floor(const Formula& main, const Const& iota, const Reg& kappa) {
    if (main.kind() != FKind::Ex && main.kind() != FKind::All) return zero();
    if (iota.tag == Const::Tag::Ord && iota.ord.kind() == Kind::Mu) return rank_interval(iota.ord).hi;
    Term r = rk_l(iota);
    return lt(r, reg_ordinal(kappa)) ? succ(r) : zero();
}

Term twice(const Term& t) { return add(t, t); }

// ---------------------------------------------------------------- builders

Derivation taut_node(const Formula& a, const Operator& op) {
    Formula na = neg(a);
    Decomposition da = decompose(a);
    bool a_conj = da.junctor == Junctor::Conj;
    const Formula& conj = a_conj ? a : na;
    const Formula& disj = a_conj ? na : a;
    Decomposition dc = a_conj ? da : decompose(na);
    if (dc.space == WitnessSpace::SymbolicLevel)
        fail(ErrorKind::Domain, "non-enumerable decomposition of " + conj.text());
    Sequent base = make_sequent({a, na});
    std::vector<Derivation> kids;
    Term top = zero();
    for (const auto& br : dc.branches) {
        Formula dual = branch_for(disj, br.iota);
        if (dual != neg(br.f)) fail(ErrorKind::Domain, "branches at " + render(br.iota) + " are not dual");
        Derivation sub = taut_node(br.f, op);
        Term h = tmax(succ(sub.bound), or_floor(disj, br.iota, reg_top()));
        kids.push_back(make_node(op, reg_top(), h, zero(), seq_with(base, br.f), rule_or(disj, br.iota), {sub}));
        top = tmax(top, succ(h));
    }
    return make_node(op, reg_top(), top, zero(), base, rule_and(conj), std::move(kids));
}

Derivation comp_node(const Formula& a, const Operator& op) {
    Decomposition dd = decompose(a);
    if (dd.space == WitnessSpace::SymbolicLevel)
        fail(ErrorKind::Domain, "non-enumerable decomposition of " + a.text());
    Sequent s = make_sequent({a});
    if (dd.junctor == Junctor::Conj) {
        std::vector<Derivation> kids;
        Term top = zero();
        for (const auto& br : dd.branches) {
            auto v = try_eval(br.f);
            if (!v || !*v) fail(ErrorKind::Domain, "conjunct not verifiably true: " + br.f.text());
            kids.push_back(comp_node(br.f, op));
            top = tmax(top, succ(kids.back().bound));
        }
        return make_node(op, reg_top(), top, zero(), s, rule_and(a), std::move(kids));
    }
    for (const auto& br : dd.branches) {
        auto v = try_eval(br.f);
        if (!v || !*v) continue;
        Derivation sub = comp_node(br.f, op);
        Term h = tmax(succ(sub.bound), or_floor(a, br.iota, reg_top()));
        return make_node(op, reg_top(), h, zero(), s, rule_or(a, br.iota), {sub});
    }
    fail(ErrorKind::Domain, "no true disjunct for " + a.text());
}

}  // namespace

Derivation build_tautology(const Sequent& gamma, const Formula& a, const Operator& op) {
    if (!is_sentence(a)) fail(ErrorKind::Domain, "tautology needs a sentence: " + a.text());
    Derivation d = taut_node(a, op);
    Term target = twice(rk(a));
    if (lt(target, d.bound))
        fail(ErrorKind::Domain, "tautology height " + render(d.bound) + " exceeds 2rk = " + render(target));
    d.bound = target;
    d.seq = seq_union(gamma, d.seq);
    require_ok(d, "build_tautology");
    return d;
}

Derivation build_completeness(const Formula& a, const Sequent& side, const Operator& op) {
    if (!eval_sentence(a)) fail(ErrorKind::Domain, "completeness needs a true sentence: " + a.text());
    int n = config().n;
    if (!in_sigma(a, n) && !in_pi(a, n))
        fail(ErrorKind::Domain, "completeness needs a Sigma_n or Pi_n sentence, got " + to_string(sigma_pi_class(a)));
    Derivation d = comp_node(a, op);
    Term target = twice(rk(a));
    if (lt(target, d.bound))
        fail(ErrorKind::Domain, "completeness height " + render(d.bound) + " exceeds 2rk = " + render(target));
    d.bound = target;
    d.seq = seq_union(side, d.seq);
    require_ok(d, "build_completeness");
    return d;
}

// ---------------------------------------------------------------- false sentences, inversion

namespace {

Derivation elim_false_rec(const Derivation& n, const Formula& a) {
    const Rule& r = n.rule;
    if ((r.tag == RuleTag::Or || r.tag == RuleTag::And) && r.main == a) {
        const Derivation* pick = nullptr;
        Formula minor;
        if (r.tag == RuleTag::Or) {
            pick = &n.children[0];
            minor = branch_for(a, r.iota);
        } else {
            Decomposition dd = decompose(a);
            for (std::size_t i = 0; i < dd.branches.size() && !pick; ++i) {
                auto v = try_eval(dd.branches[i].f);
                if (v && !*v) {
                    pick = &n.children[i];
                    minor = dd.branches[i].f;
                }
            }
            if (!pick) fail(ErrorKind::Domain, "no false conjunct of " + a.text());
        }
        Derivation out = *pick;
        if (seq_contains(out.seq, a)) out = elim_false_rec(out, a);
        if (seq_contains(out.seq, minor)) {
            auto v = try_eval(minor);
            if (!v || *v) fail(ErrorKind::Domain, "minor formula not verifiably false: " + minor.text());
            out = elim_false_rec(out, minor);
        }
        out.bound = n.bound;
        out.cutrank = n.cutrank;
        out.op = n.op;
        out.kappa = n.kappa;
        out.seq = seq_without(n.seq, a);
        return out;
    }
    if (f_image(n, a)) fail(ErrorKind::Domain, "false sentence produced by an F-rule: " + a.text());
    Derivation out = n;
    out.seq = seq_without(n.seq, a);
    if (is_f_rule(r)) out.rule.side = seq_without(r.side, a);
    for (auto& c : out.children)
        if (seq_contains(c.seq, a)) c = elim_false_rec(c, a);
    return out;
}

Derivation invert_rec(const Derivation& n, const Formula& target, const Formula& inst, const Const& w) {
    const Rule& r = n.rule;
    Sequent seq2 = replace(n.seq, target, inst);
    if ((r.tag == RuleTag::Or || r.tag == RuleTag::And) && r.main == target) {
        if (r.tag == RuleTag::Or && r.iota != w)
            fail(ErrorKind::Check, "witness " + render(r.iota) + " differs from the least one " + render(w));
        Derivation out = n.children[0];
        if (seq_contains(out.seq, target)) out = invert_rec(out, target, inst, w);
        out.bound = n.bound;
        out.cutrank = n.cutrank;
        out.kappa = n.kappa;
        out.op = r.tag == RuleTag::And ? with_param(n.op, w) : n.op;
        out.seq = seq2;
        return out;
    }
    if (f_image(n, target)) {
        // transfer: invert the preimage in Gamma_0, then map its instance through the collapse
        Formula phi;
        for (const auto& g : r.gamma0)
            if (mostowski_apply(g, r.x, r.slot) == target) phi = g;
        Decomposition dp = decompose(phi);
        if (!dp.mu_clause) fail(ErrorKind::Domain, "preimage is not a witness-clause formula: " + phi.text());
        Formula phi_inst = dp.branches[0].f;
        if (mostowski_apply(phi_inst, r.x, r.slot) != inst)
            fail(ErrorKind::Domain, "witness does not map through the collapse at " + render(r.x));
        Derivation out = n;
        out.seq = seq2;
        std::vector<Formula> g0;
        for (const auto& g : r.gamma0) g0.push_back(g == phi ? phi_inst : g);
        out.rule.gamma0 = make_sequent(std::move(g0));
        Derivation& c = out.children[0];
        if (seq_contains(c.seq, phi)) c = invert_rec(c, phi, phi_inst, dp.branches[0].iota);
        return out;
    }
    Derivation out = n;
    out.seq = seq2;
    if (is_f_rule(r)) out.rule.side = replace(r.side, target, inst);
    for (auto& c : out.children)
        if (seq_contains(c.seq, target)) c = invert_rec(c, target, inst, w);
    return out;
}

// Delta, D  ~>  Delta, D_iota for a conjunctive D
Derivation invert_conj(const Derivation& n, const Formula& d, const Formula& di, const Const& iota) {
    const Rule& r = n.rule;
    Sequent seq2 = replace(n.seq, d, di);
    if (r.tag == RuleTag::And && r.main == d) {
        Decomposition dd = decompose(d);
        const Derivation* pick = nullptr;
        for (std::size_t i = 0; i < dd.branches.size(); ++i)
            if (dd.branches[i].iota == iota) pick = &n.children[i];
        if (!pick) fail(ErrorKind::Domain, "index " + render(iota) + " not among the premises of " + d.text());
        Derivation out = *pick;
        if (seq_contains(out.seq, d)) out = invert_conj(out, d, di, iota);
        out.bound = n.bound;
        out.cutrank = n.cutrank;
        out.kappa = n.kappa;
        out.op = with_param(n.op, iota);
        out.seq = seq2;
        return out;
    }
    if (f_image(n, d)) fail(ErrorKind::Domain, "inversion through an F-rule image is not supported: " + d.text());
    Derivation out = n;
    out.seq = seq2;
    if (is_f_rule(r)) out.rule.side = replace(r.side, d, di);
    for (auto& c : out.children)
        if (seq_contains(c.seq, d)) c = invert_conj(c, d, di, iota);
    return out;
}

}  // namespace

Derivation eliminate_false(const Derivation& d, const Formula& a) {
    require_ok(d, "eliminate_false input");
    if (!seq_contains(d.seq, a)) fail(ErrorKind::Domain, "formula not in the root sequent: " + a.text());
    if (!in_sigma(a, config().n)) fail(ErrorKind::Domain, "not a Sigma_n sentence: " + a.text());
    auto v = try_eval(a);
    if (!v) fail(ErrorKind::CannotVerify, "truth of " + a.text() + " not decidable here");
    if (*v) fail(ErrorKind::Domain, "sentence is true: " + a.text());
    if (d.seq.size() == 1) fail(ErrorKind::Domain, "eliminating the only formula would derive the empty sequent");
    Derivation out = elim_false_rec(d, a);
    require_ok(out, "eliminate_false");
    return out;
}

Derivation invert(const Derivation& d, const Formula& target) {
    require_ok(d, "invert input");
    if (!seq_contains(d.seq, target)) fail(ErrorKind::Domain, "target absent from the root sequent: " + target.text());
    if (target.kind() != FKind::Ex && target.kind() != FKind::All)
        fail(ErrorKind::Domain, "inversion needs a quantified target");
    Decomposition dt = decompose(target);
    if (!dt.mu_clause) fail(ErrorKind::Domain, "target is not in the witness clause: " + target.text());
    const Branch& br = dt.branches[0];
    Derivation out = invert_rec(d, target, br.f, br.iota);
    require_ok(out, "invert");
    return out;
}

// ---------------------------------------------------------------- reduction

namespace {

struct Reducer {
    const Derivation& dl;
    Formula c, nc;
    Term cut;
    Sequent delta;

    Derivation run(const Derivation& n) const {
        Derivation out;
        out.op = join(dl.op, n.op);
        out.kappa = min_reg(dl.kappa, n.kappa);
        out.bound = add(dl.bound, n.bound);
        out.cutrank = cut;
        out.seq = seq_union(delta, seq_without(n.seq, c));
        const Rule& r = n.rule;
        if (r.tag == RuleTag::Or && r.main == c) {
            const Derivation& ch = n.children[0];
            Formula ci = branch_for(c, r.iota);
            Derivation right = seq_contains(ch.seq, c) ? run(ch) : ch;
            Derivation left = dl;
            Formula nci = branch_for(nc, r.iota);
            if (nci != neg(ci)) fail(ErrorKind::Domain, "branches of the cut formula are not dual");
            if (seq_contains(dl.seq, nc)) left = invert_conj(dl, nc, nci, r.iota);
            out.rule = rule_cut(ci);
            out.children = {left, right};
            return out;
        }
        if (f_image(n, c)) fail(ErrorKind::Domain, "cut formula produced by an F-rule: transfer not supported");
        out.rule = r;
        if (is_f_rule(r)) out.rule.side = seq_union(delta, seq_without(r.side, c));
        for (const auto& ch : n.children) out.children.push_back(seq_contains(ch.seq, c) ? run(ch) : ch);
        return out;
    }
};

Derivation reduce_impl(const Derivation& dl, const Derivation& dr, const Formula& c, const Term& cut) {
    Formula nc = neg(c);
    Reducer red{dl, c, nc, cut, seq_without(dl.seq, nc)};
    return red.run(dr);
}

Derivation drop_axiom_rec(const Derivation& n, const Formula& nc, const Term& g) {
    if ((n.rule.tag == RuleTag::Or || n.rule.tag == RuleTag::And) && n.rule.main == nc)
        fail(ErrorKind::Domain, "negated axiom formula is active at a rule: " + nc.text());
    if (f_image(n, nc)) fail(ErrorKind::Domain, "negated axiom formula produced by an F-rule");
    Derivation out = n;
    out.op.gamma = tmax(n.op.gamma, g);
    out.seq = seq_without(n.seq, nc);
    if (is_f_rule(n.rule)) out.rule.side = seq_without(n.rule.side, nc);
    for (auto& c : out.children) c = seq_contains(c.seq, nc) ? drop_axiom_rec(c, nc, g) : raise_op(c, g);
    return out;
}

Derivation reduce_axiom_impl(const Derivation& d, const Formula& c, const Term& beta) {
    if (!in_hull(beta, beta, zero())) fail(ErrorKind::Domain, "index " + render(beta) + " is not self-controlled");
    if (lt(beta, d.op.gamma)) fail(ErrorKind::Domain, "derivation operator exceeds the index " + render(beta));
    axiom_witness(c, beta);
    return drop_axiom_rec(d, neg(c), succ(beta));
}

}  // namespace

Derivation reduce_cut(const Derivation& dleft, const Derivation& dright, const Formula& c, const Term& cutrank) {
    if (is_p_axiom_shape(c) || is_p_axiom_shape(neg(c)))
        fail(ErrorKind::Domain, "cut formula has the excluded axiom shape: " + c.text());
    if (!le(rk(c), cutrank)) fail(ErrorKind::Domain, "rank " + render(rk(c)) + " exceeds " + render(cutrank));
    if (decompose(c).junctor != Junctor::Disj) fail(ErrorKind::Domain, "cut formula must be disjunctive: " + c.text());
    require_ok(dleft, "reduce_cut left input");
    require_ok(dright, "reduce_cut right input");
    if (!le(dleft.cutrank, cutrank) || !le(dright.cutrank, cutrank))
        fail(ErrorKind::Domain, "inputs exceed cutrank " + render(cutrank));
    Derivation out = reduce_impl(dleft, dright, c, cutrank);
    require_ok(out, "reduce_cut");
    if (out.bound != add(dleft.bound, dright.bound)) fail(ErrorKind::Check, "reduce_cut bound is not a+b");
    return out;
}

AxiomWitness axiom_witness(const Formula& c, const Term& beta) {
    if (!is_p_axiom_shape(c)) fail(ErrorKind::Domain, "not a P-axiom formula: " + c.text());
    const Term& bound = c->bound.c.ord;
    Reg slot = bound.kind() == Kind::BigI ? reg_top() : slot_of_regular(bound);
    const Formula& body = slot.top() ? c->subs[0] : c->subs[0]->subs[0];
    Term alpha = body->subs[0]->args[0].ord;
    Term iota = psi(slot, beta);
    if (!is_normal(iota)) fail(ErrorKind::Domain, "witness " + render(iota) + " has no normal notation");
    if (!lt(alpha, iota)) fail(ErrorKind::Domain, "alpha " + render(alpha) + " not below " + render(iota));
    Term nu = slot.top() ? fcn(iota) : fc1(iota, slot);
    if (!is_normal(nu)) fail(ErrorKind::Domain, "collapse value " + render(nu) + " is not normal");
    return {iota, nu};
}

Derivation reduce_axiom_P(const Derivation& d, const Formula& c, const Term& beta) {
    require_ok(d, "reduce_axiom_P input");
    if (!seq_contains(d.seq, neg(c))) fail(ErrorKind::Domain, "root sequent lacks the negated axiom formula");
    Derivation out = reduce_axiom_impl(d, c, beta);
    require_ok(out, "reduce_axiom_P");
    return out;
}

// ---------------------------------------------------------------- predicative cut-elimination

std::string window_violation(const Term& c, const Term& h, bool successor_points) {
    Term i = big_i();
    if (le(c, i) && lt(i, h)) return "I lies in [" + render(c) + ", " + render(h) + ")";
    std::vector<Term> cands;
    if (successor_points) {
        auto ps = parts_of(c);
        for (int k = 0; k < 2 && !ps.empty() && ps.back() == one(); ++k) ps.pop_back();
        Term c0 = from_parts(ps);
        if (is_regular_term(c0)) cands.push_back(c0);
    } else if (is_regular_term(c) && lt(c, h)) {
        return render(c) + " is regular and lies in the window";
    }
    if (lt(c, i)) {
        Reg r = next_regular(c);
        if (!r.top()) cands.push_back(reg_ordinal(r));
    }
    for (const auto& lam : cands) {
        if (!successor_points) {
            if (lt(lam, h)) return render(lam) + " is regular and lies in the window";
            continue;
        }
        for (unsigned j = 1; j <= 2; ++j) {
            Term x = add(lam, finite(j));
            if (le(c, x) && lt(x, h)) return render(x) + " = lambda+" + std::to_string(j) + " lies in the window";
        }
    }
    return "";
}

namespace {

Derivation elim(const Derivation& n, const Term& a, const Term& c, bool axiom_ok) {
    Term nb = veblen(a, n.bound);
    if (le(n.cutrank, c)) {
        // nothing to eliminate below: keep the subtree, re-bound the root
        Derivation out = n;
        out.bound = nb;
        out.cutrank = c;
        return out;
    }
    std::vector<Derivation> ch;
    for (const auto& k : n.children) ch.push_back(elim(k, a, c, axiom_ok));
    if (n.rule.tag != RuleTag::Cut || lt(rk(n.rule.main), c)) {
        Derivation out = n;
        out.children = std::move(ch);
        out.bound = nb;
        out.cutrank = c;
        return out;
    }
    const Formula& cf = n.rule.main;
    Term r = rk(cf);
    Derivation res;
    if (is_p_axiom_shape(cf) || is_p_axiom_shape(neg(cf))) {
        if (!axiom_ok) fail(ErrorKind::Domain, "P-axiom cut inside the elimination window: " + cf.text());
        bool pos = is_p_axiom_shape(cf);
        const Formula pf = pos ? cf : neg(cf);
        const Derivation& side = pos ? ch[0] : ch[1];
        res = reduce_axiom_impl(side, pf, side.op.gamma);
    } else if (r == c) {
        Formula e = cf;
        const Derivation* l = &ch[0];
        const Derivation* rr = &ch[1];
        if (decompose(cf).junctor != Junctor::Disj) {
            e = neg(cf);
            std::swap(l, rr);
        }
        res = reduce_impl(*l, *rr, e, c);
    } else {
        // rk(C) = c + delta with delta < w^e*(m+1), e < a: peel off w^e blocks one at a time
        Term delta = sub_left(c, r);
        auto ps = parts_of(delta);
        Term lead = ps[0];
        Term e = lead.kind() == Kind::Pow ? lead->args[0] : lead;
        unsigned m = 0;
        while (m < ps.size() && ps[m] == lead) ++m;
        Term step = omega_pow(e);
        std::vector<Term> levels{c};
        for (unsigned j = 0; j <= m; ++j) levels.push_back(add(levels.back(), step));
        Derivation nn = n;
        nn.children = ch;
        nn.bound = succ(max_child_bound(nn));
        nn.cutrank = levels.back();
        for (unsigned j = m + 1; j-- > 0;) nn = elim(nn, e, levels[j], axiom_ok);
        res = std::move(nn);
    }
    if (lt(nb, res.bound)) fail(ErrorKind::Check, "eliminated subtree bound " + render(res.bound) + " exceeds " + render(nb));
    res.bound = nb;
    res.cutrank = c;
    res.kappa = n.kappa;
    res.seq = n.seq;
    res.op = join(res.op, n.op);
    return res;
}

Derivation pred_impl(const Derivation& d, const Term& a, const Term& c, PredPart part) {
    Term b = d.bound;
    Term aa = a;
    switch (part) {
        case PredPart::One:
        case PredPart::Four: {
            Term h = add(c, omega_pow(a));
            if (!le(d.cutrank, h))
                fail(ErrorKind::Domain, "cutrank " + render(d.cutrank) + " above c+w^a = " + render(h));
            std::string v = window_violation(c, h, part == PredPart::One);
            if (!v.empty()) fail(ErrorKind::Domain, "window violated: " + v);
            break;
        }
        case PredPart::Two: {
            auto ps = parts_of(c);
            if (ps.empty() || ps.back() != one()) fail(ErrorKind::Domain, "part 2 needs c = lambda+1");
            ps.pop_back();
            if (!is_regular_term(from_parts(ps))) fail(ErrorKind::Domain, "part 2 needs c = lambda+1 with lambda regular");
            aa = zero();
            if (!le(d.cutrank, succ(c))) fail(ErrorKind::Domain, "part 2 needs cutrank at most lambda+2");
            break;
        }
        case PredPart::Three:
            if (c != big_i()) fail(ErrorKind::Domain, "part 3 needs c = I");
            aa = zero();
            if (!le(d.cutrank, succ(c))) fail(ErrorKind::Domain, "part 3 needs cutrank at most I+1");
            break;
    }
    Derivation out = elim(d, aa, c, part != PredPart::One);
    Term nb = part == PredPart::Two || part == PredPart::Three ? omega_pow(b) : veblen(aa, b);
    if (out.bound != nb) fail(ErrorKind::Check, "predicative elimination bound mismatch");
    Term g = d.op.gamma;
    switch (part) {
        case PredPart::One: break;
        case PredPart::Two:
        case PredPart::Three: out = raise_op(out, add(g, b)); break;
        case PredPart::Four: out = raise_op(out, add(g, nb)); break;
    }
    return out;
}

}  // namespace

Derivation pred_cut_elim(const Derivation& d, const Term& a, const Term& c, PredPart part) {
    require_ok(d, "pred_cut_elim input");
    if (!term_in_operator(a, d.op)) fail(ErrorKind::Domain, render(a) + " is not in the operator");
    Derivation out = pred_impl(d, a, c, part);
    require_ok(out, "pred_cut_elim");
    return out;
}

// ---------------------------------------------------------------- boundedness

namespace {

Derivation bounded_rec(const Derivation& n, const Formula& x, const Formula& xp, BoundSide side) {
    const Rule& r = n.rule;
    Derivation out = n;
    out.seq = replace(n.seq, x, xp);
    if ((r.tag == RuleTag::Or || r.tag == RuleTag::And) && r.main == x) {
        if (r.tag == RuleTag::Or) {
            if (side != BoundSide::Exists) fail(ErrorKind::Domain, "(or) on the universal side");
            Formula old = branch_for(x, r.iota);
            Formula now = branch_for(xp, r.iota);
            if (old != now) fail(ErrorKind::Domain, "witness clause changes under the restriction at " + render(r.iota));
            out.rule = rule_or(xp, r.iota);
            Derivation& c = out.children[0];
            if (seq_contains(c.seq, x)) c = bounded_rec(c, x, xp, side);
            return out;
        }
        Decomposition dn = decompose(xp);
        Decomposition dold = decompose(x);
        if (dn.space == WitnessSpace::SymbolicLevel) fail(ErrorKind::Domain, "restricted conjunction not enumerable");
        out.children.clear();
        for (const auto& br : dn.branches) {
            const Derivation* pick = nullptr;
            for (std::size_t i = 0; i < dold.branches.size() && !pick; ++i)
                if (dold.branches[i].iota == br.iota && dold.branches[i].f == br.f) pick = &n.children[i];
            if (!pick) fail(ErrorKind::Domain, "no premise for index " + render(br.iota) + " after restriction");
            out.children.push_back(seq_contains(pick->seq, x) ? bounded_rec(*pick, x, xp, side) : *pick);
        }
        out.rule = rule_and(xp);
        return out;
    }
    if (f_image(n, x)) fail(ErrorKind::Domain, "restricted formula produced by an F-rule: " + x.text());
    if (is_f_rule(r)) out.rule.side = replace(r.side, x, xp);
    for (auto& c : out.children)
        if (seq_contains(c.seq, x)) c = bounded_rec(c, x, xp, side);
    return out;
}

Formula restrict(const Formula& c, const Term& b) { return f_ex(c->var, Bound::of_level(b), c->subs[0]); }

Derivation bounded_impl(const Derivation& d, const Formula& c, const Term& b, BoundSide side) {
    if (c.kind() != FKind::Ex || !c->bound.level) fail(ErrorKind::Domain, "needs an existential over a level: " + c.text());
    Term lam = c->bound.c.ord;
    if (lam.kind() != Kind::BigI && !is_regular_term(lam)) fail(ErrorKind::Domain, render(lam) + " is not in R+");
    if (rk(c) != lam) fail(ErrorKind::Domain, "rank of " + c.text() + " is " + render(rk(c)) + ", not " + render(lam));
    if (is_p_axiom_shape(c)) fail(ErrorKind::Domain, "excluded axiom shape");
    if (!lt(b, lam)) fail(ErrorKind::Domain, render(b) + " is not below " + render(lam));
    if (!term_in_operator(b, d.op)) fail(ErrorKind::Domain, render(b) + " is not in the operator");
    if (side == BoundSide::Exists) {
        if (!le(d.bound, b)) fail(ErrorKind::Domain, "bound " + render(d.bound) + " exceeds " + render(b));
        if (!le(lam, reg_ordinal(d.kappa))) fail(ErrorKind::Domain, "kappa below " + render(lam));
    }
    Formula x = side == BoundSide::Exists ? c : neg(c);
    Formula xp = side == BoundSide::Exists ? restrict(c, b) : neg(restrict(c, b));
    if (!seq_contains(d.seq, x)) fail(ErrorKind::Domain, "root sequent lacks " + x.text());
    return bounded_rec(d, x, xp, side);
}

}  // namespace

Derivation boundedness(const Derivation& d, const Formula& c, const Term& b, BoundSide side) {
    require_ok(d, "boundedness input");
    Derivation out = bounded_impl(d, c, b, side);
    require_ok(out, "boundedness");
    return out;
}

// ---------------------------------------------------------------- collapsing

namespace {

Term psi_of(const Reg& k, const Term& a) {
    Term t = psi(k, a);
    if (!is_normal(t)) fail(ErrorKind::Domain, "collapse value " + render(t) + " has no normal notation");
    return t;
}

struct Collapser {
    // one collapse call: every node ends at the operator of the root index
    Derivation top(const Derivation& n, const Term& g, const Reg& lam, const Term& sigma) const {
        return raise_op(col(n, g, lam, sigma), succ(collapse_index(g, sigma, n.bound)));
    }

    Derivation col(const Derivation& n, const Term& g, const Reg& lam, const Term& sigma) const {
        Term ah = collapse_index(g, sigma, n.bound);
        Term bnd = psi_of(lam, ah);
        Derivation out = make_node(make_operator(succ(ah), n.op.theta), lam, bnd, bnd, n.seq, n.rule, {});
        switch (n.rule.tag) {
            case RuleTag::AxP:
            case RuleTag::AxPI: return out;
            case RuleTag::Cut: return cut_case(n, g, lam, sigma, ah, bnd);
            default:
                for (const auto& c : n.children) out.children.push_back(col(c, g, lam, sigma));
                return out;
        }
    }

    Derivation cut_case(const Derivation& n, const Term& g, const Reg& lam, const Term& sigma, const Term& ah,
                        const Term& bnd) const {
        const Formula& cf = n.rule.main;
        Term r = rk(cf);
        if (lt(r, reg_ordinal(lam))) {
            Derivation out = make_node(make_operator(succ(ah), n.op.theta), lam, bnd, bnd, n.seq, n.rule, {});
            for (const auto& c : n.children) out.children.push_back(col(c, g, lam, sigma));
            return out;
        }
        Term a0 = max_child_bound(n);
        if (r.kind() == Kind::BigI || is_regular_term(r)) return case_regular(n, g, lam, sigma, ah, bnd, r, a0);
        return case_between(n, g, lam, sigma, ah, bnd, r, a0);
    }

    // lambda <= rk(C) < mu, rk(C) not in R+
    Derivation case_between(const Derivation& n, const Term& g, const Reg& lam, const Term& sigma, const Term& ah,
                            const Term& bnd, const Term& r, const Term& a0) const {
        Reg pi = next_regular(r);
        if (pi.top()) fail(ErrorKind::Domain, "no regular between " + render(r) + " and I");
        Term ah0 = collapse_index(g, sigma, a0);
        Term beta = psi_of(pi, ah0);
        Derivation c0 = top(lift(n.children[0], a0), g, pi, sigma);
        Derivation c1 = top(lift(n.children[1], a0), g, pi, sigma);
        Term wa = aleph_of(pi.pred);
        Term mu1 = is_regular_term(wa) ? succ(wa) : wa;
        Term cr = add(mu1, omega_pow(beta));
        if (!lt(r, cr)) fail(ErrorKind::Domain, "cut rank " + render(r) + " not below " + render(cr));
        Derivation nn = make_node(make_operator(succ(ah0), n.op.theta), pi, succ(beta), cr, n.seq, n.rule, {c0, c1});
        Derivation p = pred_impl(nn, beta, mu1, PredPart::Four);
        return main_step(n, p, lam, wa, ah, bnd);
    }

    // rk(C) = pi in R+
    Derivation case_regular(const Derivation& n, const Term& g, const Reg& lam, const Term& sigma, const Term& ah,
                            const Term& bnd, const Term& r, const Term& a0) const {
        const Formula& cf = n.rule.main;
        Reg pi = slot_of_regular(r);
        if (is_p_axiom_shape(cf) || is_p_axiom_shape(neg(cf))) {
            bool pos = is_p_axiom_shape(cf);
            const Formula pf = pos ? cf : neg(cf);
            const Derivation& left = pos ? n.children[0] : n.children[1];
            Derivation red = reduce_axiom_impl(left, pf, g);
            Term g1 = succ(g);
            Derivation res = top(red, g1, lam, sigma);
            Term ah1 = collapse_index(g1, sigma, red.bound);
            return finish(n, res, ah1, ah, bnd, lam);
        }
        Formula e = cf.kind() == FKind::Ex ? cf : neg(cf);
        if (e.kind() != FKind::Ex || !e->bound.level || rk_l(e->bound) != r)
            fail(ErrorKind::Domain, "a cut of regular rank needs an existential over L(" + render(r) + "): " + cf.text());
        bool pos = e == cf;
        const Derivation& right = pos ? n.children[1] : n.children[0];
        const Derivation& left = pos ? n.children[0] : n.children[1];
        Term ah0 = collapse_index(g, sigma, a0);
        Term b0 = psi_of(pi, ah0);
        Derivation r0 = bounded_impl(top(lift(right, a0), g, pi, sigma), e, b0, BoundSide::Exists);
        Derivation lb = bounded_impl(raise_op(lift(left, a0), succ(ah0)), e, b0, BoundSide::Dual);
        Term g1 = succ(ah0);
        Term ah1 = collapse_index(g1, sigma, a0);
        Term b1 = psi_of(pi, ah1);
        Derivation l1 = top(lb, g1, pi, sigma);
        Formula ep = restrict(e, b0);
        Term sig1, mu1, b2;
        if (pi.top()) {
            sig1 = b1;
            mu1 = b1;
            b2 = zero();
        } else {
            sig1 = aleph_of(pi.pred);
            mu1 = is_regular_term(sig1) ? succ(sig1) : sig1;
            b2 = b1;
        }
        Term cr = add(mu1, omega_pow(b2));
        if (!le(b1, cr)) fail(ErrorKind::Domain, "psi value " + render(b1) + " above " + render(cr));
        if (!lt(rk(ep), b1)) fail(ErrorKind::Domain, "restricted cut formula rank not below " + render(b1));
        Derivation nn = make_node(make_operator(succ(ah1), n.op.theta), pi, succ(b1), cr, n.seq, rule_cut(ep), {l1, r0});
        Derivation p = pred_impl(nn, b2, mu1, PredPart::Four);
        return main_step(n, p, lam, sig1, ah, bnd);
    }

    // collapse the partially reduced derivation again at lambda with the smaller sigma
    Derivation main_step(const Derivation& n, const Derivation& p, const Reg& lam, const Term& sig1, const Term& ah,
                         const Term& bnd) const {
        Reg k1 = regular_at_least(tmax(sig1, reg_ordinal(lam)));
        if (lt(reg_ordinal(p.kappa), reg_ordinal(k1))) fail(ErrorKind::Domain, "kappa too small for the main step");
        Derivation pk = set_kappa(p, k1);
        Term g1 = p.op.gamma;
        Derivation res = top(pk, g1, lam, sig1);
        Term ah1 = collapse_index(g1, sig1, p.bound);
        return finish(n, res, ah1, ah, bnd, lam);
    }

    Derivation finish(const Derivation& n, Derivation res, const Term& ah1, const Term& ah, const Term& bnd,
                      const Reg& lam) const {
        if (!lt(ah1, ah))
            fail(ErrorKind::Domain, "collapsing index " + render(ah1) + " not below " + render(ah));
        if (!lt(res.bound, bnd))
            fail(ErrorKind::Domain, "collapse value " + render(res.bound) + " not below " + render(bnd));
        res.bound = bnd;
        res.cutrank = bnd;
        res.kappa = lam;
        res.op = make_operator(succ(ah), n.op.theta);
        res.seq = n.seq;
        return res;
    }
};

}  // namespace

Derivation collapse(const Derivation& d, const Reg& lambda, const Term& sigma, const std::vector<Const>& theta) {
    require_ok(d, "collapse input");
    Term lam = reg_ordinal(lambda);
    Term g = d.op.gamma;
    for (const auto& f : d.seq)
        if (!in_sigma_hat(f, lam)) fail(ErrorKind::Domain, "root formula outside Sigma(lambda): " + f.text());
    if (!le(tmax(sigma, lam), reg_ordinal(d.kappa)))
        fail(ErrorKind::Domain, "kappa " + render(d.kappa) + " below max(sigma, lambda)");
    Term mu = sigma.kind() == Kind::BigI || is_regular_term(sigma) ? succ(sigma) : sigma;
    if (!le(d.cutrank, mu)) fail(ErrorKind::Domain, "cutrank " + render(d.cutrank) + " above mu = " + render(mu));
    Operator op = make_operator(g, theta);
    if (!operator_le(d.op, op)) fail(ErrorKind::Domain, "derivation operator not within H_gamma[Theta]");
    Term base = psi_of(lambda, g);
    for (const auto& t : theta)
        if (t.tag == Const::Tag::Ord && !in_hull(t.ord, g, base))
            fail(ErrorKind::Domain, "parameter " + render(t) + " not in H_gamma(psi(lambda; gamma))");
    Collapser col;
    Derivation out = col.top(d, g, lambda, sigma);
    Term ah = collapse_index(g, sigma, d.bound);
    if (out.bound != psi_of(lambda, ah) || out.cutrank != out.bound || out.op.gamma != succ(ah))
        fail(ErrorKind::Check, "collapse output does not match the expected bound");
    require_ok(out, "collapse");
    return out;
}

// ---------------------------------------------------------------- pipeline

namespace {

PipelineStage stage(const std::string& name, const Derivation& before, const Derivation& after, std::string note = "") {
    return {name, before.bound, after.bound, before.cutrank, after.cutrank, after.op.gamma, std::move(note)};
}

template <class F>
auto tagged(const std::string& name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        throw Error(e.kind(), "[" + name + "] " + e.what());
    }
}

}  // namespace

PipelineResult pipeline_complete_ce(const Derivation& d, unsigned m, unsigned k) {
    if (m < 1) fail(ErrorKind::Domain, "m must be at least 1");
    require_ok(d, "pipeline input");
    Term i = big_i();
    if (d.op.gamma != zero() || !d.kappa.top()) fail(ErrorKind::Domain, "pipeline input must sit at H_0 with kappa = I");
    if (d.bound != add(i_times(2), finite(k))) fail(ErrorKind::Domain, "input bound is not I*2+k");
    if (d.cutrank != add(i, finite(m))) fail(ErrorKind::Domain, "input cutrank is not I+m");

    PipelineResult res;
    res.b = omega_tower(m, add(i_times(3), finite(k)));
    if (!in_hull(res.b, res.b, zero()))
        fail(ErrorKind::Cap, "cap overflow: b = " + render(res.b) + " is outside the level-" +
                                    std::to_string(config().n) + " hulls (raise n)");
    Derivation cur = d;
    for (unsigned j = m; j > 1; --j) {
        Derivation next = tagged("predce", [&] { return pred_cut_elim(cur, zero(), add(i, finite(j - 1))); });
        res.stages.push_back(stage("predce I+" + std::to_string(j) + "->I+" + std::to_string(j - 1), cur, next));
        cur = std::move(next);
    }

    Reg w1 = reg_succ(zero());
    Derivation col = tagged("collapse", [&] { return collapse(cur, w1, i); });
    res.stages.push_back(stage("collapse", cur, col));

    res.beta = tagged("collapse", [&] { return psi_of(w1, res.b); });
    Term ah = collapse_index(zero(), i, cur.bound);
    if (!le(ah, res.b)) fail(ErrorKind::Domain, "[collapse] index " + render(ah) + " above b = " + render(res.b));
    if (!le(col.bound, res.beta)) fail(ErrorKind::Domain, "[collapse] bound above beta");
    Derivation raised = raise_op(col, succ(res.b));
    raised.bound = res.beta;
    raised.cutrank = res.beta;
    tagged("raise", [&] {
        require_ok(raised, "raise to beta");
        return 0;
    });
    res.stages.push_back(stage("raise", col, raised, "index b+1, bound and cutrank psi(W(0+1); b)"));

    Derivation cf = tagged("predce", [&] { return pred_cut_elim(raised, res.beta, zero()); });
    res.stages.push_back(stage("predce beta->0", raised, cf));
    res.witness_bound = veblen(res.beta, res.beta);
    if (cf.bound != res.witness_bound) fail(ErrorKind::Check, "[predce] bound is not phi(beta, beta)");

    Derivation out = cf;
    for (const auto& f : cf.seq) {
        if (f.kind() != FKind::Ex || !f->bound.level || f->bound.c.ord != reg_ordinal(w1) || rk(f) != reg_ordinal(w1))
            continue;
        Derivation next = tagged("bound", [&] { return boundedness(out, f, res.witness_bound, BoundSide::Exists); });
        res.stages.push_back(stage("bound", out, next, f.text()));
        out = std::move(next);
    }
    if (!cut_free(out)) fail(ErrorKind::Check, "pipeline output still has cuts");
    res.d = out;
    bool all = true;
    bool any = false;
    for (const auto& f : out.seq) {
        auto v = try_eval(f);
        if (!v) all = false;
        else any = any || *v;
    }
    res.truth_checked = all || any;
    res.truth = any;
    return res;
}

Derivation build_replica_input(unsigned m, unsigned k) {
    if (m < 1 || k < 1) fail(ErrorKind::Domain, "replica needs m >= 1 and k >= 1");
    Formula g = parse_formula("ex x in L(W(0+1)) . mem(x,{{}})");
    Formula c = parse_formula("ex x in L(I) . mem(x,{{}})");
    Derivation left = build_completeness(g, make_sequent({neg(c)}));
    Derivation right = build_completeness(c, make_sequent({g}));
    Term i = big_i();
    Derivation d = make_node(make_operator(zero()), reg_top(), add(i_times(2), finite(k)), add(i, finite(m)),
                             make_sequent({g}), rule_cut(c), {left, right});
    require_ok(d, "replica input");
    return d;
}

}  // namespace ordkit
