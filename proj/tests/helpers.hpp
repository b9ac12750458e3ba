#pragma once

#include "ordkit/arith.hpp"
#include "ordkit/transform.hpp"

namespace ordkit::testing {

inline Term T(const char* s) { return parse_term(s); }
inline Formula F(const char* s) { return parse_formula(s); }
inline Term nat(unsigned k) { return finite(k); }
inline Reg w1() { return reg_succ(zero()); }

// {G} by one cut on C: left = completeness(G; not C), right = completeness(C; G)
inline Derivation cut_on(const Formula& g, const Formula& c, const Term& cutrank, const Operator& op = make_operator(zero())) {
    Derivation l = build_completeness(g, make_sequent({neg(c)}), op);
    Derivation r = build_completeness(c, make_sequent({g}), op);
    Derivation d;
    d.op = op;
    d.kappa = reg_top();
    d.bound = succ(tmax(l.bound, r.bound));
    d.cutrank = cutrank;
    d.seq = make_sequent({g});
    d.rule = rule_cut(c);
    d.children = {l, r};
    return d;
}

}  // namespace ordkit::testing
