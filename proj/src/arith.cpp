#include "ordkit/arith.hpp"

#include "ordkit/errors.hpp"
#include "ordkit/order.hpp"

namespace ordkit {

namespace {

Term from_parts(std::vector<Term> ps) {
    if (ps.empty()) return zero();
    if (ps.size() == 1) return ps[0];
    return sum(std::move(ps));
}

// exponent e of an additive principal p = w^e
Term log_of(const Term& p) { return p.kind() == Kind::Pow ? p->args[0] : p; }

void no_mu(const Term& t, const char* op) {
    if (t.kind() == Kind::Mu) fail(ErrorKind::CannotVerify, std::string(op) + " on opaque witness " + render(t));
}

}  // namespace

bool is_epsilon(const Term& t) { return t.kind() == Kind::Phi || is_sc_kind(t); }

Term add(const Term& s, const Term& t) {
    no_mu(s, "add");
    no_mu(t, "add");
    if (t.kind() == Kind::Zero) return s;
    if (s.kind() == Kind::Zero) return t;
    auto ps = parts_of(s);
    auto pt = parts_of(t);
    const Term& lead = pt.front();
    while (!ps.empty() && lt(ps.back(), lead)) ps.pop_back();
    ps.insert(ps.end(), pt.begin(), pt.end());
    return from_parts(std::move(ps));
}

Term succ(const Term& t) { return add(t, one()); }

Term omega_pow(const Term& t) {
    no_mu(t, "omega_pow");
    if (is_epsilon(t)) return t;
    return pow(t);
}

Term omega_times(const Term& t) {
    no_mu(t, "omega_times");
    std::vector<Term> out;
    for (const auto& p : parts_of(t)) out.push_back(omega_pow(add(one(), log_of(p))));
    return from_parts(std::move(out));
}

Term veblen(const Term& a, const Term& b) {
    no_mu(a, "veblen");
    no_mu(b, "veblen");
    if (a.kind() == Kind::Zero) return omega_pow(b);
    if (!lt(a, big_i()) || !lt(b, big_i()))
        fail(ErrorKind::Cap, "veblen arguments must stay below I: phi(" + render(a) + "," + render(b) + ")");
    if (b.kind() == Kind::Phi && lt(a, b->args[0])) return b;
    if (is_sc_kind(b) && lt(a, b)) return b;
    if (b.kind() == Kind::Zero && is_sc_kind(a)) return a;
    return phi(a, b);
}

Term omega_tower(unsigned m, const Term& t) {
    Term r = t;
    for (unsigned i = 0; i < m; ++i) r = omega_pow(r);
    return r;
}

Term aleph_of(const Term& idx) {
    no_mu(idx, "aleph");
    if (idx.kind() == Kind::Zero) return omega();
    if (!lt(idx, big_i())) fail(ErrorKind::Cap, "aleph index must stay below I: " + render(idx));
    if (idx.kind() == Kind::Psi && idx->reg.top()) return idx;
    return aleph(idx);
}

Term lead_sc(const Term& t) {
    switch (t.kind()) {
        case Kind::Zero: return {};
        case Kind::Sum: return lead_sc(t->args[0]);
        case Kind::Pow: return lead_sc(t->args[0]);
        case Kind::Phi: {
            Term x = lead_sc(t->args[0]);
            Term y = lead_sc(t->args[1]);
            if (!x) return y;
            if (!y) return x;
            return lt(x, y) ? y : x;
        }
        case Kind::Mu: fail(ErrorKind::CannotVerify, "no regular bound for opaque witness " + render(t));
        default: return t;
    }
}

Reg next_regular(const Term& t) {
    if (!lt(t, big_i())) fail(ErrorKind::Domain, "next_regular needs a term below I: " + render(t));
    Term s = lead_sc(t);
    if (!s) return reg_succ(zero());
    switch (s.kind()) {
        case Kind::Aleph: return reg_succ(s->args[0]);
        case Kind::Psi:
        case Kind::Fc1:
            if (s->reg.top()) return reg_succ(s);
            return s->reg;
        case Kind::FcN: return reg_succ(s->args[0]);
        default: fail(ErrorKind::Domain, "next_regular: unexpected component " + render(s));
    }
}

Term i_times(unsigned k) {
    if (k == 0) return zero();
    if (k == 1) return big_i();
    return sum(std::vector<Term>(k, big_i()));
}

}  // namespace ordkit
