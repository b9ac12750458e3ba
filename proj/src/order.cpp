#include "ordkit/order.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "ordkit/arith.hpp"
#include "ordkit/config.hpp"
#include "ordkit/errors.hpp"

namespace ordkit {

std::string to_string(Ordering o) {
    switch (o) {
        case Ordering::Less: return "LESS";
        case Ordering::Equal: return "EQUAL";
        case Ordering::Greater: return "GREATER";
    }
    return "?";
}

namespace {

Ordering flip(Ordering o) {
    if (o == Ordering::Less) return Ordering::Greater;
    if (o == Ordering::Greater) return Ordering::Less;
    return o;
}

// Psi comparisons recurse through in_hull; memoize them per thread.
struct PairHash {
    std::size_t operator()(const std::pair<Term, Term>& p) const {
        return p.first.hash() * 31 + p.second.hash();
    }
};
thread_local std::unordered_map<std::pair<Term, Term>, Ordering, PairHash> psi_memo;

Ordering cmp_add_principal(const Term& x, const Term& y);

Ordering cmp_parts(const Term& s, const Term& t) {
    auto ps = parts_of(s);
    auto pt = parts_of(t);
    std::size_t n = std::min(ps.size(), pt.size());
    for (std::size_t i = 0; i < n; ++i) {
        Ordering o = cmp_add_principal(ps[i], pt[i]);
        if (o != Ordering::Equal) return o;
    }
    if (ps.size() == pt.size()) return Ordering::Equal;
    return ps.size() < pt.size() ? Ordering::Less : Ordering::Greater;
}

// same-kappa collapse order via hull coefficients
Ordering cmp_psi_same(const Term& x, const Term& y) {
    auto key = std::make_pair(x, y);
    auto it = psi_memo.find(key);
    if (it != psi_memo.end()) return it->second;
    const Term& a = x->args[0];
    const Term& b = y->args[0];
    Ordering r;
    switch (cmp_normal(a, b)) {
        case Ordering::Equal: r = Ordering::Equal; break;
        case Ordering::Less: r = in_hull(a, b, y) ? Ordering::Less : Ordering::Greater; break;
        default: r = in_hull(b, a, x) ? Ordering::Greater : Ordering::Less; break;
    }
    if (psi_memo.size() > (1u << 20)) psi_memo.clear();
    psi_memo.emplace(key, r);
    return r;
}

// Position of a strongly critical term below I relative to the alephs:
// exact omega_c, or strictly inside (omega_c, omega_{c+1}).
struct AlephPos {
    Term idx;
    bool exact;
};

AlephPos aleph_pos(const Term& x) {
    switch (x.kind()) {
        case Kind::Aleph: return {x->args[0], true};
        case Kind::Psi:
            if (x->reg.top()) return {x, true};  // fixed point of the aleph function
            return {x->reg.pred, false};
        case Kind::Fc1: return {x->reg.pred, false};
        case Kind::FcN: return {x->args[0], false};
        default: fail(ErrorKind::Domain, "aleph_pos on non-critical term");
    }
}

// members of one open aleph interval
Ordering cmp_inner(const Term& x, const Term& y) {
    if (x.kind() == Kind::FcN) return y.kind() == Kind::FcN ? cmp_normal(x->args[0], y->args[0]) : Ordering::Less;
    if (y.kind() == Kind::FcN) return Ordering::Greater;
    if (x.kind() == Kind::Psi && y.kind() == Kind::Psi) return cmp_psi_same(x, y);
    if (x.kind() == Kind::Fc1 && y.kind() == Kind::Fc1) return cmp_normal(x->args[0], y->args[0]);
    if (x.kind() == Kind::Psi) {
        // Fc1(base) sits just above base and below every collapse above base
        Ordering o = cmp_normal(x, y->args[0]);
        return o == Ordering::Greater ? Ordering::Greater : Ordering::Less;
    }
    return flip(cmp_inner(y, x));
}

Ordering cmp_sc(const Term& x, const Term& y) {
    if (x.kind() == Kind::BigI) return y.kind() == Kind::BigI ? Ordering::Equal : Ordering::Greater;
    if (y.kind() == Kind::BigI) return Ordering::Less;
    if (x.kind() == Kind::Psi && y.kind() == Kind::Psi && x->reg == y->reg) return cmp_psi_same(x, y);
    AlephPos px = aleph_pos(x);
    AlephPos py = aleph_pos(y);
    Ordering o = cmp_normal(px.idx, py.idx);
    if (o != Ordering::Equal) return o;
    if (px.exact != py.exact) return px.exact ? Ordering::Less : Ordering::Greater;
    if (px.exact) {
        if (x == y) return Ordering::Equal;
        fail(ErrorKind::NotNormal, "two notations for one aleph: " + render(x) + ", " + render(y));
    }
    return cmp_inner(x, y);
}

Ordering cmp_add_principal(const Term& x, const Term& y) {
    if (x == y) return Ordering::Equal;
    if (x.kind() == Kind::Mu || y.kind() == Kind::Mu)
        fail(ErrorKind::CannotVerify, "cannot order opaque witness " + render(x.kind() == Kind::Mu ? x : y));
    if (x.kind() == Kind::Pow) {
        if (y.kind() == Kind::Pow) return cmp_normal(x->args[0], y->args[0]);
        // y is an epsilon number, y = w^y
        return cmp_normal(x->args[0], y) == Ordering::Less ? Ordering::Less : Ordering::Greater;
    }
    if (y.kind() == Kind::Pow) return flip(cmp_add_principal(y, x));
    if (x.kind() == Kind::Phi) {
        const Term& a1 = x->args[0];
        const Term& b1 = x->args[1];
        if (y.kind() == Kind::Phi) {
            const Term& a2 = y->args[0];
            const Term& b2 = y->args[1];
            switch (cmp_normal(a1, a2)) {
                case Ordering::Less: return cmp_normal(b1, y) == Ordering::Less ? Ordering::Less : Ordering::Greater;
                case Ordering::Equal: return cmp_normal(b1, b2);
                default: return cmp_normal(x, b2) == Ordering::Greater ? Ordering::Greater : Ordering::Less;
            }
        }
        return (lt(a1, y) && lt(b1, y)) ? Ordering::Less : Ordering::Greater;
    }
    if (y.kind() == Kind::Phi) return flip(cmp_add_principal(y, x));
    return cmp_sc(x, y);
}

Term theta_key_pred(const Term& t) { return t->reg.pred; }

}  // namespace

Ordering cmp_normal(const Term& s, const Term& t) {
    if (s == t) return Ordering::Equal;
    if (s.kind() == Kind::Sum || t.kind() == Kind::Sum || s.kind() == Kind::Zero || t.kind() == Kind::Zero)
        return cmp_parts(s, t);
    return cmp_add_principal(s, t);
}

Ordering cmp(const Term& s, const Term& t) {
    Term a = is_normal(s) ? s : normalize(s);
    Term b = is_normal(t) ? t : normalize(t);
    return cmp_normal(a, b);
}

// ---------------------------------------------------------------- normal forms

bool is_normal(const Reg& r) {
    if (r.top()) return true;
    return is_normal(r.pred) && lt(r.pred, big_i());
}

bool is_normal(const Term& t) {
    switch (t.kind()) {
        case Kind::Zero:
        case Kind::BigI: return true;
        case Kind::Sum: {
            const auto& ps = t->args;
            if (ps.size() < 2) return false;
            for (const auto& p : ps) {
                if (p.kind() == Kind::Sum || p.kind() == Kind::Zero || p.kind() == Kind::Mu) return false;
                if (!is_normal(p)) return false;
            }
            for (std::size_t i = 0; i + 1 < ps.size(); ++i)
                if (cmp_normal(ps[i], ps[i + 1]) == Ordering::Less) return false;
            return true;
        }
        case Kind::Pow: {
            const Term& e = t->args[0];
            return is_normal(e) && e.kind() != Kind::Mu && !is_epsilon(e);
        }
        case Kind::Aleph: {
            const Term& idx = t->args[0];
            if (!is_normal(idx) || idx.kind() == Kind::Zero || idx.kind() == Kind::Mu) return false;
            if (idx.kind() == Kind::Psi && idx->reg.top()) return false;
            return lt(idx, big_i());
        }
        case Kind::Phi: {
            const Term& a = t->args[0];
            const Term& b = t->args[1];
            if (!is_normal(a) || !is_normal(b) || a.kind() == Kind::Mu || b.kind() == Kind::Mu) return false;
            if (a.kind() == Kind::Zero) return false;
            if (!lt(a, big_i()) || !lt(b, big_i())) return false;
            if (b.kind() == Kind::Zero && is_sc_kind(a)) return false;
            if (b.kind() == Kind::Phi && lt(a, b->args[0])) return false;
            if (is_sc_kind(b) && lt(a, b)) return false;
            return true;
        }
        case Kind::Psi: {
            const Term& a = t->args[0];
            if (!is_normal(t->reg) || !is_normal(a) || a.kind() == Kind::Mu) return false;
            return psi_admissible(t->reg, a);
        }
        case Kind::Fc1: {
            const Term& x = t->args[0];
            if (t->reg.top()) return false;
            return x.kind() == Kind::Psi && x->reg == t->reg && is_normal(x);
        }
        case Kind::FcN: {
            const Term& x = t->args[0];
            return x.kind() == Kind::Psi && x->reg.top() && is_normal(x);
        }
        case Kind::Mu: return is_normal(t->args[0]) && t->args[0].kind() != Kind::Mu;
    }
    return false;
}

Term normalize(const Term& t) {
    switch (t.kind()) {
        case Kind::Zero:
        case Kind::BigI: return t;
        case Kind::Sum: {
            Term acc = zero();
            for (const auto& p : t->args) acc = add(acc, normalize(p));
            return acc;
        }
        case Kind::Pow: return omega_pow(normalize(t->args[0]));
        case Kind::Aleph: return aleph_of(normalize(t->args[0]));
        case Kind::Phi: return veblen(normalize(t->args[0]), normalize(t->args[1]));
        case Kind::Psi: {
            Reg k = t->reg.top() ? reg_top() : reg_succ(normalize(t->reg.pred));
            if (!is_normal(k)) fail(ErrorKind::NotNormal, "kappa slot out of range in " + render(t));
            Term a = normalize(t->args[0]);
            if (!psi_admissible(k, a)) fail(ErrorKind::NotNormal, "inadmissible collapse " + render(psi(k, a)));
            return psi(k, a);
        }
        case Kind::Fc1: {
            Reg k = t->reg.top() ? reg_top() : reg_succ(normalize(t->reg.pred));
            Term r = fc1(normalize(t->args[0]), k);
            if (!is_normal(r)) fail(ErrorKind::NotNormal, "collapse value needs a matching psi argument: " + render(t));
            return r;
        }
        case Kind::FcN: {
            Term r = fcn(normalize(t->args[0]));
            if (!is_normal(r)) fail(ErrorKind::NotNormal, "collapse value needs a psi(I;.) argument: " + render(t));
            return r;
        }
        case Kind::Mu: return mu(normalize(t->args[0]), t->body);
    }
    return t;
}

Term reg_ordinal(const Reg& r) {
    if (r.top()) return big_i();
    return aleph_of(succ(r.pred));
}

// ---------------------------------------------------------------- hulls

Term level_cap() {
    thread_local int cached_n = -1;
    thread_local Term cached;
    int n = config().n;
    if (n != cached_n) {
        cached = omega_tower(static_cast<unsigned>(n), succ(big_i()));
        cached_n = n;
    }
    return cached;
}

std::vector<Term> theta_closure(const std::vector<Term>& theta) {
    std::vector<Term> out;
    std::unordered_set<Term, TermHash> seen;
    std::vector<Term> stack(theta.begin(), theta.end());
    while (!stack.empty()) {
        Term u = stack.back();
        stack.pop_back();
        if (!seen.insert(u).second) continue;
        out.push_back(u);
        switch (u.kind()) {
            case Kind::Sum:
            case Kind::Pow:
            case Kind::Phi:
            case Kind::Aleph:
                for (const auto& a : u->args) stack.push_back(a);
                break;
            case Kind::Psi:
            case Kind::Fc1:
                // the regular above a collapse is definable from it
                if (!u->reg.top()) stack.push_back(theta_key_pred(u));
                break;
            case Kind::FcN: stack.push_back(u->args[0]); break;
            default: break;
        }
    }
    return out;
}

namespace {

bool in_hull_rec(const Term& t, const Term& gamma, const Term& beta, const std::vector<Term>& theta) {
    switch (t.kind()) {
        case Kind::Zero:
        case Kind::BigI: return true;
        default: break;
    }
    for (const auto& s : theta)
        if (s == t) return true;
    if (t.kind() == Kind::Mu) return le(rank_interval(t).hi, beta);
    if (lt(t, beta)) return true;
    switch (t.kind()) {
        case Kind::Sum:
            for (const auto& p : t->args)
                if (!in_hull_rec(p, gamma, beta, theta)) return false;
            return true;
        case Kind::Pow: return lt(t->args[0], level_cap()) && in_hull_rec(t->args[0], gamma, beta, theta);
        case Kind::Phi:
            return in_hull_rec(t->args[0], gamma, beta, theta) && in_hull_rec(t->args[1], gamma, beta, theta);
        case Kind::Aleph: return in_hull_rec(t->args[0], gamma, beta, theta);
        case Kind::Psi:
            return (t->reg.top() || in_hull_rec(t->reg.pred, gamma, beta, theta)) && lt(t->args[0], gamma) &&
                   in_hull_rec(t->args[0], gamma, beta, theta);
        case Kind::Fc1:
            return in_hull_rec(t->args[0], gamma, beta, theta) && in_hull_rec(t->reg.pred, gamma, beta, theta);
        case Kind::FcN: return in_hull_rec(t->args[0], gamma, beta, theta);
        default: return false;
    }
}

}  // namespace

bool in_hull(const Term& t, const Term& gamma, const Term& beta) { return in_hull_rec(t, gamma, beta, {}); }

bool in_hull(const Term& t, const Term& gamma, const Term& beta, const std::vector<Term>& theta) {
    if (theta.empty()) return in_hull_rec(t, gamma, beta, {});
    return in_hull_rec(t, gamma, beta, theta_closure(theta));
}

bool reg_in_hull(const Reg& k, const Term& gamma, const Term& beta, const std::vector<Term>& theta) {
    if (k.top()) return true;
    return in_hull(k.pred, gamma, beta, theta);
}

bool psi_admissible(const Reg& k, const Term& alpha) { return in_hull(alpha, alpha, psi(k, alpha)); }

RankInterval rank_interval(const Term& t) {
    if (t.kind() == Kind::Mu) return {zero(), t->args[0]};
    return {t, succ(t)};
}

}  // namespace ordkit
