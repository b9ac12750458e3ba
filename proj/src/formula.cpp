#include "ordkit/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "ordkit/arith.hpp"
#include "ordkit/config.hpp"
#include "ordkit/errors.hpp"
#include "ordkit/order.hpp"

namespace ordkit {

// ---------------------------------------------------------------- constants

Const Const::of(HFSet a) {
    Const c;
    c.tag = Tag::HF;
    c.hf = std::move(a);
    return c;
}

Const Const::of(Term t) {
    Const c;
    c.tag = Tag::Ord;
    c.ord = std::move(t);
    return c;
}

Const Const::variable(std::string name) {
    Const c;
    c.tag = Tag::Var;
    c.var = std::move(name);
    return c;
}

bool operator==(const Const& a, const Const& b) {
    if (a.tag != b.tag) return false;
    switch (a.tag) {
        case Const::Tag::HF: return a.hf == b.hf;
        case Const::Tag::Ord: return a.ord == b.ord;
        case Const::Tag::Var: return a.var == b.var;
    }
    return false;
}

std::string render(const Const& c) {
    switch (c.tag) {
        case Const::Tag::HF: return render(c.hf);
        case Const::Tag::Ord: return render(c.ord);
        case Const::Tag::Var: return c.var;
    }
    return "?";
}

bool Bound::is_top_level() const { return level && c.tag == Const::Tag::Ord && c.ord.kind() == Kind::BigI; }

std::string render(const Bound& b) { return b.level ? "L(" + render(b.c) + ")" : render(b.c); }

// ---------------------------------------------------------------- formulas

FKind Formula::kind() const { return p_->kind; }
const std::string& Formula::text() const { return p_->text; }
std::size_t Formula::hash() const { return p_->hash; }
bool operator==(const Formula& a, const Formula& b) {
    if (a.p_ == b.p_) return true;
    return a.hash() == b.hash() && a.text() == b.text();
}

namespace {

const char* lit_name(FKind k) {
    switch (k) {
        case FKind::Mem:
        case FKind::NotMem: return "mem";
        case FKind::Reg:
        case FKind::NotReg: return "reg";
        case FKind::P:
        case FKind::NotP: return "P";
        case FKind::PI:
        case FKind::NotPI: return "PI";
        default: return "";
    }
}

std::size_t lit_arity(FKind k) {
    switch (k) {
        case FKind::Mem:
        case FKind::NotMem: return 2;
        case FKind::P:
        case FKind::NotP: return 3;
        default: return 1;
    }
}

bool negative(FKind k) {
    return k == FKind::NotMem || k == FKind::NotReg || k == FKind::NotP || k == FKind::NotPI;
}

Formula finish(FNode n) {
    std::string t;
    switch (n.kind) {
        case FKind::And:
        case FKind::Or:
            t = std::string(n.kind == FKind::And ? "and(" : "or(") + n.subs[0].text() + "," + n.subs[1].text() + ")";
            break;
        case FKind::Ex:
        case FKind::All:
            t = std::string(n.kind == FKind::Ex ? "ex " : "all ") + n.var + " in " + render(n.bound) + " . " +
                n.subs[0].text();
            break;
        default:
            t = negative(n.kind) ? "!" : "";
            t += lit_name(n.kind);
            t += "(";
            for (std::size_t i = 0; i < n.args.size(); ++i) {
                if (i) t += ",";
                t += render(n.args[i]);
            }
            t += ")";
    }
    n.text = std::move(t);
    n.hash = std::hash<std::string>{}(n.text);
    return Formula(std::make_shared<const FNode>(std::move(n)));
}

}  // namespace

Formula literal(FKind k, std::vector<Const> args) {
    if (k == FKind::And || k == FKind::Or || k == FKind::Ex || k == FKind::All)
        fail(ErrorKind::Domain, "literal() needs a predicate kind");
    if (args.size() != lit_arity(k)) fail(ErrorKind::Domain, std::string("wrong arity for ") + lit_name(k));
    FNode n;
    n.kind = k;
    n.args = std::move(args);
    return finish(std::move(n));
}

Formula f_and(Formula a, Formula b) {
    FNode n;
    n.kind = FKind::And;
    n.subs = {std::move(a), std::move(b)};
    return finish(std::move(n));
}

Formula f_or(Formula a, Formula b) {
    FNode n;
    n.kind = FKind::Or;
    n.subs = {std::move(a), std::move(b)};
    return finish(std::move(n));
}

namespace {
Formula quant(FKind k, std::string var, Bound b, Formula body) {
    if (b.c.is_var() && b.c.var == var) fail(ErrorKind::Domain, "variable " + var + " occurs in its own bound");
    FNode n;
    n.kind = k;
    n.var = std::move(var);
    n.bound = std::move(b);
    n.subs = {std::move(body)};
    return finish(std::move(n));
}
}  // namespace

Formula f_ex(std::string var, Bound b, Formula body) { return quant(FKind::Ex, std::move(var), std::move(b), std::move(body)); }
Formula f_all(std::string var, Bound b, Formula body) { return quant(FKind::All, std::move(var), std::move(b), std::move(body)); }
Formula mem(Const a, Const b) { return literal(FKind::Mem, {std::move(a), std::move(b)}); }
Formula not_mem(Const a, Const b) { return literal(FKind::NotMem, {std::move(a), std::move(b)}); }

bool is_literal(const Formula& f) {
    FKind k = f.kind();
    return k != FKind::And && k != FKind::Or && k != FKind::Ex && k != FKind::All;
}

Formula neg(const Formula& f) {
    switch (f.kind()) {
        case FKind::Mem: return literal(FKind::NotMem, f->args);
        case FKind::NotMem: return literal(FKind::Mem, f->args);
        case FKind::Reg: return literal(FKind::NotReg, f->args);
        case FKind::NotReg: return literal(FKind::Reg, f->args);
        case FKind::P: return literal(FKind::NotP, f->args);
        case FKind::NotP: return literal(FKind::P, f->args);
        case FKind::PI: return literal(FKind::NotPI, f->args);
        case FKind::NotPI: return literal(FKind::PI, f->args);
        case FKind::And: return f_or(neg(f->subs[0]), neg(f->subs[1]));
        case FKind::Or: return f_and(neg(f->subs[0]), neg(f->subs[1]));
        case FKind::Ex: return f_all(f->var, f->bound, neg(f->subs[0]));
        case FKind::All: return f_ex(f->var, f->bound, neg(f->subs[0]));
    }
    return f;
}

Formula subst(const Formula& f, const std::string& var, const Const& c) {
    auto sc = [&](const Const& a) { return a.is_var() && a.var == var ? c : a; };
    switch (f.kind()) {
        case FKind::And: return f_and(subst(f->subs[0], var, c), subst(f->subs[1], var, c));
        case FKind::Or: return f_or(subst(f->subs[0], var, c), subst(f->subs[1], var, c));
        case FKind::Ex:
        case FKind::All: {
            Bound b{f->bound.level, sc(f->bound.c)};
            Formula body = f->var == var ? f->subs[0] : subst(f->subs[0], var, c);
            return quant(f.kind(), f->var, b, body);
        }
        default: {
            std::vector<Const> args;
            for (const auto& a : f->args) args.push_back(sc(a));
            return literal(f.kind(), std::move(args));
        }
    }
}

Formula instance(const Formula& q, const Const& c) {
    if (q.kind() != FKind::Ex && q.kind() != FKind::All) fail(ErrorKind::Domain, "instance of a non-quantifier");
    return subst(q->subs[0], q->var, c);
}

namespace {
bool free_vars_rec(const Formula& f, std::vector<std::string>& bound_vars) {
    auto ok = [&](const Const& a) {
        return !a.is_var() || std::find(bound_vars.begin(), bound_vars.end(), a.var) != bound_vars.end();
    };
    switch (f.kind()) {
        case FKind::And:
        case FKind::Or: return free_vars_rec(f->subs[0], bound_vars) && free_vars_rec(f->subs[1], bound_vars);
        case FKind::Ex:
        case FKind::All: {
            if (!ok(f->bound.c)) return false;
            bound_vars.push_back(f->var);
            bool r = free_vars_rec(f->subs[0], bound_vars);
            bound_vars.pop_back();
            return r;
        }
        default:
            return std::all_of(f->args.begin(), f->args.end(), ok);
    }
}
}  // namespace

bool is_sentence(const Formula& f) {
    std::vector<std::string> vs;
    return free_vars_rec(f, vs);
}

// ---------------------------------------------------------------- parsing

namespace {

class FParser {
public:
    explicit FParser(std::string_view s) : s_(s) {}

    Formula parse() {
        Formula f = formula();
        ws();
        if (i_ != s_.size()) throw ParseError(i_, "trailing input after formula");
        return f;
    }

    Formula formula() {
        ws();
        std::size_t at = i_;
        bool neg_lit = false;
        if (peek() == '!') {
            ++i_;
            neg_lit = true;
        }
        std::string w = ident();
        ws();
        if (!neg_lit && (w == "ex" || w == "all")) {
            std::string var = ident();
            if (var.empty()) throw ParseError(i_, "expected a variable after quantifier");
            ws();
            if (ident() != "in") throw ParseError(i_, "expected 'in'");
            Bound b = bound();
            ws();
            if (!eat('.')) throw ParseError(i_, "expected '.' after quantifier bound");
            Formula body = formula();
            return w == "ex" ? f_ex(var, b, body) : f_all(var, b, body);
        }
        if (!eat('(')) throw ParseError(i_, "expected '(' after '" + w + "'");
        if (!neg_lit && (w == "and" || w == "or")) {
            std::vector<Formula> fs{formula()};
            ws();
            while (eat(',')) {
                fs.push_back(formula());
                ws();
            }
            if (!eat(')')) throw ParseError(i_, "expected ')'");
            if (fs.size() < 2) throw ParseError(at, w + " needs at least two arguments");
            Formula acc = fs.back();
            for (std::size_t k = fs.size() - 1; k-- > 0;) acc = w == "and" ? f_and(fs[k], acc) : f_or(fs[k], acc);
            return acc;
        }
        FKind k;
        if (w == "mem") k = neg_lit ? FKind::NotMem : FKind::Mem;
        else if (w == "reg") k = neg_lit ? FKind::NotReg : FKind::Reg;
        else if (w == "P") k = neg_lit ? FKind::NotP : FKind::P;
        else if (w == "PI") k = neg_lit ? FKind::NotPI : FKind::PI;
        else throw ParseError(at, "unknown formula head '" + w + "'");
        std::vector<Const> args{constant()};
        ws();
        while (eat(',')) {
            args.push_back(constant());
            ws();
        }
        if (!eat(')')) throw ParseError(i_, "expected ')'");
        if (args.size() != lit_arity(k)) throw ParseError(at, "wrong number of arguments for " + w);
        return literal(k, std::move(args));
    }

private:
    Const constant() {
        ws();
        if (peek() == '{') return Const::of(hf());
        std::size_t save = i_;
        std::string w = ident();
        if (!w.empty() && std::islower(static_cast<unsigned char>(w[0]))) {
            std::size_t j = i_;
            while (j < s_.size() && std::isspace(static_cast<unsigned char>(s_[j]))) ++j;
            char c = j < s_.size() ? s_[j] : '\0';
            if (c != '(' && c != '^' && c != '[') return Const::variable(w);
        }
        i_ = save;
        return Const::of(term());
    }

    Bound bound() {
        ws();
        if (peek() == '{') return Bound::hf(hf());
        if (s_.substr(i_, 2) == "L(") {
            i_ += 2;
            Term t = term();
            ws();
            if (!eat(')')) throw ParseError(i_, "expected ')' after level");
            return Bound::of_level(t);
        }
        return Bound::of(constant());
    }

    HFSet hf() {
        // balanced braces, then the HF parser
        std::size_t start = i_;
        int depth = 0;
        do {
            if (i_ >= s_.size()) throw ParseError(start, "unterminated HF set");
            if (s_[i_] == '{') ++depth;
            else if (s_[i_] == '}') --depth;
            ++i_;
        } while (depth > 0);
        try {
            return parse_hf(s_.substr(start, i_ - start));
        } catch (const ParseError& e) {
            throw ParseError(start + e.pos(), "bad HF set");
        }
    }

    Term term() {
        try {
            return parse_term_prefix(s_, i_);
        } catch (const ParseError& e) {
            throw ParseError(e.pos(), std::string("bad term: ") + e.what());
        }
    }

    std::string ident() {
        ws();
        std::size_t j = i_;
        while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
        std::string w(s_.substr(i_, j - i_));
        i_ = j;
        return w;
    }
    void ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
    bool eat(char c) {
        if (peek() != c) return false;
        ++i_;
        return true;
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view src) { return FParser(src).parse(); }
std::string render(const Formula& f) { return f.text(); }

// ---------------------------------------------------------------- measures

namespace {

template <class T, class Eq>
void push_unique(std::vector<T>& v, const T& x, Eq eq) {
    for (const auto& y : v)
        if (eq(y, x)) return;
    v.push_back(x);
}

void add_const(KSet& k, const Const& c) {
    auto eq = [](const auto& a, const auto& b) { return a == b; };
    if (c.tag == Const::Tag::HF) push_unique(k.hf, c.hf, eq);
    else if (c.tag == Const::Tag::Ord) push_unique(k.ord, c.ord, eq);
}

void add_bound(KSet& k, const Bound& b) {
    if (b.level) {
        push_unique(k.levels, b.c.ord, [](const Term& x, const Term& y) { return x == y; });
    } else {
        add_const(k, b.c);
    }
}

void collect(const Formula& f, KSet& k, bool bounds_only) {
    switch (f.kind()) {
        case FKind::And:
        case FKind::Or:
            collect(f->subs[0], k, bounds_only);
            collect(f->subs[1], k, bounds_only);
            break;
        case FKind::Ex:
        case FKind::All:
            add_bound(k, f->bound);
            collect(f->subs[0], k, bounds_only);
            break;
        default:
            if (!bounds_only)
                for (const auto& a : f->args) add_const(k, a);
    }
}

Term tmax(const Term& a, const Term& b) { return lt(a, b) ? b : a; }

}  // namespace

KSet k_set(const Formula& f) {
    KSet k;
    k.hf.push_back(HFSet());
    collect(f, k, false);
    return k;
}

KSet qk_set(const Formula& f) {
    KSet k;
    k.hf.push_back(HFSet());
    collect(f, k, true);
    return k;
}

Term rk_l(const Const& c) {
    switch (c.tag) {
        case Const::Tag::HF: return finite(static_cast<unsigned>(c.hf.rank()));
        case Const::Tag::Ord:
            if (c.ord.kind() == Kind::Mu)
                fail(ErrorKind::CannotVerify, "L-rank of witness " + render(c.ord) + " is only known as an interval");
            return c.ord;
        case Const::Tag::Var: fail(ErrorKind::Domain, "L-rank of free variable " + c.var);
    }
    return zero();
}

Term rk_l(const Bound& b) { return b.level ? b.c.ord : rk_l(b.c); }

Term rk(const Formula& f) {
    switch (f.kind()) {
        case FKind::Mem:
        case FKind::NotMem: return zero();
        case FKind::And:
        case FKind::Or: return succ(tmax(rk(f->subs[0]), rk(f->subs[1])));
        case FKind::Ex:
        case FKind::All: {
            Term inner = add(rk(instance(f, Const::of(HFSet()))), finite(2));
            return tmax(omega_times(rk_l(f->bound)), inner);
        }
        default: return one();
    }
}

// ---------------------------------------------------------------- classes

namespace {

bool delta0(const Formula& f) {
    switch (f.kind()) {
        case FKind::Mem:
        case FKind::NotMem: return true;
        case FKind::And:
        case FKind::Or: return delta0(f->subs[0]) && delta0(f->subs[1]);
        case FKind::Ex:
        case FKind::All: return !f->bound.is_top_level() && delta0(f->subs[0]);
        default: return false;
    }
}

}  // namespace

std::string to_string(const ClassInfo& c) {
    switch (c.cls) {
        case FClass::Delta0: return "Delta0";
        case FClass::Sigma: return "Sigma" + std::to_string(c.level);
        case FClass::Pi: return "Pi" + std::to_string(c.level);
        case FClass::NotPrenex: return "NotPrenex";
    }
    return "?";
}

ClassInfo sigma_pi_class(const Formula& f) {
    if (delta0(f)) return {FClass::Delta0, 0};
    Formula cur = f;
    int blocks = 0;
    FKind last = FKind::Mem;
    FKind first = f.kind();
    while ((cur.kind() == FKind::Ex || cur.kind() == FKind::All) && cur->bound.is_top_level()) {
        if (cur.kind() != last) ++blocks;
        last = cur.kind();
        cur = cur->subs[0];
    }
    if (blocks == 0 || !delta0(cur)) return {FClass::NotPrenex, 0};
    return {first == FKind::Ex ? FClass::Sigma : FClass::Pi, blocks};
}

bool in_sigma(const Formula& f, int m) {
    ClassInfo c = sigma_pi_class(f);
    switch (c.cls) {
        case FClass::Delta0: return true;
        case FClass::Sigma: return c.level <= m;
        case FClass::Pi: return c.level <= m - 1;
        default: return false;
    }
}

bool in_pi(const Formula& f, int m) {
    ClassInfo c = sigma_pi_class(f);
    switch (c.cls) {
        case FClass::Delta0: return true;
        case FClass::Pi: return c.level <= m;
        case FClass::Sigma: return c.level <= m - 1;
        default: return false;
    }
}

bool in_sigma_hat(const Formula& f, const Term& lambda) {
    if (in_sigma(f, config().n + 1)) return true;
    switch (f.kind()) {
        case FKind::And:
        case FKind::Or: return in_sigma_hat(f->subs[0], lambda) && in_sigma_hat(f->subs[1], lambda);
        case FKind::All:
            return lt(rk_l(f->bound), lambda) && in_sigma_hat(instance(f, Const::of(HFSet())), lambda);
        case FKind::Ex:
            return le(rk_l(f->bound), lambda) && in_sigma_hat(instance(f, Const::of(HFSet())), lambda);
        default: return true;
    }
}

// ---------------------------------------------------------------- truth

namespace {

enum class Tri { F, T, U };

Term ord_of(const Const& c) {
    if (c.tag != Const::Tag::Ord) fail(ErrorKind::Domain, "expected an ordinal term");
    if (c.ord.kind() == Kind::Mu) fail(ErrorKind::CannotVerify, "opaque witness " + render(c.ord));
    return is_normal(c.ord) ? c.ord : normalize(c.ord);
}

bool is_successor(const Term& t) {
    auto ps = parts_of(t);
    return !ps.empty() && ps.back() == one();
}

void no_var(const Const& c) {
    if (c.is_var()) fail(ErrorKind::Domain, "free variable " + c.var + " in a sentence");
}

}  // namespace

bool is_regular_const(const Const& a) {
    no_var(a);
    if (a.tag == Const::Tag::HF) return false;
    Term t = ord_of(a);
    return t.kind() == Kind::Aleph && is_successor(t->args[0]);
}

namespace {
// kappa slot of a regular constant: W(p+1) for omega_{p+1}
Reg slot_of_regular(const Term& t) {
    auto ps = parts_of(t->args[0]);
    ps.pop_back();
    Term p = ps.empty() ? zero() : ps.size() == 1 ? ps[0] : sum(ps);
    return reg_succ(p);
}
}  // namespace

bool p_holds(const Const& a, const Const& b, const Const& c) {
    no_var(a), no_var(b), no_var(c);
    if (!is_regular_const(a) || b.tag != Const::Tag::Ord || c.tag != Const::Tag::Ord) return false;
    Reg k = slot_of_regular(ord_of(a));
    Term x = ord_of(b);
    Term y = ord_of(c);
    return x.kind() == Kind::Psi && x->reg == k && y == fc1(x, k);
}

bool pi_holds(const Const& a) {
    no_var(a);
    if (a.tag != Const::Tag::Ord) return false;
    Term x = ord_of(a);
    return x.kind() == Kind::Psi && x->reg.top();
}

namespace {

bool mem_holds(const Const& a, const Const& b) {
    no_var(a), no_var(b);
    if (a == b) return false;  // foundation
    if (a.tag == Const::Tag::HF && b.tag == Const::Tag::HF) return hf_member(a.hf, b.hf);
    if (a.tag == Const::Tag::Ord && b.tag == Const::Tag::HF) {
        unsigned k = 0;
        if (!is_finite(ord_of(a), &k)) return false;
        if (static_cast<int>(k) >= b.hf.rank()) return false;
        return hf_member(hf_ordinal(k), b.hf);
    }
    if (a.tag == Const::Tag::HF) {
        Term y = ord_of(b);
        unsigned k = 0;
        if (!hf_as_ordinal(a.hf, &k)) return false;  // ordinals contain only ordinals
        return lt(finite(k), y);
    }
    return lt(ord_of(a), ord_of(b));
}

const std::vector<HFSet>& search_space() { return hf_universe(std::min(4, config().hf_cap + 1)); }

// elements of a bound when it is a finite set we can list
std::optional<std::vector<Const>> elements(const Bound& b) {
    no_var(b.c);
    if (b.c.tag == Const::Tag::HF) {
        if (b.level) fail(ErrorKind::Domain, "level bound must be an ordinal term");
        std::vector<Const> out;
        for (const auto& e : b.c.hf.elems()) out.push_back(Const::of(e));
        return out;
    }
    if (b.c.ord.kind() == Kind::Mu) return std::nullopt;
    unsigned k = 0;
    if (!is_finite(ord_of(b.c), &k)) return std::nullopt;
    std::vector<Const> out;
    if (b.level) {
        if (k > 5) return std::nullopt;
        for (const auto& e : hf_universe(static_cast<int>(k))) out.push_back(Const::of(e));
    } else {
        for (unsigned i = 0; i < k; ++i) out.push_back(Const::of(finite(i)));
    }
    return out;
}

// candidate members tried for an infinite bound (HF sets, or finite ordinals)
std::vector<Const> partial_elements(const Bound& b) {
    std::vector<Const> out;
    if (b.level) {
        for (const auto& e : search_space()) out.push_back(Const::of(e));
    } else {
        for (unsigned i = 0; i < 16; ++i) out.push_back(Const::of(finite(i)));
    }
    return out;
}

Tri eval3(const Formula& f);

Tri lit3(const Formula& f) {
    try {
        bool v = false;
        const auto& a = f->args;
        switch (f.kind()) {
            case FKind::Mem:
            case FKind::NotMem: v = mem_holds(a[0], a[1]); break;
            case FKind::Reg:
            case FKind::NotReg: v = is_regular_const(a[0]); break;
            case FKind::P:
            case FKind::NotP: v = p_holds(a[0], a[1], a[2]); break;
            default: v = pi_holds(a[0]); break;
        }
        if (negative(f.kind())) v = !v;
        return v ? Tri::T : Tri::F;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::CannotVerify) return Tri::U;
        throw;
    }
}

Tri eval3(const Formula& f) {
    switch (f.kind()) {
        case FKind::And: {
            Tri l = eval3(f->subs[0]);
            if (l == Tri::F) return Tri::F;
            Tri r = eval3(f->subs[1]);
            if (r == Tri::F) return Tri::F;
            return l == Tri::T && r == Tri::T ? Tri::T : Tri::U;
        }
        case FKind::Or: {
            Tri l = eval3(f->subs[0]);
            if (l == Tri::T) return Tri::T;
            Tri r = eval3(f->subs[1]);
            if (r == Tri::T) return Tri::T;
            return l == Tri::F && r == Tri::F ? Tri::F : Tri::U;
        }
        case FKind::Ex:
        case FKind::All: {
            Tri hit = f.kind() == FKind::Ex ? Tri::T : Tri::F;
            Tri miss = f.kind() == FKind::Ex ? Tri::F : Tri::T;
            auto es = elements(f->bound);
            if (f->bound.c.tag == Const::Tag::Ord && f->bound.c.ord.kind() == Kind::Mu) return Tri::U;
            bool unknown = false;
            for (const auto& e : es ? *es : partial_elements(f->bound)) {
                Tri v = eval3(instance(f, e));
                if (v == hit) return hit;
                if (v == Tri::U) unknown = true;
            }
            return es && !unknown ? miss : Tri::U;
        }
        default: return lit3(f);
    }
}

}  // namespace

std::optional<bool> try_eval(const Formula& f) {
    Tri v = eval3(f);
    if (v == Tri::U) return std::nullopt;
    return v == Tri::T;
}

bool eval_sentence(const Formula& f) {
    if (!is_sentence(f)) fail(ErrorKind::Domain, "not a sentence: " + f.text());
    auto v = try_eval(f);
    if (!v) fail(ErrorKind::CannotVerify, "not evaluable on the HF fragment: " + f.text());
    return *v;
}

HFSet mu_witness(const HFSet& b, const Formula& q) {
    for (const auto& d : b.elems())
        if (eval_sentence(instance(q, Const::of(d)))) return d;
    return HFSet();
}

// ---------------------------------------------------------------- decomposition

namespace {

// The least witness d for "ex z in b . theta"; Mu when it cannot be concretized.
Const mu_of(const Formula& ex_q) {
    const Bound& b = ex_q->bound;
    no_var(b.c);
    if (!b.level && b.c.tag == Const::Tag::HF) {
        try {
            return Const::of(mu_witness(b.c.hf, ex_q));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::CannotVerify) throw;
            fail(ErrorKind::CannotVerify, "witness over " + render(b) + " not computable: " + e.what());
        }
    }
    if (b.c.ord.kind() == Kind::Mu) fail(ErrorKind::CannotVerify, "witness over an opaque bound " + render(b));
    auto es = elements(b);
    bool complete = es.has_value();
    // HF = L_omega is an initial segment of <_L, so scanning it in order finds the least witness
    for (const auto& d : complete ? *es : partial_elements(b)) {
        auto v = try_eval(instance(ex_q, d));
        if (!v) break;
        if (*v) return d;
    }
    if (complete) {
        bool all_known = true;
        for (const auto& d : *es)
            if (!try_eval(instance(ex_q, d))) all_known = false;
        if (all_known) return Const::of(HFSet());
    }
    if (!b.level) fail(ErrorKind::CannotVerify, "witness below an infinite ordinal bound " + render(b));
    return Const::of(mu(b.c.ord, ex_q->var + " . " + ex_q->subs[0].text()));
}

// "d in b" as a literal; for level bounds a true literal d notin d stands in
Formula member_lit(const Const& d, const Bound& b) {
    if (b.level) return not_mem(d, d);
    return mem(d, b.c);
}

}  // namespace

Decomposition decompose(const Formula& f) {
    if (!is_sentence(f)) fail(ErrorKind::Domain, "decompose needs a sentence: " + f.text());
    const int n = config().n;
    Decomposition d{Junctor::Disj, WitnessSpace::Finite, {}, Term(), false};
    Const zero_idx = Const::of(HFSet());
    switch (f.kind()) {
        case FKind::Mem:
        case FKind::NotMem: {
            Tri v = lit3(f);
            if (v == Tri::U) fail(ErrorKind::CannotVerify, "literal truth undecided: " + f.text());
            d.junctor = v == Tri::T ? Junctor::Conj : Junctor::Disj;
            return d;
        }
        case FKind::And:
        case FKind::Or:
            d.junctor = f.kind() == FKind::And ? Junctor::Conj : Junctor::Disj;
            d.branches = {{Const::of(hf_ordinal(0)), f->subs[0]}, {Const::of(hf_ordinal(1)), f->subs[1]}};
            return d;
        case FKind::Reg:
        case FKind::P:
        case FKind::PI:
        case FKind::NotReg:
        case FKind::NotP:
        case FKind::NotPI: {
            bool holds;
            const auto& a = f->args;
            if (f.kind() == FKind::Reg || f.kind() == FKind::NotReg) holds = is_regular_const(a[0]);
            else if (f.kind() == FKind::P || f.kind() == FKind::NotP) holds = p_holds(a[0], a[1], a[2]);
            else holds = pi_holds(a[0]);
            d.junctor = negative(f.kind()) ? Junctor::Conj : Junctor::Disj;
            if (holds)
                d.branches = {{zero_idx, negative(f.kind()) ? mem(a[0], a[0]) : not_mem(a[0], a[0])}};
            return d;
        }
        case FKind::Ex:
        case FKind::All: {
            bool ex = f.kind() == FKind::Ex;
            d.junctor = ex ? Junctor::Disj : Junctor::Conj;
            if (ex ? in_sigma(f, n) : in_pi(f, n)) {
                Formula ex_q = ex ? f : neg(f);
                Const w = mu_of(ex_q);
                Formula lit = member_lit(w, f->bound);
                d.space = WitnessSpace::Singleton;
                d.mu_clause = true;
                d.branches = {{w, ex ? f_and(lit, instance(f, w)) : f_or(neg(lit), instance(f, w))}};
                return d;
            }
            auto es = elements(f->bound);
            if (!es) {
                d.space = WitnessSpace::SymbolicLevel;
                d.level = rk_l(f->bound);
                return d;
            }
            for (const auto& e : *es) d.branches.push_back({e, instance(f, e)});
            return d;
        }
    }
    return d;
}

Formula branch_for(const Formula& f, const Const& iota) {
    Decomposition d = decompose(f);
    for (const auto& b : d.branches)
        if (b.iota == iota) return b.f;
    if (d.space == WitnessSpace::SymbolicLevel) {
        // J = {b : b in bound}; decide membership of iota when possible
        const Bound& bd = f->bound;
        bool member;
        if (iota.tag == Const::Tag::HF) {
            member = bd.level ? lt(finite(static_cast<unsigned>(iota.hf.rank())), bd.c.ord)
                              : mem_holds(iota, bd.c);
        } else if (bd.level) {
            Term t = ord_of(iota);  // ordinals of L_t are those below t
            member = lt(t, bd.c.ord);
        } else {
            member = mem_holds(iota, bd.c);
        }
        if (member) return instance(f, iota);
    }
    fail(ErrorKind::Check, "index " + render(iota) + " is not in the index set of " + f.text());
}

// ---------------------------------------------------------------- Mostowski collapse

Term mostowski_term(const Term& t, const Term& x, const Reg& kappa) {
    Term fi = kappa.top() ? fcn(x) : fc1(x, kappa);
    if (t.kind() == Kind::BigI) return fi;
    if (t.kind() == Kind::Mu) {
        const std::string& body = t->body;
        auto dot = body.find('.');
        if (dot == std::string::npos) fail(ErrorKind::Domain, "malformed witness body " + body);
        std::string var = body.substr(0, dot);
        while (!var.empty() && std::isspace(static_cast<unsigned char>(var.back()))) var.pop_back();
        Formula inner = parse_formula(body.substr(dot + 1));
        Formula mapped = mostowski_apply(inner, x, kappa);
        return mu(mostowski_term(t->args[0], x, kappa), var + " . " + mapped.text());
    }
    if (lt(t, x)) return t;
    if (!kappa.top() && t == reg_ordinal(kappa)) return x;
    switch (t.kind()) {
        case Kind::Sum: {
            Term acc = zero();
            for (const auto& p : t->args) acc = add(acc, mostowski_term(p, x, kappa));
            return acc;
        }
        case Kind::Pow: return omega_pow(mostowski_term(t->args[0], x, kappa));
        case Kind::Phi: return veblen(mostowski_term(t->args[0], x, kappa), mostowski_term(t->args[1], x, kappa));
        default: break;
    }
    fail(ErrorKind::Domain, render(t) + " is outside the syntactic domain of the collapse at " + render(x));
}

namespace {

Const map_const(const Const& c, const Term& x, const Reg& k) {
    if (c.tag != Const::Tag::Ord) return c;
    return Const::of(mostowski_term(c.ord, x, k));
}

Formula map_formula(const Formula& f, const Term& x, const Reg& k) {
    switch (f.kind()) {
        case FKind::And: return f_and(map_formula(f->subs[0], x, k), map_formula(f->subs[1], x, k));
        case FKind::Or: return f_or(map_formula(f->subs[0], x, k), map_formula(f->subs[1], x, k));
        case FKind::Ex:
        case FKind::All: {
            Bound b{f->bound.level, map_const(f->bound.c, x, k)};
            return quant(f.kind(), f->var, b, map_formula(f->subs[0], x, k));
        }
        default: {
            std::vector<Const> args;
            for (const auto& a : f->args) args.push_back(map_const(a, x, k));
            return literal(f.kind(), std::move(args));
        }
    }
}

bool class_ok(const Formula& f, const Reg& kappa) {
    int m = kappa.top() ? config().n : 1;
    return in_sigma(f, m) || in_pi(f, m);
}

}  // namespace

bool in_mostowski_domain(const Formula& f, const Term& x, const Reg& kappa) {
    if (!class_ok(f, kappa)) return false;
    try {
        map_formula(f, x, kappa);
        return true;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Domain || e.kind() == ErrorKind::Cap) return false;
        throw;
    }
}

Formula mostowski_apply(const Formula& f, const Term& x, const Reg& kappa) {
    if (x.kind() != Kind::Psi || x->reg != kappa)
        fail(ErrorKind::Domain, "collapse point must be psi at the same slot: " + render(x));
    if (!class_ok(f, kappa))
        fail(ErrorKind::Domain, "formula class outside the collapse domain: " + f.text());
    return map_formula(f, x, kappa);
}

// ---------------------------------------------------------------- sequents

Sequent make_sequent(std::vector<Formula> fs) {
    std::sort(fs.begin(), fs.end(), [](const Formula& a, const Formula& b) { return a.text() < b.text(); });
    fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
    return fs;
}

bool seq_contains(const Sequent& s, const Formula& f) {
    return std::binary_search(s.begin(), s.end(), f,
                              [](const Formula& a, const Formula& b) { return a.text() < b.text(); });
}

Sequent seq_with(Sequent s, const Formula& f) {
    s.push_back(f);
    return make_sequent(std::move(s));
}

Sequent seq_without(const Sequent& s, const Formula& f) {
    Sequent out;
    for (const auto& g : s)
        if (g != f) out.push_back(g);
    return out;
}

Sequent seq_union(const Sequent& a, const Sequent& b) {
    Sequent out = a;
    out.insert(out.end(), b.begin(), b.end());
    return make_sequent(std::move(out));
}

bool seq_subset(const Sequent& a, const Sequent& b) {
    return std::all_of(a.begin(), a.end(), [&](const Formula& f) { return seq_contains(b, f); });
}

std::string render(const Sequent& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ", ";
        out += s[i].text();
    }
    return out;
}

}  // namespace ordkit
