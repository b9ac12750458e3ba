#include "ordkit/term.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "ordkit/errors.hpp"

namespace ordkit {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

Term make(Kind k, std::vector<Term> args, Reg r = {}, std::string body = {}) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->args = std::move(args);
    n->reg = std::move(r);
    n->body = std::move(body);
    std::size_t h = static_cast<std::size_t>(k) * 1315423911u;
    int sz = 1;
    for (const auto& a : n->args) {
        h = mix(h, a.hash());
        sz += a.size();
    }
    if (k == Kind::Psi || k == Kind::Fc1) {
        h = mix(h, n->reg.top() ? 77u : mix(91u, n->reg.pred.hash()));
        sz += reg_size(n->reg);
    }
    if (k == Kind::Mu) h = mix(h, std::hash<std::string>{}(n->body));
    n->hash = h;
    n->size = sz;
    return Term(std::move(n));
}

}  // namespace

Kind Term::kind() const { return p_->kind; }
std::size_t Term::hash() const { return p_->hash; }
int Term::size() const { return p_->size; }

bool operator==(const Term& a, const Term& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size()) return false;
    const Node& x = *a;
    const Node& y = *b;
    if (x.args.size() != y.args.size()) return false;
    for (std::size_t i = 0; i < x.args.size(); ++i)
        if (!(x.args[i] == y.args[i])) return false;
    if ((x.kind == Kind::Psi || x.kind == Kind::Fc1) && !(x.reg == y.reg)) return false;
    return x.body == y.body;
}

bool operator==(const Reg& a, const Reg& b) {
    if (a.top() || b.top()) return a.top() == b.top();
    return a.pred == b.pred;
}

Term zero() {
    static const Term z = make(Kind::Zero, {});
    return z;
}
Term big_i() {
    static const Term i = make(Kind::BigI, {});
    return i;
}
Term sum(std::vector<Term> parts) {
    if (parts.size() < 2) fail(ErrorKind::Domain, "Sum needs at least two parts");
    return make(Kind::Sum, std::move(parts));
}
Term pow(Term e) { return make(Kind::Pow, {std::move(e)}); }
Term aleph(Term idx) { return make(Kind::Aleph, {std::move(idx)}); }
Term phi(Term a, Term b) { return make(Kind::Phi, {std::move(a), std::move(b)}); }
Term psi(Reg k, Term alpha) { return make(Kind::Psi, {std::move(alpha)}, std::move(k)); }
Term fc1(Term x, Reg k) { return make(Kind::Fc1, {std::move(x)}, std::move(k)); }
Term fcn(Term x) { return make(Kind::FcN, {std::move(x)}); }
Term mu(Term bound, std::string body) { return make(Kind::Mu, {std::move(bound)}, {}, std::move(body)); }

Reg reg_succ(Term pred) { return Reg{std::move(pred)}; }
Reg reg_top() { return Reg{}; }

Term one() {
    static const Term o = pow(zero());
    return o;
}
Term omega() {
    static const Term w = pow(one());
    return w;
}
Term finite(unsigned k) {
    if (k == 0) return zero();
    if (k == 1) return one();
    return sum(std::vector<Term>(k, one()));
}

std::vector<Term> parts_of(const Term& t) {
    if (t.kind() == Kind::Zero) return {};
    if (t.kind() == Kind::Sum) return t->args;
    return {t};
}

const Term& arg(const Term& t, std::size_t i) {
    if (i >= t->args.size()) fail(ErrorKind::Domain, "term has no argument " + std::to_string(i));
    return t->args[i];
}

const Reg& reg_of(const Term& t) {
    if (t.kind() != Kind::Psi && t.kind() != Kind::Fc1) fail(ErrorKind::Domain, "term has no kappa slot");
    return t->reg;
}

bool is_sc_kind(const Term& t) {
    switch (t.kind()) {
        case Kind::BigI:
        case Kind::Aleph:
        case Kind::Psi:
        case Kind::Fc1:
        case Kind::FcN:
            return true;
        default:
            return false;
    }
}

bool is_finite(const Term& t, unsigned* value) {
    unsigned v = 0;
    for (const auto& p : parts_of(t)) {
        if (!(p == one())) return false;
        ++v;
    }
    if (value) *value = v;
    return true;
}

int reg_size(const Reg& r) { return r.top() ? 1 : 1 + r.pred.size(); }

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
    explicit Parser(std::string_view s, std::size_t at = 0) : s_(s), i_(at) {}
    std::size_t pos() const { return i_; }

    Term term() {
        std::vector<Term> parts;
        push_flat(parts, atom());
        for (;;) {
            ws();
            // "+1)" closes a W(t+1) successor slot; leave it to the caller
            if (peek() == '+' && !succ_suffix_ahead()) {
                ++i_;
                push_flat(parts, atom());
            } else {
                break;
            }
        }
        if (parts.size() == 1) return parts[0];
        return sum(std::move(parts));
    }

    Reg reg() {
        ws();
        if (peek() == 'I') {
            ++i_;
            return reg_top();
        }
        expect("W(");
        Term p = term();
        expect("+1)");
        return reg_succ(p);
    }

    void end() {
        ws();
        if (i_ != s_.size()) throw ParseError(i_, "trailing input");
    }

private:
    static void push_flat(std::vector<Term>& out, const Term& t) {
        if (t.kind() == Kind::Sum)
            out.insert(out.end(), t->args.begin(), t->args.end());
        else
            out.push_back(t);
    }

    Term atom() {
        ws();
        std::size_t at = i_;
        if (eat("0")) return zero();
        if (eat("w^(")) {
            Term e = term();
            expect(")");
            return pow(e);
        }
        if (eat("W(")) {
            Term idx = term();
            ws();
            if (eat("+1)")) return aleph(succ_of(idx));
            expect(")");
            return aleph(idx);
        }
        if (eat("phi(")) {
            Term a = term();
            expect(",");
            Term b = term();
            expect(")");
            return phi(a, b);
        }
        if (eat("psi(")) {
            Reg k = reg();
            expect(";");
            Term a = term();
            expect(")");
            return psi(k, a);
        }
        if (eat("fc1(")) {
            Term x = term();
            expect(";");
            Reg k = reg();
            expect(")");
            return fc1(x, k);
        }
        if (eat("fcn(")) {
            Term x = term();
            expect(")");
            return fcn(x);
        }
        if (eat("mu[")) {
            expect("L(");
            Term b = term();
            expect(")");
            expect("|");
            ws();
            std::size_t start = i_;
            int depth = 0;
            while (i_ < s_.size() && !(s_[i_] == ']' && depth == 0)) {
                if (s_[i_] == '[') ++depth;
                if (s_[i_] == ']') --depth;
                ++i_;
            }
            if (i_ >= s_.size()) throw ParseError(start, "unterminated mu[...]");
            std::string body(s_.substr(start, i_ - start));
            while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.pop_back();
            ++i_;
            return mu(b, body);
        }
        if (eat("I")) return big_i();
        if (at >= s_.size()) throw ParseError(at, "unexpected end of input");
        throw ParseError(at, std::string("unknown symbol '") + s_[at] + "'");
    }

    // t+1 as a term: flatten and append the unit part (Zero contributes nothing)
    static Term succ_of(const Term& t) {
        std::vector<Term> parts;
        if (t.kind() != Kind::Zero) push_flat(parts, t);
        parts.push_back(one());
        if (parts.size() == 1) return parts[0];
        return sum(std::move(parts));
    }

    bool succ_suffix_ahead() const {
        std::size_t j = i_;
        auto skip = [&] {
            while (j < s_.size() && std::isspace(static_cast<unsigned char>(s_[j]))) ++j;
        };
        if (j >= s_.size() || s_[j] != '+') return false;
        ++j;
        skip();
        if (j >= s_.size() || s_[j] != '1') return false;
        ++j;
        skip();
        return j < s_.size() && s_[j] == ')';
    }

    void ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }

    // whitespace-insensitive literal match
    bool eat(std::string_view lit) {
        ws();
        std::size_t j = i_;
        for (char c : lit) {
            while (j < s_.size() && std::isspace(static_cast<unsigned char>(s_[j]))) ++j;
            if (j >= s_.size() || s_[j] != c) return false;
            ++j;
        }
        i_ = j;
        return true;
    }
    void expect(std::string_view lit) {
        if (!eat(lit)) throw ParseError(i_, "expected '" + std::string(lit) + "'");
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

}  // namespace

Term parse_term(std::string_view src) {
    Parser p(src);
    Term t = p.term();
    p.end();
    return t;
}

Term parse_term_prefix(std::string_view src, std::size_t& pos) {
    Parser p(src, pos);
    Term t = p.term();
    pos = p.pos();
    return t;
}

Reg parse_reg(std::string_view src) {
    Parser p(src);
    Reg r = p.reg();
    p.end();
    return r;
}

// ---------------------------------------------------------------- rendering

std::string render(const Reg& r) { return r.top() ? "I" : "W(" + render(r.pred) + "+1)"; }

std::string render(const Term& t) {
    switch (t.kind()) {
        case Kind::Zero: return "0";
        case Kind::BigI: return "I";
        case Kind::Sum: {
            std::string s;
            for (std::size_t i = 0; i < t->args.size(); ++i) {
                if (i) s += "+";
                s += render(t->args[i]);
            }
            return s;
        }
        case Kind::Pow: return "w^(" + render(t->args[0]) + ")";
        case Kind::Aleph: return "W(" + render(t->args[0]) + ")";
        case Kind::Phi: return "phi(" + render(t->args[0]) + "," + render(t->args[1]) + ")";
        case Kind::Psi: return "psi(" + render(t->reg) + ";" + render(t->args[0]) + ")";
        case Kind::Fc1: return "fc1(" + render(t->args[0]) + ";" + render(t->reg) + ")";
        case Kind::FcN: return "fcn(" + render(t->args[0]) + ")";
        case Kind::Mu: return "mu[L(" + render(t->args[0]) + ")|" + t->body + "]";
    }
    return "?";
}

namespace {
std::string dbg_reg(const Reg& r) { return r.top() ? "TopI" : "AlephSucc(" + debug_string(r.pred) + ")"; }
}  // namespace

std::string debug_string(const Term& t) {
    switch (t.kind()) {
        case Kind::Zero: return "Zero";
        case Kind::BigI: return "BigI";
        case Kind::Sum: {
            std::string s = "Sum[";
            for (std::size_t i = 0; i < t->args.size(); ++i) {
                if (i) s += ",";
                s += debug_string(t->args[i]);
            }
            return s + "]";
        }
        case Kind::Pow: return "Pow(" + debug_string(t->args[0]) + ")";
        case Kind::Aleph: return "Aleph(" + debug_string(t->args[0]) + ")";
        case Kind::Phi: return "Phi(" + debug_string(t->args[0]) + "," + debug_string(t->args[1]) + ")";
        case Kind::Psi: return "Psi(" + dbg_reg(t->reg) + "," + debug_string(t->args[0]) + ")";
        case Kind::Fc1: return "Fc1(" + debug_string(t->args[0]) + "," + dbg_reg(t->reg) + ")";
        case Kind::FcN: return "FcN(" + debug_string(t->args[0]) + ")";
        case Kind::Mu: return "Mu(" + debug_string(t->args[0]) + "," + t->body + ")";
    }
    return "?";
}

// ---------------------------------------------------------------- structure

std::vector<Term> subterms(const Term& t) {
    std::vector<Term> out;
    std::unordered_set<Term, TermHash> seen;
    std::vector<Term> stack{t};
    while (!stack.empty()) {
        Term u = stack.back();
        stack.pop_back();
        if (!seen.insert(u).second) continue;
        out.push_back(u);
        for (const auto& a : u->args) stack.push_back(a);
        if ((u.kind() == Kind::Psi || u.kind() == Kind::Fc1) && !u->reg.top()) stack.push_back(u->reg.pred);
    }
    return out;
}

bool structural_less(const Term& a, const Term& b) {
    if (a.kind() != b.kind()) return a.kind() < b.kind();
    if (a.size() != b.size()) return a.size() < b.size();
    const auto& x = a->args;
    const auto& y = b->args;
    if (x.size() != y.size()) return x.size() < y.size();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (structural_less(x[i], y[i])) return true;
        if (structural_less(y[i], x[i])) return false;
    }
    if (a.kind() == Kind::Psi || a.kind() == Kind::Fc1) {
        const Reg& r = a->reg;
        const Reg& s = b->reg;
        if (r.top() != s.top()) return r.top();
        if (!r.top()) {
            if (structural_less(r.pred, s.pred)) return true;
            if (structural_less(s.pred, r.pred)) return false;
        }
    }
    return a->body < b->body;
}

}  // namespace ordkit
