#include "ordkit/derivation.hpp"

#include <functional>

#include "ordkit/arith.hpp"
#include "ordkit/config.hpp"
#include "ordkit/errors.hpp"

namespace ordkit {

Operator make_operator(Term gamma, std::vector<Const> theta) {
    Operator op{std::move(gamma), {}};
    for (auto& c : theta) {
        if (c.is_var()) fail(ErrorKind::Domain, "operator parameter cannot be a variable");
        bool dup = false;
        for (const auto& d : op.theta) dup = dup || d == c;
        if (!dup) op.theta.push_back(std::move(c));
    }
    return op;
}

namespace {

std::vector<Term> theta_ords(const Operator& op, const Const* extra) {
    std::vector<Term> out;
    for (const auto& c : op.theta)
        if (c.tag == Const::Tag::Ord) out.push_back(c.ord);
    if (extra && extra->tag == Const::Tag::Ord) out.push_back(extra->ord);
    return out;
}

bool term_in(const Term& t, const Operator& op, const Const* extra);

bool formula_consts_in(const Formula& f, const Operator& op, const Const* extra) {
    KSet k = k_set(f);
    for (const auto& t : k.ord)
        if (!term_in(t, op, extra)) return false;
    for (const auto& t : k.levels)
        if (!term_in(t, op, extra)) return false;
    return true;
}

bool term_in(const Term& t, const Operator& op, const Const* extra) {
    auto seeds = theta_ords(op, extra);
    for (const auto& s : seeds)
        if (s == t) return true;
    if (t.kind() == Kind::Mu) {
        // mu z in L_b . theta is Sigma_n-definable from b and k(theta), hence in any hull containing them
        if (!term_in(t->args[0], op, extra)) return false;
        const std::string& body = t->body;
        auto dot = body.find('.');
        if (dot == std::string::npos) fail(ErrorKind::Domain, "malformed witness body " + body);
        return formula_consts_in(parse_formula(body.substr(dot + 1)), op, extra);
    }
    return in_hull(t, op.gamma, zero(), seeds);
}

bool const_in(const Const& c, const Operator& op, const Const* extra) {
    if (c.tag != Const::Tag::Ord) return c.tag == Const::Tag::HF;
    return term_in(c.ord, op, extra);
}

}  // namespace

bool term_in_operator(const Term& t, const Operator& op) { return term_in(t, op, nullptr); }
bool const_in_operator(const Const& c, const Operator& op) { return const_in(c, op, nullptr); }

bool operator_le(const Operator& a, const Operator& b, const Const* extra) {
    if (!le(a.gamma, b.gamma)) return false;
    for (const auto& c : a.theta)
        if (!const_in(c, b, extra)) return false;
    return true;
}

std::string to_string(RuleTag t) {
    switch (t) {
        case RuleTag::Or: return "or";
        case RuleTag::And: return "and";
        case RuleTag::Cut: return "cut";
        case RuleTag::AxP: return "axP";
        case RuleTag::AxPI: return "axPI";
        case RuleTag::F1: return "F1";
        case RuleTag::FN: return "FN";
    }
    return "?";
}

Rule rule_or(Formula main, Const iota) {
    Rule r;
    r.tag = RuleTag::Or;
    r.main = std::move(main);
    r.iota = std::move(iota);
    return r;
}

Rule rule_and(Formula main) {
    Rule r;
    r.tag = RuleTag::And;
    r.main = std::move(main);
    return r;
}

Rule rule_cut(Formula c) {
    Rule r;
    r.tag = RuleTag::Cut;
    r.main = std::move(c);
    return r;
}

Rule rule_axp(Term lambda, Term alpha) {
    Rule r;
    r.tag = RuleTag::AxP;
    r.lambda = std::move(lambda);
    r.alpha = std::move(alpha);
    return r;
}

Rule rule_axpi(Term alpha) {
    Rule r;
    r.tag = RuleTag::AxPI;
    r.alpha = std::move(alpha);
    return r;
}

Rule rule_f1(Term x, Reg slot, Sequent side, Sequent gamma0) {
    Rule r;
    r.tag = RuleTag::F1;
    r.x = std::move(x);
    r.slot = std::move(slot);
    r.side = std::move(side);
    r.gamma0 = std::move(gamma0);
    return r;
}

Rule rule_fn(Term x, Sequent side, Sequent gamma0) {
    Rule r;
    r.tag = RuleTag::FN;
    r.x = std::move(x);
    r.slot = reg_top();
    r.side = std::move(side);
    r.gamma0 = std::move(gamma0);
    return r;
}

Formula p_axiom_formula(const Term& lambda, const Term& alpha) {
    Const l = Const::of(lambda);
    Formula body = f_and(mem(Const::of(alpha), Const::variable("x")),
                         literal(FKind::P, {l, Const::variable("x"), Const::variable("y")}));
    return f_ex("x", Bound::of(l), f_ex("y", Bound::of(l), body));
}

Formula pi_axiom_formula(const Term& alpha) {
    Formula body = f_and(mem(Const::of(alpha), Const::variable("x")), literal(FKind::PI, {Const::variable("x")}));
    return f_ex("x", Bound::of(Const::of(big_i())), body);
}

bool is_p_axiom_shape(const Formula& f) {
    if (f.kind() != FKind::Ex || f->bound.level || f->bound.c.tag != Const::Tag::Ord) return false;
    const Formula& b = f->subs[0];
    auto mem_alpha_x = [&](const Formula& g) {
        return g.kind() == FKind::Mem && g->args[1].is_var() && g->args[1].var == f->var &&
               g->args[0].tag == Const::Tag::Ord;
    };
    if (f->bound.c.ord.kind() == Kind::BigI) {
        if (b.kind() != FKind::And || !mem_alpha_x(b->subs[0])) return false;
        const Formula& p = b->subs[1];
        return p.kind() == FKind::PI && p->args[0].is_var() && p->args[0].var == f->var;
    }
    if (b.kind() != FKind::Ex || !(b->bound == f->bound)) return false;
    const Formula& c = b->subs[0];
    if (c.kind() != FKind::And || !mem_alpha_x(c->subs[0])) return false;
    const Formula& p = c->subs[1];
    return p.kind() == FKind::P && p->args[0] == f->bound.c && p->args[1].is_var() && p->args[1].var == f->var &&
           p->args[2].is_var() && p->args[2].var == b->var;
}

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Ok: return "ok";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::CannotVerify: return "cannot-verify";
        case CheckStatus::Arity: return "arity";
    }
    return "?";
}

// ---------------------------------------------------------------- checker

namespace {

struct Verdict {
    CheckStatus status = CheckStatus::Ok;
    std::string message;
};

class Checker {
public:
    CheckReport run(const Derivation& d) {
        CheckReport r;
        walk(d, "root", r);
        if (r.status == CheckStatus::Ok) {
            r.path.clear();
            r.bound = d.bound;
            r.cutrank = d.cutrank;
            r.seq = d.seq;
        }
        return r;
    }

private:
    void walk(const Derivation& d, const std::string& path, CheckReport& r) {
        Verdict v;
        try {
            v = node(d);
        } catch (const Error& e) {
            v = {e.kind() == ErrorKind::CannotVerify ? CheckStatus::CannotVerify : CheckStatus::Fail, e.what()};
        }
        if (v.status != CheckStatus::Ok) {
            r.status = v.status;
            r.path = path;
            r.message = v.message;
            return;
        }
        for (std::size_t i = 0; i < d.children.size(); ++i) {
            walk(d.children[i], path + "." + std::to_string(i), r);
            if (r.status != CheckStatus::Ok) return;
        }
    }

    static Verdict bad(std::string m) { return {CheckStatus::Fail, std::move(m)}; }
    static Verdict unknown(std::string m) { return {CheckStatus::CannotVerify, std::move(m)}; }
    static Verdict arity(std::string m) { return {CheckStatus::Arity, std::move(m)}; }

    static Verdict control(const Derivation& d) {
        if (!term_in_operator(d.bound, d.op)) return bad("bound " + render(d.bound) + " not in the operator");
        for (const auto& f : d.seq) {
            KSet k = k_set(f);
            for (const auto& t : k.ord) {
                if (!term_in_operator(t, d.op)) {
                    if (t.kind() == Kind::Mu) return unknown("witness " + render(t) + " not controlled");
                    return bad("constant " + render(t) + " of " + f.text() + " not in the operator");
                }
            }
            for (const auto& t : k.levels)
                if (!term_in_operator(t, d.op)) return bad("level L(" + render(t) + ") not in the operator");
        }
        return {};
    }

    // "rk_L(iota) < kappa => rk_L(iota) < a"
    static Verdict or_rank(const Const& iota, const Derivation& d) {
        Term k = reg_ordinal(d.kappa);
        if (iota.tag == Const::Tag::Ord && iota.ord.kind() == Kind::Mu) {
            RankInterval ri = rank_interval(iota.ord);
            if (le(ri.hi, d.bound) || le(k, ri.lo)) return {};
            return unknown("L-rank of witness " + render(iota.ord) + " not decided against the bound");
        }
        Term r = rk_l(iota);
        if (lt(r, k) && !lt(r, d.bound))
            return bad("witness " + render(iota) + " has L-rank " + render(r) + " not below the bound " +
                       render(d.bound));
        return {};
    }

    static Verdict child_common(const Derivation& d, const Derivation& c, const Const* extra) {
        if (!lt(c.bound, d.bound))
            return bad("premise bound " + render(c.bound) + " not below " + render(d.bound));
        if (!le(c.cutrank, d.cutrank))
            return bad("premise cutrank " + render(c.cutrank) + " exceeds " + render(d.cutrank));
        if (!le(reg_ordinal(d.kappa), reg_ordinal(c.kappa))) return bad("premise kappa below the conclusion's");
        if (!operator_le(c.op, d.op, extra)) return bad("premise operator not contained in the conclusion's");
        return {};
    }

    static bool fits(const Sequent& child, const Sequent& parent, const Formula& extra) {
        for (const auto& f : child)
            if (f != extra && !seq_contains(parent, f)) return false;
        return true;
    }

    static bool fits(const Sequent& child, const Sequent& parent) {
        for (const auto& f : child)
            if (!seq_contains(parent, f)) return false;
        return true;
    }

    // the hull condition of the F-rules, approximated syntactically
    static Verdict f_hull(const Term& t, const Derivation& d, const Term& x, const Term& lam) {
        std::function<bool(const Term&)> ok = [&](const Term& s) -> bool {
            if (s.kind() == Kind::BigI || s.kind() == Kind::Zero) return true;
            if (lam && s == lam) return true;
            if (s.kind() != Kind::Mu && lt(s, x) && term_in_operator(s, d.op)) return true;
            switch (s.kind()) {
                case Kind::Sum:
                case Kind::Pow:
                case Kind::Phi:
                    for (const auto& a : s->args)
                        if (!ok(a)) return false;
                    return true;
                default: return false;
            }
        };
        if (ok(t)) return {};
        return unknown("cannot place " + render(t) + " in the Sigma_1 hull below " + render(x));
    }

    static Verdict f_rule(const Derivation& d) {
        const Rule& r = d.rule;
        if (d.children.size() != 1) return arity("F-rule needs one premise");
        bool top = r.tag == RuleTag::FN;
        Reg slot = top ? reg_top() : r.slot;
        if (top != slot.top()) return bad("F1 needs a regular slot below I");
        if (r.x.kind() != Kind::Psi || r.x->reg != slot) return bad("collapse point must be psi at the slot");
        if (!term_in_operator(r.x, d.op)) return bad("collapse point " + render(r.x) + " not in the operator");
        Term lam;
        if (!top) {
            lam = reg_ordinal(slot);
            if (!term_in_operator(lam, d.op)) return bad("slot " + render(lam) + " not in the operator");
        }
        int m = top ? config().n : 1;
        Sequent image = r.side;
        for (const auto& g : r.gamma0) {
            if (!in_sigma(g, m)) return bad("F-rule formula outside Sigma_" + std::to_string(m) + ": " + g.text());
            if (!in_mostowski_domain(g, r.x, slot)) return unknown("formula outside the collapse domain: " + g.text());
            image = seq_with(image, mostowski_apply(g, r.x, slot));
            KSet k = k_set(g);
            for (const auto& t : k.ord) {
                Verdict v = f_hull(t, d, r.x, lam);
                if (v.status != CheckStatus::Ok) return v;
            }
            for (const auto& t : k.levels) {
                Verdict v = f_hull(t, d, r.x, lam);
                if (v.status != CheckStatus::Ok) return v;
            }
        }
        if (image != d.seq) return bad("sequent is not Lambda together with the collapsed Gamma_0");
        const Derivation& c = d.children[0];
        Verdict v = child_common(d, c, nullptr);
        if (v.status != CheckStatus::Ok) return v;
        if (!fits(c.seq, seq_union(r.side, make_sequent(r.gamma0)))) return bad("premise not within Lambda, Gamma_0");
        return {};
    }

    Verdict node(const Derivation& d) {
        if (!d.op.gamma || !d.bound || !d.cutrank) return bad("missing operator index, bound or cutrank");
        for (const Term* t : {&d.op.gamma, &d.bound, &d.cutrank})
            if (!is_normal(*t)) return bad("not a normal term: " + render(*t));
        if (!is_normal(d.kappa)) return bad("kappa not a normal regular slot");
        if (!lt(d.cutrank, add(big_i(), omega()))) return bad("cutrank not below I+w");
        for (const auto& f : d.seq)
            if (!is_sentence(f)) return bad("sequent member is not a sentence: " + f.text());
        Verdict v = control(d);
        if (v.status != CheckStatus::Ok) return v;

        const Rule& r = d.rule;
        switch (r.tag) {
            case RuleTag::Or: {
                if (d.children.size() != 1) return arity("(or) needs one premise");
                if (!seq_contains(d.seq, r.main)) return bad("main formula not in the sequent: " + r.main.text());
                Decomposition dec = decompose(r.main);
                if (dec.junctor != Junctor::Disj) return bad("(or) on a conjunctive formula " + r.main.text());
                Formula b = branch_for(r.main, r.iota);
                if (r.main.kind() == FKind::Ex || r.main.kind() == FKind::All) {
                    v = or_rank(r.iota, d);
                    if (v.status != CheckStatus::Ok) return v;
                }
                const Derivation& c = d.children[0];
                v = child_common(d, c, nullptr);
                if (v.status != CheckStatus::Ok) return v;
                if (!fits(c.seq, d.seq, b)) return bad("premise not within the sequent plus " + b.text());
                return {};
            }
            case RuleTag::And: {
                if (!seq_contains(d.seq, r.main)) return bad("main formula not in the sequent: " + r.main.text());
                Decomposition dec = decompose(r.main);
                if (dec.junctor != Junctor::Conj) return bad("(and) on a disjunctive formula " + r.main.text());
                if (dec.space == WitnessSpace::SymbolicLevel)
                    return bad("(and) over the non-enumerable index set of " + r.main.text());
                if (d.children.size() != dec.branches.size())
                    return arity("(and) needs " + std::to_string(dec.branches.size()) + " premises");
                for (std::size_t i = 0; i < dec.branches.size(); ++i) {
                    const auto& br = dec.branches[i];
                    const Derivation& c = d.children[i];
                    v = child_common(d, c, &br.iota);
                    if (v.status != CheckStatus::Ok) return v;
                    if (!fits(c.seq, d.seq, br.f))
                        return bad("premise " + std::to_string(i) + " not within the sequent plus " + br.f.text());
                }
                return {};
            }
            case RuleTag::Cut: {
                if (d.children.size() != 2) return arity("(cut) needs two premises");
                Term rc = rk(r.main);
                if (!lt(rc, d.cutrank))
                    return bad("cut formula rank " + render(rc) + " not below cutrank " + render(d.cutrank));
                for (int i = 0; i < 2; ++i) {
                    const Derivation& c = d.children[i];
                    v = child_common(d, c, nullptr);
                    if (v.status != CheckStatus::Ok) return v;
                    Formula side = i == 0 ? neg(r.main) : r.main;
                    if (!fits(c.seq, d.seq, side))
                        return bad("premise " + std::to_string(i) + " not within the sequent plus " + side.text());
                }
                return {};
            }
            case RuleTag::AxP: {
                if (!d.children.empty()) return arity("axiom has no premises");
                if (!is_regular_const(Const::of(r.lambda))) return bad(render(r.lambda) + " is not regular");
                if (!lt(r.alpha, r.lambda)) return bad("alpha not below lambda");
                if (!seq_contains(d.seq, p_axiom_formula(r.lambda, r.alpha))) return bad("P axiom formula missing");
                return {};
            }
            case RuleTag::AxPI: {
                if (!d.children.empty()) return arity("axiom has no premises");
                if (!lt(r.alpha, big_i())) return bad("alpha not below I");
                if (!seq_contains(d.seq, pi_axiom_formula(r.alpha))) return bad("P_I axiom formula missing");
                return {};
            }
            case RuleTag::F1:
            case RuleTag::FN: return f_rule(d);
        }
        return bad("unknown rule");
    }
};

}  // namespace

CheckReport check(const Derivation& d) { return Checker().run(d); }

void require_ok(const Derivation& d, const std::string& what) {
    CheckReport r = check(d);
    if (r.ok()) return;
    fail(r.status == CheckStatus::CannotVerify ? ErrorKind::CannotVerify : ErrorKind::Check,
         what + ": " + to_string(r.status) + " at " + r.path + ": " + r.message);
}

Derivation weaken_kappa(const Derivation& d, const Reg& lambda) {
    if (!le(reg_ordinal(lambda), reg_ordinal(d.kappa)))
        fail(ErrorKind::Domain, "cannot raise kappa from " + render(d.kappa) + " to " + render(lambda));
    std::function<Derivation(const Derivation&)> go = [&](const Derivation& n) {
        Derivation out = n;
        out.kappa = lambda;
        for (auto& c : out.children) c = go(c);
        return out;
    };
    Derivation out = go(d);
    require_ok(out, "weaken_kappa");
    return out;
}

std::size_t node_count(const Derivation& d) {
    std::size_t n = 1;
    for (const auto& c : d.children) n += node_count(c);
    return n;
}

bool cut_free(const Derivation& d) {
    if (d.rule.tag == RuleTag::Cut) return false;
    for (const auto& c : d.children)
        if (!cut_free(c)) return false;
    return true;
}

// ---------------------------------------------------------------- JSON

Const parse_const(const std::string& s) {
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i < s.size() && s[i] == '{') return Const::of(parse_hf(s));
    return Const::of(parse_term(s));
}

namespace {

using nlohmann::json;

json seq_json(const Sequent& s) {
    json a = json::array();
    for (const auto& f : s) a.push_back(f.text());
    return a;
}

json rule_json(const Rule& r) {
    json j;
    j["tag"] = to_string(r.tag);
    switch (r.tag) {
        case RuleTag::Or:
            j["main"] = r.main.text();
            j["iota"] = render(r.iota);
            break;
        case RuleTag::And: j["main"] = r.main.text(); break;
        case RuleTag::Cut: j["formula"] = r.main.text(); break;
        case RuleTag::AxP:
            j["lambda"] = render(r.lambda);
            j["alpha"] = render(r.alpha);
            break;
        case RuleTag::AxPI: j["alpha"] = render(r.alpha); break;
        case RuleTag::F1:
        case RuleTag::FN:
            j["x"] = render(r.x);
            if (r.tag == RuleTag::F1) j["slot"] = render(r.slot);
            j["side"] = seq_json(r.side);
            j["gamma0"] = seq_json(r.gamma0);
            break;
    }
    return j;
}

[[noreturn]] void schema(const std::string& path, const std::string& msg) {
    fail(ErrorKind::Syntax, path + ": " + msg);
}

const json& field(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) schema(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) schema(path, std::string("missing field '") + key + "'");
    return *it;
}

std::string str_field(const json& j, const char* key, const std::string& path) {
    const json& v = field(j, key, path);
    if (!v.is_string()) schema(path + "." + key, "expected a string");
    return v.get<std::string>();
}

template <class F>
auto parsed(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Syntax || e.kind() == ErrorKind::NotNormal || e.kind() == ErrorKind::Cap)
            schema(path, e.what());
        throw;
    }
}

Term term_field(const json& j, const char* key, const std::string& path) {
    std::string s = str_field(j, key, path);
    return parsed(path + "." + key, [&] { return parse_term(s); });
}

Formula formula_field(const json& j, const char* key, const std::string& path) {
    std::string s = str_field(j, key, path);
    return parsed(path + "." + key, [&] { return parse_formula(s); });
}

Sequent seq_field(const json& j, const char* key, const std::string& path) {
    const json& a = field(j, key, path);
    if (!a.is_array()) schema(path + "." + key, "expected an array");
    std::vector<Formula> fs;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::string p = path + "." + key + "[" + std::to_string(i) + "]";
        if (!a[i].is_string()) schema(p, "expected a formula string");
        fs.push_back(parsed(p, [&] { return parse_formula(a[i].get<std::string>()); }));
    }
    return make_sequent(std::move(fs));
}

Rule rule_from(const json& j, const std::string& path) {
    std::string tag = str_field(j, "tag", path);
    if (tag == "or") {
        std::string iota = str_field(j, "iota", path);
        return rule_or(formula_field(j, "main", path), parsed(path + ".iota", [&] { return parse_const(iota); }));
    }
    if (tag == "and") return rule_and(formula_field(j, "main", path));
    if (tag == "cut") return rule_cut(formula_field(j, "formula", path));
    if (tag == "axP") return rule_axp(term_field(j, "lambda", path), term_field(j, "alpha", path));
    if (tag == "axPI") return rule_axpi(term_field(j, "alpha", path));
    if (tag == "F1") {
        std::string slot = str_field(j, "slot", path);
        return rule_f1(term_field(j, "x", path), parsed(path + ".slot", [&] { return parse_reg(slot); }),
                       seq_field(j, "side", path), seq_field(j, "gamma0", path));
    }
    if (tag == "FN") return rule_fn(term_field(j, "x", path), seq_field(j, "side", path), seq_field(j, "gamma0", path));
    schema(path + ".tag", "unknown rule tag '" + tag + "'");
}

Derivation node_from(const json& j, const std::string& path) {
    Derivation d;
    const json& op = field(j, "op", path);
    d.op.gamma = term_field(op, "gamma", path + ".op");
    const json& th = field(op, "theta", path + ".op");
    if (!th.is_array()) schema(path + ".op.theta", "expected an array");
    std::vector<Const> theta;
    for (std::size_t i = 0; i < th.size(); ++i) {
        std::string p = path + ".op.theta[" + std::to_string(i) + "]";
        if (!th[i].is_string()) schema(p, "expected a string");
        theta.push_back(parsed(p, [&] { return parse_const(th[i].get<std::string>()); }));
    }
    d.op = make_operator(d.op.gamma, std::move(theta));
    std::string kappa = str_field(j, "kappa", path);
    d.kappa = parsed(path + ".kappa", [&] { return parse_reg(kappa); });
    d.bound = term_field(j, "bound", path);
    d.cutrank = term_field(j, "cutrank", path);
    d.seq = seq_field(j, "sequent", path);
    d.rule = rule_from(field(j, "rule", path), path + ".rule");
    const json& cs = field(j, "children", path);
    if (!cs.is_array()) schema(path + ".children", "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i)
        d.children.push_back(node_from(cs[i], path + ".children[" + std::to_string(i) + "]"));
    return d;
}

}  // namespace

nlohmann::json to_json(const Derivation& d) {
    json j;
    json th = json::array();
    for (const auto& c : d.op.theta) th.push_back(render(c));
    j["op"] = {{"gamma", render(d.op.gamma)}, {"theta", th}};
    j["kappa"] = render(d.kappa);
    j["bound"] = render(d.bound);
    j["cutrank"] = render(d.cutrank);
    j["sequent"] = seq_json(d.seq);
    j["rule"] = rule_json(d.rule);
    json cs = json::array();
    for (const auto& c : d.children) cs.push_back(to_json(c));
    j["children"] = cs;
    return j;
}

Derivation from_json(const nlohmann::json& j) { return node_from(j, "root"); }

std::string serialize(const Derivation& d) { return to_json(d).dump(1); }

Derivation deserialize(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::Syntax, std::string("malformed JSON: ") + e.what());
    }
    return from_json(j);
}

}  // namespace ordkit
