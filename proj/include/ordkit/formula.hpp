#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ordkit/hf.hpp"
#include "ordkit/term.hpp"

namespace ordkit {

// Argument of a literal or a quantifier bound: HF set, ordinal term (Mu included), or variable.
struct Const {
    enum class Tag : std::uint8_t { HF, Ord, Var };
    Tag tag = Tag::HF;
    HFSet hf;
    Term ord;
    std::string var;

    static Const of(HFSet a);
    static Const of(Term t);
    static Const variable(std::string name);

    bool is_var() const { return tag == Tag::Var; }
    friend bool operator==(const Const& a, const Const& b);
    friend bool operator!=(const Const& a, const Const& b) { return !(a == b); }
};

std::string render(const Const& c);

// Quantifier bound: a set constant c, or the level L_t (level=true, c holds the ordinal t).
struct Bound {
    bool level = false;
    Const c;

    static Bound hf(HFSet a) { return {false, Const::of(std::move(a))}; }
    static Bound of_level(Term t) { return {true, Const::of(std::move(t))}; }
    static Bound of(Const c) { return {false, std::move(c)}; }
    bool is_top_level() const;  // L_I, i.e. an unbounded quantifier
    friend bool operator==(const Bound& a, const Bound& b) { return a.level == b.level && a.c == b.c; }
};

std::string render(const Bound& b);

enum class FKind : std::uint8_t { Mem, NotMem, Reg, NotReg, P, NotP, PI, NotPI, And, Or, Ex, All };

struct FNode;

// Sentence (or formula with free variables) in negation normal form. Equality is structural.
class Formula {
public:
    Formula() = default;
    explicit Formula(std::shared_ptr<const FNode> p) : p_(std::move(p)) {}
    const FNode* operator->() const { return p_.get(); }
    const FNode& operator*() const { return *p_; }
    explicit operator bool() const { return static_cast<bool>(p_); }
    FKind kind() const;
    const std::string& text() const;  // canonical rendering
    std::size_t hash() const;
    friend bool operator==(const Formula& a, const Formula& b);
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

private:
    std::shared_ptr<const FNode> p_;
};

struct FNode {
    FKind kind;
    std::vector<Const> args;    // literals
    std::vector<Formula> subs;  // And/Or: 2; Ex/All: body
    std::string var;            // Ex/All
    Bound bound;                // Ex/All
    std::string text;
    std::size_t hash = 0;
};

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// constructors
Formula literal(FKind k, std::vector<Const> args);
Formula f_and(Formula a, Formula b);
Formula f_or(Formula a, Formula b);
Formula f_ex(std::string var, Bound b, Formula body);
Formula f_all(std::string var, Bound b, Formula body);
Formula mem(Const a, Const b);
Formula not_mem(Const a, Const b);

bool is_literal(const Formula& f);
Formula neg(const Formula& f);
Formula subst(const Formula& f, const std::string& var, const Const& c);
Formula instance(const Formula& quantified, const Const& c);  // body[var := c]
bool is_sentence(const Formula& f);

Formula parse_formula(std::string_view src);
std::string render(const Formula& f);

// ---- measures

struct KSet {
    std::vector<HFSet> hf;     // always contains the empty set (the constant 0)
    std::vector<Term> ord;     // ordinal-term constants, Mu included
    std::vector<Term> levels;  // t for every bound L_t
};
KSet k_set(const Formula& f);
KSet qk_set(const Formula& f);

Term rk_l(const Const& c);
Term rk_l(const Bound& b);
Term rk(const Formula& f);

enum class FClass : std::uint8_t { Delta0, Sigma, Pi, NotPrenex };
struct ClassInfo {
    FClass cls;
    int level;
};
std::string to_string(const ClassInfo& c);
ClassInfo sigma_pi_class(const Formula& f);
bool in_sigma(const Formula& f, int m);  // Sigma_m, with Delta0 and Pi_{m-1} included
bool in_pi(const Formula& f, int m);
bool in_sigma_hat(const Formula& f, const Term& lambda);

// ---- truth on the evaluable fragment

bool is_regular_const(const Const& a);              // a in R
bool p_holds(const Const& a, const Const& b, const Const& c);
bool pi_holds(const Const& a);
bool eval_sentence(const Formula& f);               // CannotVerify when not evaluable
std::optional<bool> try_eval(const Formula& f);      // nullopt when not evaluable

// least d in b (lorder) with body[d] true, else the empty set; `quantified` is Ex var in b . body
HFSet mu_witness(const HFSet& b, const Formula& quantified);

// ---- the disjunction/conjunction assignment

enum class Junctor : std::uint8_t { Disj, Conj };
enum class WitnessSpace : std::uint8_t { Finite, Singleton, SymbolicLevel };

struct Branch {
    Const iota;
    Formula f;
};

struct Decomposition {
    Junctor junctor;
    WitnessSpace space;
    std::vector<Branch> branches;  // empty for SymbolicLevel
    Term level;                    // SymbolicLevel: the bound's rank
    bool mu_clause = false;        // branches come from the Sigma_n witness clause
};

Decomposition decompose(const Formula& f);
Formula branch_for(const Formula& f, const Const& iota);  // A_iota for an arbitrary index, when defined

// ---- Mostowski collapse of formulas

// F_{x,kappa} for kappa in R, F^{Sigma_n}_x for the top slot
Term mostowski_term(const Term& t, const Term& x, const Reg& kappa);
bool in_mostowski_domain(const Formula& f, const Term& x, const Reg& kappa);
Formula mostowski_apply(const Formula& f, const Term& x, const Reg& kappa);

// ---- sequents: sorted by text, duplicate-free

using Sequent = std::vector<Formula>;
Sequent make_sequent(std::vector<Formula> fs);
bool seq_contains(const Sequent& s, const Formula& f);
Sequent seq_with(Sequent s, const Formula& f);
Sequent seq_without(const Sequent& s, const Formula& f);
Sequent seq_union(const Sequent& a, const Sequent& b);
bool seq_subset(const Sequent& a, const Sequent& b);
std::string render(const Sequent& s);

}  // namespace ordkit
