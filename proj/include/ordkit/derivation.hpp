#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "ordkit/formula.hpp"

namespace ordkit {

// Operator H_{gamma,n}[Theta], kept as an index, never as an extension.
struct Operator {
    Term gamma;
    std::vector<Const> theta;  // HF sets (inert for ordinal hulls) or ordinal terms
};

Operator make_operator(Term gamma, std::vector<Const> theta = {});
bool operator_le(const Operator& a, const Operator& b, const Const* extra = nullptr);  // a's hull inside b's

enum class RuleTag : std::uint8_t { Or, And, Cut, AxP, AxPI, F1, FN };
std::string to_string(RuleTag t);

struct Rule {
    RuleTag tag = RuleTag::And;
    Formula main;         // Or/And: main formula; Cut: the cut formula C
    Const iota;           // Or: chosen index
    Term lambda;          // AxP: the regular lambda (as an ordinal term)
    Term alpha;           // AxP/AxPI
    Term x;               // F1/FN: collapse point
    Reg slot;             // F1: lambda slot
    Sequent side;         // F1/FN: Lambda
    Sequent gamma0;       // F1/FN: Gamma_0
};

Rule rule_or(Formula main, Const iota);
Rule rule_and(Formula main);
Rule rule_cut(Formula c);
Rule rule_axp(Term lambda, Term alpha);
Rule rule_axpi(Term alpha);
Rule rule_f1(Term x, Reg slot, Sequent side, Sequent gamma0);
Rule rule_fn(Term x, Sequent side, Sequent gamma0);

// the axiom formulas: ex x<lambda ex y<lambda (alpha<x and P(lambda,x,y)) and ex x<I (alpha<x and P_I(x))
Formula p_axiom_formula(const Term& lambda, const Term& alpha);
Formula pi_axiom_formula(const Term& alpha);
bool is_p_axiom_shape(const Formula& f);  // either of the two shapes, any parameters

struct Derivation {
    Operator op;
    Reg kappa;
    Term bound;
    Term cutrank;
    Sequent seq;
    Rule rule;
    std::vector<Derivation> children;
};

enum class CheckStatus : std::uint8_t { Ok, Fail, CannotVerify, Arity };
std::string to_string(CheckStatus s);

struct CheckReport {
    CheckStatus status = CheckStatus::Ok;
    std::string path;  // "root", "root.1.0", ...
    std::string message;
    Term bound;
    Term cutrank;
    Sequent seq;
    bool ok() const { return status == CheckStatus::Ok; }
};

CheckReport check(const Derivation& d);
// throws Error(Check / CannotVerify) with the report text unless check(d) is Ok
void require_ok(const Derivation& d, const std::string& what);

bool term_in_operator(const Term& t, const Operator& op);
bool const_in_operator(const Const& c, const Operator& op);

Derivation weaken_kappa(const Derivation& d, const Reg& lambda);

std::size_t node_count(const Derivation& d);
bool cut_free(const Derivation& d);

nlohmann::json to_json(const Derivation& d);
Derivation from_json(const nlohmann::json& j);  // schema violations raise Error(Syntax) with a path
std::string serialize(const Derivation& d);
Derivation deserialize(const std::string& text);

Const parse_const(const std::string& s);  // "{...}" for HF, otherwise an ordinal term

}  // namespace ordkit
