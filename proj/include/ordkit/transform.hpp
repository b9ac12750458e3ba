#pragma once

#include <string>
#include <vector>

#include "ordkit/derivation.hpp"

namespace ordkit {

// Bounds before/after one transformer stage, as term text in reports.
struct PipelineStage {
    std::string stage;
    Term bound_before, bound_after;
    Term cut_before, cut_after;
    Term gamma_after;
    std::string note;
};

// Gamma, not-A, A with bound 2rk(A) = add(rk A, rk A) and cutrank 0.
Derivation build_tautology(const Sequent& gamma, const Formula& a, const Operator& op = make_operator(zero()));
// {A} (plus optional side formulas) for a true, evaluable A in Sigma_n or Pi_n; bound 2rk(A).
Derivation build_completeness(const Formula& a, const Sequent& side = {}, const Operator& op = make_operator(zero()));

Derivation eliminate_false(const Derivation& d, const Formula& a);
Derivation invert(const Derivation& d, const Formula& target);

// dleft derives Delta,not-C and dright derives C,Gamma; result Delta,Gamma with bound a+b
Derivation reduce_cut(const Derivation& dleft, const Derivation& dright, const Formula& c, const Term& cutrank);

struct AxiomWitness {
    Term iota;  // psi(lambda; beta)
    Term nu;    // the collapse of I at iota (lambda case only)
};
AxiomWitness axiom_witness(const Formula& c, const Term& beta);
// drops not-C (C a P-axiom formula) and advances the operator index to beta+1
Derivation reduce_axiom_P(const Derivation& d, const Formula& c, const Term& beta);

enum class PredPart : int { One = 1, Two = 2, Three = 3, Four = 4 };
// part One/Four: cutrank c+w^a down to c, bound phi(a, b); Two: lambda+2 -> lambda+1; Three: I+1 -> I (bound w^b)
Derivation pred_cut_elim(const Derivation& d, const Term& a, const Term& c, PredPart part = PredPart::One);
// empty when [c, h) avoids the excluded points (successor points lambda+1, lambda+2 and I; or R+ for part Four)
std::string window_violation(const Term& c, const Term& h, bool successor_points);

enum class BoundSide { Exists, Dual };
Derivation boundedness(const Derivation& d, const Formula& c, const Term& b, BoundSide side);

// d at H_gamma[Theta], kappa >= max(sigma, lambda); result H_{a^+1}[Theta], kappa = lambda, bound = cutrank = psi(lambda; a^)
Derivation collapse(const Derivation& d, const Reg& lambda, const Term& sigma, const std::vector<Const>& theta = {});
Term collapse_index(const Term& gamma, const Term& sigma, const Term& a);  // gamma + w^(sigma+a)

struct PipelineResult {
    Derivation d;
    Term witness_bound;  // phi(beta, beta)
    Term b;              // w_m(I*3+k)
    Term beta;           // psi(W(0+1); b)
    std::vector<PipelineStage> stages;
    bool truth_checked = false;
    bool truth = false;
};
PipelineResult pipeline_complete_ce(const Derivation& d, unsigned m, unsigned k);

// the small replica input: an evaluable exists-sentence over L(W(0+1)) proved with one cut of rank I,
// at bound I*2+k and cutrank I+m
Derivation build_replica_input(unsigned m, unsigned k);

// ordinal helpers used by the transformers
Term tmax(const Term& a, const Term& b);
Term sub_left(const Term& c, const Term& r);  // delta with c + delta = r, for c <= r

}  // namespace ordkit
