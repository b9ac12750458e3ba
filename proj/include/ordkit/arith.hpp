#pragma once

#include "ordkit/term.hpp"

namespace ordkit {

// All operations take and return normal terms.
Term add(const Term& s, const Term& t);
Term succ(const Term& t);  // t+1
Term omega_pow(const Term& t);
Term omega_times(const Term& t);
Term veblen(const Term& a, const Term& b);
Term omega_tower(unsigned m, const Term& t);
Reg next_regular(const Term& t);

// normal notation for omega_idx: omega itself for idx=0, the fixed point for Psi(I,.)
Term aleph_of(const Term& idx);

// I*k as a term (Sum of k copies of I)
Term i_times(unsigned k);

// epsilon numbers among normal terms: Phi or strongly critical
bool is_epsilon(const Term& t);

// greatest strongly critical component of t at the additive/Veblen level, or empty Term
Term lead_sc(const Term& t);

}  // namespace ordkit
