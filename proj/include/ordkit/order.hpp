#pragma once

#include <string>
#include <vector>

#include "ordkit/term.hpp"

namespace ordkit {

enum class Ordering { Less, Equal, Greater };
std::string to_string(Ordering o);  // LESS / EQUAL / GREATER

// Ordinal comparison. Inputs are normalized first; inputs without a normal
// notation raise NotNormal. Mu terms compare Equal only to themselves.
Ordering cmp(const Term& s, const Term& t);

// Same, but assumes both inputs are already normal (no checks).
Ordering cmp_normal(const Term& s, const Term& t);

inline bool lt(const Term& s, const Term& t) { return cmp_normal(s, t) == Ordering::Less; }
inline bool le(const Term& s, const Term& t) { return cmp_normal(s, t) != Ordering::Greater; }

bool is_normal(const Term& t);
bool is_normal(const Reg& r);
Term normalize(const Term& t);

// omega_{p+1} as an ordinal term (Aleph(p+1)), or I.
Term reg_ordinal(const Reg& r);

// t in H_{gamma,n}(beta), optionally seeded with a parameter set theta.
bool in_hull(const Term& t, const Term& gamma, const Term& beta);
bool in_hull(const Term& t, const Term& gamma, const Term& beta, const std::vector<Term>& theta);
bool reg_in_hull(const Reg& k, const Term& gamma, const Term& beta, const std::vector<Term>& theta = {});

bool psi_admissible(const Reg& k, const Term& alpha);

struct RankInterval {
    Term lo;
    Term hi;  // exclusive
};
RankInterval rank_interval(const Term& t);

// omega_n(I+1) at the configured level: omega^x enters a hull only for x below it.
Term level_cap();

// downward closure of a parameter set under the inverse hull functions
std::vector<Term> theta_closure(const std::vector<Term>& theta);

}  // namespace ordkit
