#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace ordkit {

enum class Kind : std::uint8_t { Zero, BigI, Sum, Pow, Aleph, Phi, Psi, Fc1, FcN, Mu };

struct Node;

// Immutable, shared ordinal term. Equality is structural.
class Term {
public:
    Term() = default;
    explicit Term(std::shared_ptr<const Node> p) : p_(std::move(p)) {}

    const Node& operator*() const { return *p_; }
    const Node* operator->() const { return p_.get(); }
    const Node* get() const { return p_.get(); }
    explicit operator bool() const { return static_cast<bool>(p_); }

    Kind kind() const;
    std::size_t hash() const;
    int size() const;

    friend bool operator==(const Term& a, const Term& b);
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

private:
    std::shared_ptr<const Node> p_;
};

// A regular cardinal slot: omega_{pred+1} (pred set) or I (pred empty).
struct Reg {
    Term pred;
    bool top() const { return !pred; }
    friend bool operator==(const Reg& a, const Reg& b);
    friend bool operator!=(const Reg& a, const Reg& b) { return !(a == b); }
};

struct Node {
    Kind kind;
    std::vector<Term> args;  // Sum: parts; Pow: {e}; Aleph: {idx}; Phi: {a,b}; Psi: {alpha}; Fc1/FcN: {x}; Mu: {bound}
    Reg reg;                 // Psi, Fc1
    std::string body;        // Mu: rendered body "x . formula"
    std::size_t hash = 0;
    int size = 1;
};

// constructors (no normalization)
Term zero();
Term big_i();
Term sum(std::vector<Term> parts);  // requires >= 2 parts
Term pow(Term e);
Term aleph(Term idx);
Term phi(Term a, Term b);
Term psi(Reg k, Term alpha);
Term fc1(Term x, Reg k);
Term fcn(Term x);
Term mu(Term bound, std::string body);

Reg reg_succ(Term pred);
Reg reg_top();

Term one();                 // w^(0)
Term omega();               // w^(w^(0))
Term finite(unsigned k);    // 0, 1, 1+1, ...

// accessors
std::vector<Term> parts_of(const Term& t);  // Sum parts, {t} otherwise, {} for Zero
const Term& arg(const Term& t, std::size_t i = 0);
const Reg& reg_of(const Term& t);

bool is_sc_kind(const Term& t);  // BigI, Aleph, Psi, Fc1, FcN
bool is_finite(const Term& t, unsigned* value = nullptr);

Term parse_term(std::string_view src);
// parses the longest term starting at pos and advances pos past it
Term parse_term_prefix(std::string_view src, std::size_t& pos);
Reg parse_reg(std::string_view src);
std::string render(const Term& t);
std::string render(const Reg& r);
std::string debug_string(const Term& t);  // constructor form, e.g. Psi(AlephSucc(Zero),BigI)

int reg_size(const Reg& r);

// reflexive-transitive structural closure, including kappa slots of Psi/Fc1 (as predecessor terms)
std::vector<Term> subterms(const Term& t);

struct TermHash {
    std::size_t operator()(const Term& t) const { return t.hash(); }
};

// total structural order, for deterministic containers (not the ordinal order)
bool structural_less(const Term& a, const Term& b);

}  // namespace ordkit
