#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "ordkit/term.hpp"

namespace ordkit {

// All normal terms (Mu excluded) of size <= cap, sorted by ordinal order.
// Cached per cap; safe to call from several threads.
const std::vector<Term>& normal_terms(int cap);

struct StageReport {
    std::vector<Term> terms;          // final stage, ordinal order
    std::vector<std::size_t> sizes;   // |H^0|, |H^1|, ...
    bool saturated = false;           // two consecutive stages equal
    std::size_t dropped = 0;          // generated values beyond the size cap (not membership failures)
};

// Brute-force stage iteration of the hull clauses over the normal terms of size <= cap.
// Function tables are computed once per universe; each run is a literal iteration of
// H^{m+1} = H^m plus every clause applied to H^m.
class HullOracle {
public:
    explicit HullOracle(int cap);

    std::size_t size() const { return terms_.size(); }
    const Term& term(std::size_t i) const { return terms_[i]; }
    int index_of(const Term& t) const;  // -1 if outside the universe

    StageReport run(const Term& gamma, const Term& beta, int depth, bool parallel = false) const;

    // membership vector of the saturated hull, indexed like term(i); cheaper than run() for sweeps
    std::vector<std::uint8_t> saturate(int gamma_idx, int beta_idx, int depth, bool parallel = false,
                                       bool* saturated = nullptr, std::size_t* dropped = nullptr) const;

private:
    std::vector<std::uint8_t> seed_below(const Term& beta) const;
    std::vector<std::uint8_t> admissible_alpha(const Term& gamma) const;
    std::vector<std::uint8_t> iterate(std::vector<std::uint8_t> h, const std::vector<std::uint8_t>& alpha_ok,
                                      int depth, bool parallel, bool* saturated, std::size_t* dropped,
                                      std::vector<std::size_t>* sizes) const;

    int cap_;
    std::vector<Term> terms_;
    std::unordered_map<Term, int, TermHash> index_;
    std::size_t n_ = 0;
    // -1: no value; -2: value exists but is beyond the cap
    std::vector<int> add_, veblen_;        // n*n
    std::vector<int> pow_, aleph_, nextreg_, fcn_;
    std::vector<int> fc1_, fc1_req_;       // Fc1 value and the index of its kappa predecessor
    std::vector<std::vector<int>> inverse_;
    std::vector<int> psi_top_;             // alpha -> Psi(I, alpha)
    std::vector<std::vector<std::pair<int, int>>> psi_succ_;  // pred index -> (alpha, Psi(W(pred+1), alpha))
    std::vector<std::uint8_t> below_cap_;  // x < omega_n(I+1)
};

// Convenience wrappers over a cached oracle for the given cap.
StageReport hull_stages(const Term& gamma, const Term& beta, int size_cap, int depth);
StageReport hull_stages_parallel(const Term& gamma, const Term& beta, int size_cap, int depth);
const HullOracle& oracle_for(int cap);

}  // namespace ordkit
