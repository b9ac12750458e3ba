#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include "json.hpp"
#include "ordkit/derivation.hpp"

namespace ordkit {

// Seeded generators. Draws go through rng() % n so output is identical on every standard library.
class CorpusRng {
public:
    explicit CorpusRng(std::uint64_t seed) : g_(seed) {}
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(g_() % n); }
    bool coin(std::size_t one_in) { return below(one_in) == 0; }

private:
    std::mt19937_64 g_;
};

Term random_term(CorpusRng& rng, int size_cap);            // uniform over normal_terms(size_cap)
Formula random_sentence(CorpusRng& rng, int depth);         // closed, depth <= depth, evaluable bounds

struct Corpus {
    std::uint64_t seed = 0;
    std::size_t size = 0;
    std::vector<Term> terms;
    std::vector<Formula> formulas;
    std::vector<Derivation> derivations;  // tautologies over the first formulas
};

Corpus gen_corpus(std::uint64_t seed, std::size_t size);
nlohmann::json manifest(const Corpus& c);
// manifest.json plus one derivation file per entry; returns the files written
std::vector<std::filesystem::path> write_corpus(const Corpus& c, const std::filesystem::path& dir);

}  // namespace ordkit
