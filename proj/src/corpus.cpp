#include "ordkit/corpus.hpp"

#include <cstdio>
#include <fstream>

#include "ordkit/config.hpp"
#include "ordkit/errors.hpp"
#include "ordkit/hull.hpp"
#include "ordkit/transform.hpp"

namespace ordkit {

Term random_term(CorpusRng& rng, int size_cap) {
    const auto& all = normal_terms(size_cap);
    return all[rng.below(all.size())];
}

namespace {

struct SentenceGen {
    CorpusRng& rng;
    std::vector<std::string> vars;
    int next_var = 0;

    Const arg() {
        if (!vars.empty() && !rng.coin(3)) return Const::variable(vars[rng.below(vars.size())]);
        const auto& small = hf_universe(3);
        return Const::of(small[rng.below(small.size())]);
    }

    Bound bound(bool outer) {
        if (outer && rng.coin(8)) return Bound::of_level(parse_term("W(0+1)"));
        if (!vars.empty() && rng.coin(3)) return Bound::of(Const::variable(vars[rng.below(vars.size())]));
        if (rng.coin(4)) return Bound::of_level(finite(1 + static_cast<unsigned>(rng.below(2))));
        const auto& small = hf_universe(3);
        return Bound::hf(small[rng.below(small.size())]);
    }

    Formula gen(int depth, bool outer) {
        std::size_t pick = depth <= 1 ? rng.below(2) : rng.below(6);
        switch (pick) {
            case 0: return mem(arg(), arg());
            case 1: return not_mem(arg(), arg());
            case 2: return f_and(gen(depth - 1, false), gen(depth - 1, false));
            case 3: return f_or(gen(depth - 1, false), gen(depth - 1, false));
            default: {
                Bound b = bound(outer);
                std::string v = "x" + std::to_string(next_var++);
                vars.push_back(v);
                Formula body = gen(depth - 1, false);
                vars.pop_back();
                return pick == 4 ? f_ex(v, b, body) : f_all(v, b, body);
            }
        }
    }
};

}  // namespace

Formula random_sentence(CorpusRng& rng, int depth) {
    SentenceGen g{rng, {}, 0};
    return g.gen(depth, true);
}

Corpus gen_corpus(std::uint64_t seed, std::size_t size) {
    Corpus c;
    c.seed = seed;
    c.size = size;
    CorpusRng rng(seed);
    int cap = std::min(config().size_cap, 7);
    for (std::size_t i = 0; i < size; ++i) c.terms.push_back(random_term(rng, cap));
    // only sentences whose truth is decidable here; an unwitnessed level quantifier has a symbolic witness
    while (c.formulas.size() < size) {
        Formula f = random_sentence(rng, 1 + static_cast<int>(rng.below(4)));
        if (try_eval(f)) c.formulas.push_back(f);
    }
    for (const auto& f : c.formulas) c.derivations.push_back(build_tautology({}, f));
    return c;
}

nlohmann::json manifest(const Corpus& c) {
    nlohmann::json j;
    j["seed"] = c.seed;
    j["size"] = c.size;
    j["terms"] = nlohmann::json::array();
    for (const auto& t : c.terms) j["terms"].push_back(render(t));
    j["formulas"] = nlohmann::json::array();
    for (const auto& f : c.formulas) j["formulas"].push_back(f.text());
    j["derivations"] = nlohmann::json::array();
    for (std::size_t i = 0; i < c.derivations.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "taut_%04zu.json", i);
        j["derivations"].push_back(name);
    }
    return j;
}

std::vector<std::filesystem::path> write_corpus(const Corpus& c, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> out;
    nlohmann::json m = manifest(c);
    auto put = [&](const std::filesystem::path& p, const std::string& text) {
        std::ofstream f(p, std::ios::binary);
        if (!f) fail(ErrorKind::Domain, "cannot write " + p.string());
        f << text << '\n';
        out.push_back(p);
    };
    put(dir / "manifest.json", m.dump(1));
    for (std::size_t i = 0; i < c.derivations.size(); ++i)
        put(dir / m["derivations"][i].get<std::string>(), serialize(c.derivations[i]));
    return out;
}

}  // namespace ordkit
