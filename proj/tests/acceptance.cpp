// Acceptance run: one line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ordkit/arith.hpp"
#include "ordkit/config.hpp"
#include "ordkit/corpus.hpp"
#include "ordkit/errors.hpp"
#include "ordkit/hull.hpp"
#include "ordkit/order.hpp"
#include "ordkit/transform.hpp"

using namespace ordkit;

namespace {

constexpr std::uint64_t kSeed = 20240611;
constexpr std::size_t kCorpus = 200;

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... xs) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, xs...);
    return buf;
}

const Corpus& corpus() {
    static const Corpus c = gen_corpus(kSeed, kCorpus);
    return c;
}

std::vector<Term> corpus_terms() {
    std::vector<Term> v = corpus().terms;
    std::sort(v.begin(), v.end(), structural_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

Ordering flip(Ordering o) {
    return o == Ordering::Less ? Ordering::Greater : o == Ordering::Greater ? Ordering::Less : o;
}

bool root_true(const Derivation& d) {
    for (const auto& f : d.seq) {
        auto v = try_eval(f);
        if (v && *v) return true;
    }
    return false;
}

// 1: trichotomy, irreflexivity, transitivity; the size-7 universe is small enough to take whole
Outcome order_laws() {
    auto t0 = Clock::now();
    const auto& all = normal_terms(7);
    // reversed, so cmp never sees the pairs in the order the universe was sorted in
    const std::vector<Term> s(all.rbegin(), all.rend());

    const std::size_t n = s.size();
    std::vector<Ordering> m(n * n);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i * n + j] = cmp(s[i], s[j]);
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i * n + i] != Ordering::Equal) ++bad;
        for (std::size_t j = 0; j < n; ++j) {
            if (m[j * n + i] != flip(m[i * n + j])) ++bad;
            if (i != j && m[i * n + j] == Ordering::Equal) ++bad;  // distinct normal terms
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (m[i * n + j] != Ordering::Less) continue;
            for (std::size_t k = 0; k < n; ++k)
                if (m[j * n + k] == Ordering::Less && m[i * n + k] != Ordering::Less) ++bad;
        }
    // the sorted universe must also be a strict chain
    for (std::size_t i = 1; i < all.size(); ++i)
        if (cmp(all[i - 1], all[i]) != Ordering::Less) ++bad;
    double secs = seconds_since(t0);
    return {bad == 0 && n * n >= 10000 && secs < 120,
            fmt("%zu terms of size<=7, %zu pairs, %zu triples, %zu violations, %.1fs", all.size(), n * n, n * n * n,
                bad, secs)};
}

// 2: in_hull against the saturated stage oracle on every triple of size <= 5
Outcome oracle_equivalence() {
    auto t0 = Clock::now();
    const HullOracle& o = oracle_for(5);
    const std::size_t n = o.size();
    std::size_t checked = 0, disagree = 0, unsat = 0;
    std::string first;
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t b = 0; b < n; ++b) {
            bool sat = false;
            auto h = o.saturate(static_cast<int>(g), static_cast<int>(b), 64, false, &sat);
            if (!sat) ++unsat;
            for (std::size_t t = 0; t < n; ++t) {
                ++checked;
                if (in_hull(o.term(t), o.term(g), o.term(b)) != static_cast<bool>(h[t])) {
                    if (disagree++ == 0)
                        first = " first: t=" + render(o.term(t)) + " g=" + render(o.term(g)) + " b=" + render(o.term(b));
                }
            }
        }
    double secs = seconds_since(t0);
    return {disagree == 0 && unsat == 0 && secs < 300,
            fmt("%zu terms, %zu triples, %zu disagreements, %zu unsaturated, %.1fs", n, checked, disagree, unsat, secs) +
                first};
}

// 3: omega_a < psi(W(a+1); alpha) < omega_{a+1}
Outcome psi_interval() {
    auto ts = corpus_terms();
    std::size_t pairs = 0, bad = 0;
    for (const auto& a : ts) {
        Reg k = reg_succ(a);
        if (!is_normal(k)) continue;
        for (const auto& al : ts) {
            if (!psi_admissible(k, al)) continue;
            ++pairs;
            Term p = psi(k, al);
            if (cmp(aleph(a), p) != Ordering::Less || cmp(p, aleph(succ(a))) != Ordering::Less) ++bad;
        }
    }
    return {bad == 0 && pairs > 0, fmt("%zu admissible pairs, %zu violations", pairs, bad)};
}

// 4: omega_{psi(I;alpha)} = psi(I;alpha)
Outcome fixed_point() {
    std::size_t n = 0, bad = 0;
    for (const auto& al : corpus_terms()) {
        if (!psi_admissible(reg_top(), al)) continue;
        ++n;
        Term p = psi(reg_top(), al);
        if (normalize(aleph(p)) != p) ++bad;
    }
    return {bad == 0 && n > 0, fmt("%zu indices, %zu violations", n, bad)};
}

// 5: a < b and a in H_b(psi(k;b)) imply psi(k;a) < psi(k;b)
Outcome monotonicity() {
    auto t0 = Clock::now();
    auto ts = corpus_terms();
    std::size_t premises = 0, bad = 0;
    for (const Reg& k : {reg_succ(zero()), reg_succ(one()), reg_top()}) {
        std::vector<Term> adm;
        for (const auto& t : ts)
            if (psi_admissible(k, t)) adm.push_back(t);
        for (const auto& a : adm)
            for (const auto& b : adm) {
                if (cmp(a, b) != Ordering::Less || !in_hull(a, b, psi(k, b))) continue;
                ++premises;
                if (cmp(psi(k, a), psi(k, b)) != Ordering::Less) ++bad;
            }
    }
    return {bad == 0 && premises > 0, fmt("%zu premise pairs over 3 slots, %zu violations, %.1fs", premises, bad,
                                           seconds_since(t0))};
}

// 6: rank laws on random sentences of depth <= 4
Outcome rank_laws() {
    CorpusRng rng(kSeed + 6);
    const Term top = add(big_i(), omega());
    const Term lambdas[] = {parse_term("W(0+1)"), big_i()};
    std::size_t formulas = 0, branches = 0, bad = 0;
    std::string first;
    auto note = [&](const std::string& why, const Formula& f) {
        if (bad++ == 0) first = " first: " + why + " " + f.text();
    };
    for (int i = 0; i < 600; ++i) {
        Formula f = random_sentence(rng, 1 + static_cast<int>(rng.below(4)));
        ++formulas;
        Term r = rk(f);
        if (!lt(r, top)) note("rk >= I+w", f);
        for (const auto& l : lambdas)
            if (lt(r, l) && !in_sigma_hat(f, l)) note("not in Sigma-hat", f);
        Decomposition d = decompose(f);
        for (const auto& b : d.branches) {
            ++branches;
            if (!lt(rk(b.f), r)) note("branch rank", f);
        }
    }
    return {bad == 0, fmt("%zu formulas, %zu branches, %zu violations", formulas, branches, bad) + first};
}

// 7: tautology bound 2rk(A), cutrank 0, checks
Outcome tautology_contract() {
    std::size_t n = 0, bad = 0;
    std::string first;
    for (const auto& f : corpus().formulas) {
        ++n;
        Derivation d = build_tautology({}, f);
        CheckReport rep = check(d);
        if (!rep.ok() || d.bound != add(rk(f), rk(f)) || d.cutrank != zero()) {
            if (bad++ == 0) first = " first: " + f.text() + " " + rep.message;
        }
    }
    return {bad == 0 && n > 0, fmt("%zu corpus sentences, %zu failures", n, bad) + first};
}

// 8: reduce_cut on generated pairs
Outcome reduction_contract() {
    const auto& fs = corpus().formulas;
    std::vector<Formula> truths;
    for (const auto& f : fs)
        if (*try_eval(f)) truths.push_back(f);
    std::size_t pairs = 0, bad = 0;
    std::string first;
    auto fail_with = [&](const std::string& why) {
        if (bad++ == 0) first = " first: " + why;
    };
    for (std::size_t i = 0; i < fs.size(); ++i) {
        Formula c = fs[i];
        if (decompose(c).junctor == Junctor::Conj) c = neg(c);
        const bool c_true = *try_eval(c);
        const Formula& side = truths[i % truths.size()];
        Derivation dl, dr;
        if (i % 2 == 0 && c_true) {
            dl = build_tautology({}, c);
            dr = build_completeness(c);
        } else {
            dl = build_tautology(make_sequent({side}), c);
            dr = build_tautology(make_sequent({side}), neg(c));
        }
        ++pairs;
        try {
            Derivation out = reduce_cut(dl, dr, c, rk(c));
            CheckReport rep = check(out);
            if (!rep.ok()) fail_with(c.text() + ": " + rep.message);
            else if (out.bound != add(dl.bound, dr.bound)) fail_with(c.text() + ": bound");
            else if (root_true(dl) && root_true(dr) && !root_true(out)) fail_with(c.text() + ": truth");
        } catch (const Error& e) {
            fail_with(c.text() + ": " + e.what());
        }
    }
    return {bad == 0 && pairs >= 50, fmt("%zu cut pairs, %zu failures", pairs, bad) + first};
}

Derivation cut_on(const Formula& g, const Formula& c, const Term& cutrank) {
    Derivation l = build_completeness(g, make_sequent({neg(c)}));
    Derivation r = build_completeness(c, make_sequent({g}));
    Derivation d;
    d.op = make_operator(zero());
    d.kappa = reg_top();
    d.bound = succ(tmax(l.bound, r.bound));
    d.cutrank = cutrank;
    d.seq = make_sequent({g});
    d.rule = rule_cut(c);
    d.children = {l, r};
    return d;
}

// 9: predicative elimination bounds and window rejection
Outcome pred_contract() {
    const Formula g = parse_formula("ex x in L(W(0+1)) . mem(x,{{}})");
    std::size_t runs = 0, bad = 0, rejected = 0, windows = 0;
    std::string first;
    auto fail_with = [&](const std::string& why) {
        if (bad++ == 0) first = " first: " + why;
    };
    auto run = [&](const Derivation& d, const Term& a, const Term& c, PredPart part, const Term& expect,
                   const std::string& tag) {
        ++runs;
        try {
            Derivation out = pred_cut_elim(d, a, c, part);
            CheckReport rep = check(out);
            if (!rep.ok()) fail_with(tag + ": " + rep.message);
            else if (out.bound != expect) fail_with(tag + ": bound " + render(out.bound));
            else if (out.cutrank != c) fail_with(tag + ": cutrank");
        } catch (const Error& e) {
            fail_with(tag + ": " + e.what());
        }
    };
    auto reject = [&](const Derivation& d, const Term& a, const Term& c, PredPart part, const std::string& tag) {
        ++windows;
        try {
            pred_cut_elim(d, a, c, part);
            fail_with(tag + ": accepted");
        } catch (const Error&) {
            ++rejected;
        }
    };

    // part 1 over true corpus cut formulas of finite rank: a = 0 (w^b) and a = 1 (phi(1,b))
    for (const auto& f : corpus().formulas) {
        Formula c = *try_eval(f) ? f : neg(f);
        unsigned r = 0;
        if (!is_finite(rk(c), &r)) continue;
        Derivation d0;
        try {
            d0 = cut_on(g, c, succ(rk(c)));
        } catch (const Error&) {
            continue;
        }
        run(d0, zero(), rk(c), PredPart::One, omega_pow(d0.bound), "part1 a=0 " + c.text());
        Derivation d1 = d0;
        d1.cutrank = add(rk(c), omega());
        run(d1, one(), rk(c), PredPart::One, veblen(one(), d1.bound), "part1 a=1 " + c.text());
    }
    // part 2: lambda+2 -> lambda+1
    const Term l1 = parse_term("W(0+1)+w^(0)");
    Formula c2 = parse_formula("or(ex y in L(W(0+1)) . mem(y,{{}}), mem({},{}))");
    Derivation d2 = cut_on(g, c2, succ(l1));
    run(d2, zero(), l1, PredPart::Two, omega_pow(d2.bound), "part2");
    // part 3: I+1 -> I
    Formula c3 = parse_formula("ex x in L(I) . mem(x,{{}})");
    Derivation d3 = cut_on(g, c3, succ(big_i()));
    run(d3, zero(), big_i(), PredPart::Three, omega_pow(d3.bound), "part3");
    // part 4 may cross lambda+1 but not a regular
    run(d2, zero(), l1, PredPart::Four, veblen(zero(), d2.bound), "part4");

    // rejected windows
    reject(d2, zero(), l1, PredPart::One, "part1 across lambda+1");
    Derivation d3w = d3;
    d3w.cutrank = succ(big_i());
    reject(d3w, zero(), big_i(), PredPart::One, "part1 across I");
    Formula cw = parse_formula("ex x in L(W(0+1)) . mem(x,{{}})");
    Derivation d4 = cut_on(g, cw, succ(rk(cw)));
    reject(d4, zero(), rk(cw), PredPart::Four, "part4 across W(0+1)");
    reject(d2, zero(), parse_term("W(0+1)+w^(0)+w^(0)"), PredPart::Two, "part2 off lambda+1");
    reject(d2, zero(), l1, PredPart::Three, "part3 off I");
    return {bad == 0 && rejected == windows && runs > 0,
            fmt("%zu eliminations, %zu/%zu windows rejected, %zu failures", runs, rejected, windows, bad) + first};
}

// 10: boundedness keeps (bound, cutrank) and re-checks; inputs satisfy rk(C) = lambda, a <= b < lambda
Outcome boundedness_contract() {
    std::size_t runs = 0, bad = 0, rejected = 0;
    std::string first;
    auto fail_with = [&](const std::string& why) {
        if (bad++ == 0) first = " first: " + why;
    };
    auto same = [](const Derivation& x, const Derivation& y) {
        return check(y).ok() && y.bound == x.bound && y.cutrank == x.cutrank;
    };
    const char* es[] = {"ex x in L(W(0+1)) . mem(x,{{}})", "ex x in L(I) . mem(x,{{}})",
                        "ex x in L(W(0+1)) . and(mem({},x), mem(x,{{{}}}))", "ex x in L(I) . or(mem(x,{}), mem(x,{{}}))"};
    for (const char* s : es) {
        Formula c = parse_formula(s);
        const Term lam = c->bound.c.ord;
        Derivation d = build_completeness(c);
        // the least finite bound the tree supports
        for (unsigned k = 0; k < 16; ++k) {
            Derivation t = d;
            t.bound = finite(k);
            if (check(t).ok()) {
                d = t;
                break;
            }
        }
        for (const Term& b : {d.bound, succ(d.bound), omega(), parse_term("W(0+1)"), add(parse_term("W(0+1)"), omega())}) {
            if (!lt(b, lam) || !le(d.bound, b)) continue;
            Derivation db = d;
            db.bound = b;
            ++runs;
            try {
                if (!same(db, boundedness(db, c, b, BoundSide::Exists))) fail_with(std::string(s) + " exists");
            } catch (const Error& e) {
                fail_with(std::string(s) + ": " + e.what());
            }
        }
        Derivation t = build_tautology({}, c);
        for (const Term& b : {finite(3u), omega(), parse_term("W(0+1)")}) {
            if (!lt(b, lam)) continue;
            ++runs;
            try {
                if (!same(t, boundedness(t, c, b, BoundSide::Dual))) fail_with(std::string(s) + " dual");
            } catch (const Error& e) {
                fail_with(std::string(s) + " dual: " + e.what());
            }
        }
        // b = lambda breaks the precondition b < lambda
        try {
            boundedness(t, c, lam, BoundSide::Dual);
            fail_with(std::string(s) + ": b = lambda accepted");
        } catch (const Error&) {
            ++rejected;
        }
    }
    return {bad == 0 && runs > 0, fmt("%zu restrictions, %zu out-of-range rejected, %zu failures", runs, rejected, bad) +
                                      first};
}

// 11: end-to-end replica at m = 2, k = 1
Outcome replica() {
    auto t0 = Clock::now();
    const unsigned m = 2, k = 1;
    try {
        Derivation in = build_replica_input(m, k);
        PipelineResult r = pipeline_complete_ce(in, m, k);
        Term beta = psi(reg_succ(zero()), omega_tower(m, add(i_times(3), finite(k))));
        bool ok = cut_free(r.d) && check(r.d).ok() && r.beta == beta && r.witness_bound == veblen(beta, beta) &&
                  r.truth_checked && r.truth;
        double secs = seconds_since(t0);
        return {ok && secs < 60, fmt("input bound %s, cutrank %s; beta = %s, %zu stages, %.1fs",
                                     render(in.bound).c_str(), render(in.cutrank).c_str(), render(r.beta).c_str(),
                                     r.stages.size(), secs)};
    } catch (const Error& e) {
        return {false, e.what()};
    }
}

}  // namespace

int main() {
    struct Row {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Row> rows = {
        {"order laws", order_laws},
        {"oracle equivalence", oracle_equivalence},
        {"psi interval law", psi_interval},
        {"fixed point", fixed_point},
        {"monotonicity", monotonicity},
        {"rank laws", rank_laws},
        {"tautology contract", tautology_contract},
        {"reduction contract", reduction_contract},
        {"predicative elimination contract", pred_contract},
        {"boundedness contract", boundedness_contract},
        {"end-to-end replica", replica},
    };
    int failed = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        Outcome o;
        try {
            o = rows[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, rows[i].name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(rows.size()) - failed, rows.size());
    return failed == 0 ? 0 : 1;
}
