#include "ordkit/hull.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "ordkit/arith.hpp"
#include "ordkit/errors.hpp"
#include "ordkit/order.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ordkit {

namespace {

std::vector<Term> enumerate(int cap) {
    std::vector<std::vector<Term>> by_size(static_cast<std::size_t>(cap) + 1);
    auto keep = [&](int s, const Term& t) {
        if (t.size() != s) fail(ErrorKind::Domain, "enumeration size mismatch for " + render(t));
        if (is_normal(t)) by_size[s].push_back(t);
    };
    const Term big = big_i();
    for (int s = 1; s <= cap; ++s) {
        if (s == 1) {
            by_size[1] = {zero(), big};
            continue;
        }
        for (const auto& e : by_size[s - 1]) {
            keep(s, pow(e));
            if (e.kind() != Kind::Zero && lt(e, big)) keep(s, aleph(e));
            if (e.kind() == Kind::Psi && e->reg.top()) keep(s, fcn(e));
        }
        for (int sa = 1; sa + 1 < s; ++sa)
            for (const auto& a : by_size[sa])
                for (const auto& b : by_size[s - 1 - sa]) keep(s, phi(a, b));
        // Psi(I, a): 1 + 1 + |a|
        if (s >= 3)
            for (const auto& a : by_size[s - 2]) keep(s, psi(reg_top(), a));
        // Psi(W(p+1), a): 1 + (1 + |p|) + |a|
        for (int sp = 1; sp + 3 <= s; ++sp)
            for (const auto& p : by_size[sp]) {
                if (!lt(p, big)) continue;
                for (const auto& a : by_size[s - 2 - sp]) keep(s, psi(reg_succ(p), a));
            }
        // Fc1(x, k) with x = Psi(k, .): 1 + |x| + reg_size(k)
        for (int sx = 1; sx + 2 < s; ++sx)
            for (const auto& x : by_size[sx])
                if (x.kind() == Kind::Psi && !x->reg.top() && 1 + sx + reg_size(x->reg) == s)
                    keep(s, fc1(x, x->reg));
        // Sum: leading part f (additive principal) followed by the parts of r
        for (int sf = 1; sf + 1 < s; ++sf)
            for (const auto& f : by_size[sf]) {
                if (f.kind() == Kind::Zero || f.kind() == Kind::Sum) continue;
                for (const auto& r : by_size[s - 1 - sf]) {
                    if (r.kind() == Kind::Zero || r.kind() == Kind::Sum) continue;
                    if (lt(f, r)) continue;
                    keep(s, sum({f, r}));
                }
                for (const auto& r : by_size[s - sf]) {
                    if (r.kind() != Kind::Sum || lt(f, r->args[0])) continue;
                    std::vector<Term> ps{f};
                    ps.insert(ps.end(), r->args.begin(), r->args.end());
                    keep(s, sum(std::move(ps)));
                }
            }
    }
    std::vector<Term> out;
    for (const auto& v : by_size) out.insert(out.end(), v.begin(), v.end());
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return lt(a, b); });
    return out;
}

std::mutex cache_mu;

}  // namespace

const std::vector<Term>& normal_terms(int cap) {
    static std::map<int, std::unique_ptr<std::vector<Term>>> cache;
    std::lock_guard<std::mutex> lock(cache_mu);
    auto& slot = cache[cap];
    if (!slot) slot = std::make_unique<std::vector<Term>>(enumerate(cap));
    return *slot;
}

HullOracle::HullOracle(int cap) : cap_(cap), terms_(normal_terms(cap)) {
    n_ = terms_.size();
    for (std::size_t i = 0; i < n_; ++i) index_.emplace(terms_[i], static_cast<int>(i));
    const Term big = big_i();
    const Term lcap = level_cap();

    // -1 no value, -2 value beyond the cap
    auto lookup = [&](const Term& v) {
        auto it = index_.find(v);
        if (it != index_.end()) return it->second;
        return v.size() > cap_ ? -2 : -1;
    };

    pow_.assign(n_, -1);
    aleph_.assign(n_, -1);
    nextreg_.assign(n_, -1);
    fcn_.assign(n_, -1);
    fc1_.assign(n_, -1);
    fc1_req_.assign(n_, -1);
    psi_top_.assign(n_, -1);
    psi_succ_.assign(n_, {});
    inverse_.assign(n_, {});
    below_cap_.assign(n_, 0);
    std::vector<std::uint8_t> below_i(n_, 0);

    for (std::size_t i = 0; i < n_; ++i) {
        const Term& t = terms_[i];
        below_cap_[i] = lt(t, lcap);
        below_i[i] = lt(t, big);
        pow_[i] = lookup(omega_pow(t));
        if (below_i[i]) {
            aleph_[i] = lookup(aleph_of(t));
            nextreg_[i] = lookup(reg_ordinal(next_regular(t)));
        }
        switch (t.kind()) {
            case Kind::Sum:
            case Kind::Pow:
            case Kind::Phi:
            case Kind::Aleph:
                for (const auto& a : t->args) inverse_[i].push_back(index_.at(a));
                break;
            case Kind::Psi:
                if (t->reg.top()) {
                    psi_top_[index_.at(t->args[0])] = static_cast<int>(i);
                    fcn_[i] = lookup(fcn(t));
                } else {
                    int p = index_.at(t->reg.pred);
                    inverse_[i].push_back(p);
                    psi_succ_[p].emplace_back(index_.at(t->args[0]), static_cast<int>(i));
                    fc1_[i] = lookup(fc1(t, t->reg));
                    fc1_req_[i] = p;
                }
                break;
            case Kind::Fc1: inverse_[i] = {index_.at(t->args[0]), index_.at(t->reg.pred)}; break;
            case Kind::FcN: inverse_[i] = {index_.at(t->args[0])}; break;
            default: break;
        }
    }

    add_.assign(n_ * n_, -1);
    veblen_.assign(n_ * n_, -1);
#pragma omp parallel for schedule(dynamic, 4)
    for (long long ii = 0; ii < static_cast<long long>(n_); ++ii) {
        std::size_t i = static_cast<std::size_t>(ii);
        for (std::size_t j = 0; j < n_; ++j) {
            add_[i * n_ + j] = lookup(add(terms_[i], terms_[j]));
            if (below_i[i] && below_i[j]) veblen_[i * n_ + j] = lookup(veblen(terms_[i], terms_[j]));
        }
    }
}

int HullOracle::index_of(const Term& t) const {
    auto it = index_.find(t);
    return it == index_.end() ? -1 : it->second;
}

std::vector<std::uint8_t> HullOracle::seed_below(const Term& beta) const {
    std::vector<std::uint8_t> h(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
        const Term& t = terms_[i];
        if (t.kind() == Kind::Zero || t.kind() == Kind::BigI || lt(t, beta)) h[i] = 1;
    }
    return h;
}

std::vector<std::uint8_t> HullOracle::admissible_alpha(const Term& gamma) const {
    std::vector<std::uint8_t> ok(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) ok[i] = lt(terms_[i], gamma);
    return ok;
}

std::vector<std::uint8_t> HullOracle::iterate(std::vector<std::uint8_t> h, const std::vector<std::uint8_t>& alpha_ok,
                                              int depth, bool parallel, bool* saturated, std::size_t* dropped,
                                              std::vector<std::size_t>* sizes) const {
    auto count = [](const std::vector<std::uint8_t>& v) {
        return static_cast<std::size_t>(std::count(v.begin(), v.end(), 1));
    };
    if (sizes) sizes->push_back(count(h));
    bool sat = false;
    std::size_t over = 0;

    // one clause pass over the members of h; marks into `next`, counts beyond-cap values
    auto apply_row = [&](std::size_t i, std::vector<std::uint8_t>& next, std::size_t& beyond) {
        auto mark = [&](int v) {
            if (v >= 0) next[v] = 1;
            else if (v == -2) ++beyond;
        };
        if (below_cap_[i]) mark(pow_[i]);
        mark(aleph_[i]);
        mark(nextreg_[i]);
        mark(fcn_[i]);
        if (fc1_req_[i] >= 0 && h[fc1_req_[i]]) mark(fc1_[i]);
        for (int a : inverse_[i]) mark(a);
        if (alpha_ok[i]) mark(psi_top_[i]);
        for (const auto& [a, v] : psi_succ_[i])
            if (h[a] && alpha_ok[a]) mark(v);
        for (std::size_t j = 0; j < n_; ++j) {
            if (!h[j]) continue;
            mark(add_[i * n_ + j]);
            mark(veblen_[i * n_ + j]);
        }
    };

    for (int d = 0; d < depth; ++d) {
        std::vector<std::uint8_t> next = h;
        std::size_t beyond = 0;
        if (parallel) {
#pragma omp parallel
            {
                std::vector<std::uint8_t> local(n_, 0);
                std::size_t local_beyond = 0;
#pragma omp for schedule(dynamic, 8) nowait
                for (long long ii = 0; ii < static_cast<long long>(n_); ++ii)
                    if (h[static_cast<std::size_t>(ii)]) apply_row(static_cast<std::size_t>(ii), local, local_beyond);
#pragma omp critical
                {
                    for (std::size_t k = 0; k < n_; ++k) next[k] |= local[k];
                    beyond += local_beyond;
                }
            }
        } else {
            for (std::size_t i = 0; i < n_; ++i)
                if (h[i]) apply_row(i, next, beyond);
        }
        over = beyond;
        if (next == h) {
            sat = true;
            break;
        }
        h = std::move(next);
        if (sizes) sizes->push_back(count(h));
    }
    if (saturated) *saturated = sat;
    if (dropped) *dropped = over;
    return h;
}

std::vector<std::uint8_t> HullOracle::saturate(int gamma_idx, int beta_idx, int depth, bool parallel, bool* saturated,
                                               std::size_t* dropped) const {
    return iterate(seed_below(terms_.at(beta_idx)), admissible_alpha(terms_.at(gamma_idx)), depth, parallel,
                   saturated, dropped, nullptr);
}

StageReport HullOracle::run(const Term& gamma, const Term& beta, int depth, bool parallel) const {
    StageReport r;
    auto h = iterate(seed_below(beta), admissible_alpha(gamma), depth, parallel, &r.saturated, &r.dropped, &r.sizes);
    for (std::size_t i = 0; i < n_; ++i)
        if (h[i]) r.terms.push_back(terms_[i]);
    return r;
}

const HullOracle& oracle_for(int cap) {
    static std::map<int, std::unique_ptr<HullOracle>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[cap];
    if (!slot) slot = std::make_unique<HullOracle>(cap);
    return *slot;
}

StageReport hull_stages(const Term& gamma, const Term& beta, int size_cap, int depth) {
    return oracle_for(size_cap).run(gamma, beta, depth, false);
}

StageReport hull_stages_parallel(const Term& gamma, const Term& beta, int size_cap, int depth) {
    return oracle_for(size_cap).run(gamma, beta, depth, true);
}

}  // namespace ordkit
