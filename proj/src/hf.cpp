#include "ordkit/hf.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>

#include "ordkit/config.hpp"
#include "ordkit/errors.hpp"

namespace ordkit {

HFSet::HFSet() {
    static const auto empty_node = std::make_shared<const Node>(Node{{}, 0, 0x9e3779b9u});
    node_ = empty_node;
}

bool operator==(const HFSet& a, const HFSet& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.rank() != b.rank() || a.elems().size() != b.elems().size()) return false;
    return a.elems() == b.elems();
}

HFSet HFSet::make(std::vector<HFSet> elems) {
    std::sort(elems.begin(), elems.end(), lorder_less);
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (elems.empty()) return HFSet();  // one representation (and hash) for the empty set
    Node n;
    n.rank = 0;
    std::size_t h = 0x51ed27u + elems.size();
    for (const auto& e : elems) {
        n.rank = std::max(n.rank, e.rank() + 1);
        h = h * 1000003u ^ (e.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
    }
    if (n.rank > config().hf_cap)
        fail(ErrorKind::Cap, "HF set rank " + std::to_string(n.rank) + " exceeds hf_cap " +
                                 std::to_string(config().hf_cap));
    n.hash = h;
    n.elems = std::move(elems);
    return HFSet(std::make_shared<const Node>(std::move(n)));
}

Ordering lorder(const HFSet& a, const HFSet& b) {
    if (a.rank() != b.rank()) return a.rank() < b.rank() ? Ordering::Less : Ordering::Greater;
    if (a == b) return Ordering::Equal;
    const auto& x = a.elems();
    const auto& y = b.elems();
    std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
        Ordering o = lorder(x[i], y[i]);
        if (o != Ordering::Equal) return o;
    }
    return x.size() < y.size() ? Ordering::Less : Ordering::Greater;
}

int vn_rank(const HFSet& a) { return a.rank(); }

bool hf_member(const HFSet& a, const HFSet& b) {
    if (a.rank() >= b.rank()) return false;
    return std::binary_search(b.elems().begin(), b.elems().end(), a, lorder_less);
}

HFSet hf_ordinal(unsigned k) {
    std::vector<HFSet> xs;
    for (unsigned i = 0; i < k; ++i) xs.push_back(HFSet::make(xs));
    return HFSet::make(std::move(xs));
}

bool hf_as_ordinal(const HFSet& a, unsigned* k) {
    // an HF set is an ordinal iff its elements are exactly 0..rank-1
    const auto& xs = a.elems();
    if (static_cast<int>(xs.size()) != a.rank()) return false;
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (xs[i].rank() != static_cast<int>(i) || !hf_as_ordinal(xs[i])) return false;
    if (k) *k = static_cast<unsigned>(xs.size());
    return true;
}

namespace {

class HFParser {
public:
    explicit HFParser(std::string_view s) : s_(s) {}
    HFSet parse() {
        HFSet r = set();
        skip();
        if (i_ != s_.size()) throw ParseError(i_, "trailing input after HF set");
        return r;
    }
    HFSet set() {
        skip();
        if (i_ >= s_.size() || s_[i_] != '{') throw ParseError(i_, "expected '{'");
        ++i_;
        std::vector<HFSet> xs;
        skip();
        if (i_ < s_.size() && s_[i_] == '}') {
            ++i_;
            return HFSet::make(std::move(xs));
        }
        for (;;) {
            xs.push_back(set());
            skip();
            if (i_ >= s_.size()) throw ParseError(i_, "unterminated HF set");
            if (s_[i_] == ',') {
                ++i_;
                continue;
            }
            if (s_[i_] == '}') {
                ++i_;
                break;
            }
            throw ParseError(i_, "expected ',' or '}'");
        }
        return HFSet::make(std::move(xs));
    }
    std::size_t pos() const { return i_; }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    std::string_view s_;
    std::size_t i_ = 0;
};

}  // namespace

HFSet parse_hf(std::string_view src) { return HFParser(src).parse(); }

std::string render(const HFSet& a) {
    std::string out = "{";
    for (std::size_t i = 0; i < a.elems().size(); ++i) {
        if (i) out += ",";
        out += render(a.elems()[i]);
    }
    return out + "}";
}

const std::vector<HFSet>& hf_universe(int r) {
    if (r < 0 || r > 5) fail(ErrorKind::Cap, "HF universe only enumerated up to rank 5");
    static std::map<int, std::vector<HFSet>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(r);
    if (it != cache.end()) return it->second;
    // V_1 = {0}, V_{k+1} = subsets of V_k
    std::vector<HFSet> out;
    if (r > 0) {
        out = {HFSet()};
        for (int k = 1; k < r; ++k) {
            std::vector<HFSet> next;
            std::size_t m = out.size();
            for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
                std::vector<HFSet> xs;
                for (std::size_t b = 0; b < m; ++b)
                    if (mask >> b & 1) xs.push_back(out[b]);
                next.push_back(HFSet::make(std::move(xs)));
            }
            out = std::move(next);
        }
        std::sort(out.begin(), out.end(), lorder_less);
    }
    return cache.emplace(r, std::move(out)).first->second;
}

}  // namespace ordkit
