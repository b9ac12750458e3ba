#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ordkit/order.hpp"

namespace ordkit {

// Hereditarily finite set. Elements are kept sorted by lorder and duplicate-free.
class HFSet {
public:
    HFSet();  // the empty set

    const std::vector<HFSet>& elems() const { return node_->elems; }
    int rank() const { return node_->rank; }
    std::size_t hash() const { return node_->hash; }
    bool empty() const { return node_->elems.empty(); }

    friend bool operator==(const HFSet& a, const HFSet& b);
    friend bool operator!=(const HFSet& a, const HFSet& b) { return !(a == b); }

    // canonicalizes (sorts, dedups); rejects rank above the configured hf_cap
    static HFSet make(std::vector<HFSet> elems);

private:
    struct Node {
        std::vector<HFSet> elems;
        int rank = 0;
        std::size_t hash = 0;
    };
    explicit HFSet(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct HFHash {
    std::size_t operator()(const HFSet& a) const { return a.hash(); }
};

Ordering lorder(const HFSet& a, const HFSet& b);
inline bool lorder_less(const HFSet& a, const HFSet& b) { return lorder(a, b) == Ordering::Less; }
int vn_rank(const HFSet& a);
bool hf_member(const HFSet& a, const HFSet& b);  // a in b

// von Neumann ordinal k = {0,...,k-1}; returns false when a is not one
HFSet hf_ordinal(unsigned k);
bool hf_as_ordinal(const HFSet& a, unsigned* k = nullptr);

HFSet parse_hf(std::string_view src);
std::string render(const HFSet& a);

// V_r = all sets of rank < r, in lorder (r <= 5)
const std::vector<HFSet>& hf_universe(int r);

}  // namespace ordkit
