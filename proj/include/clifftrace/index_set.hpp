#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace clifftrace {

// Subset of {1..N} packed into one machine word, N <= 62. Iteration is in
// increasing order of the indices, matching the convention that the
// elements of every multi-index are arranged increasingly.
struct IndexSet {
    std::uint64_t mask = 0;

    IndexSet() = default;
    explicit IndexSet(std::uint64_t m) : mask(m) {}
    static IndexSet of(std::initializer_list<int> idx) {
        IndexSet s;
        for (int i : idx) s.mask |= bit(i);
        return s;
    }
    static IndexSet full(int n) { return IndexSet((n == 64) ? ~0ull : ((1ull << n) - 1)); }
    static std::uint64_t bit(int i) { return 1ull << (i - 1); }

    int card() const { return std::popcount(mask); }
    bool contains(int i) const { return mask & bit(i); }
    bool disjoint(const IndexSet& o) const { return (mask & o.mask) == 0; }
    IndexSet unite(const IndexSet& o) const { return IndexSet(mask | o.mask); }
    IndexSet intersect(const IndexSet& o) const { return IndexSet(mask & o.mask); }
    IndexSet minus(const IndexSet& o) const { return IndexSet(mask & ~o.mask); }
    bool empty() const { return mask == 0; }

    std::vector<int> elements() const {
        std::vector<int> out;
        out.reserve(card());
        for (std::uint64_t m = mask; m; m &= m - 1)
            out.push_back(std::countr_zero(m) + 1);
        return out;
    }

    friend bool operator==(const IndexSet& a, const IndexSet& b) { return a.mask == b.mask; }
    friend bool operator<(const IndexSet& a, const IndexSet& b) { return a.mask < b.mask; }
};

// Number of pairs (a,b), a in A, b in B, with a > b: the transposition count
// of merging two increasing sequences.
inline int merge_inversions(std::uint64_t a, std::uint64_t b) {
    int inv = 0;
    for (std::uint64_t m = b; m; m &= m - 1) {
        int j = std::countr_zero(m);
        inv += std::popcount(a >> (j + 1));
    }
    return inv;
}

// Sign of J^A J^B = sign * J^{A u B} for disjoint A,B; 0 on overlap.
inline int merge_sign(const IndexSet& a, const IndexSet& b) {
    if (!a.disjoint(b)) return 0;
    return (merge_inversions(a.mask, b.mask) & 1) ? -1 : 1;
}

// The epsilon of the grand identity: nonzero only when A,B partition
// {1..n}, in which case it is the parity of sorting (A asc, B asc).
inline int eps(const IndexSet& a, const IndexSet& b, int n) {
    if (!a.disjoint(b)) return 0;
    if (a.unite(b) != IndexSet::full(n)) return 0;
    return merge_sign(a, b);
}

// Visit all subsets of the given set (including empty and itself).
template <class F>
void for_each_subset(const IndexSet& s, F&& f) {
    std::uint64_t m = s.mask, sub = 0;
    while (true) {
        f(IndexSet(sub));
        if (sub == m) break;
        sub = (sub - m) & m;
    }
}

}  // namespace clifftrace
