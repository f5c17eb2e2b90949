#pragma once

#include "loghh/monoid.hpp"
#include "loghh/sparse.hpp"

#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

namespace loghh::detail {

struct VecHash {
    std::size_t operator()(const IntVec& v) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
        return h;
    }
};

// Elements x of a sharp monoid with top - x in the monoid, sorted; memoized per instance.
class BelowCache {
public:
    explicit BelowCache(const AffineMonoid& S) : S_(S) {}
    const std::vector<IntVec>& below(const IntVec& top);
    bool contains(const IntVec& v);

private:
    const AffineMonoid& S_;
    std::map<IntVec, std::vector<IntVec>> below_;
    std::map<IntVec, bool> member_;
};

std::vector<IntVec> elements_below(const AffineMonoid& S, const IntVec& top);

// Ordered tuples (x_0..x_{parts-1}) of monoid elements summing to m, flattened.
std::vector<IntVec> compositions(BelowCache& c, const IntVec& m, std::size_t parts);

// Sequences (h_1..h_len) in Z^r with h_0 = 0 and all pairwise l-infinity distances <= radius, flattened.
std::vector<IntVec> rips_sequences(std::size_t r, std::size_t len, std::int64_t radius);
bool within_diameter(const IntVec& h, std::size_t r, std::int64_t radius);

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    // The smaller index becomes the root, so roots are canonical.
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b)
            parent_[b] = a;
        else
            parent_[a] = b;
    }

private:
    std::vector<std::size_t> parent_;
};

// Normalized chains from per-level simplex lists; face(q, key, i) returns the key of the i-th face,
// or nothing when the face is degenerate or zero.
struct Levels {
    std::vector<std::vector<IntVec>> simplices;
    std::vector<std::unordered_map<IntVec, std::size_t, VecHash>> index;
    explicit Levels(std::size_t n) : simplices(n), index(n) {}
    void add(std::size_t q, const IntVec& key) {
        if (index[q].emplace(key, simplices[q].size()).second) simplices[q].push_back(key);
    }
};
using FaceFn = std::function<std::optional<IntVec>(std::size_t, const IntVec&, std::size_t)>;
SparseComplex assemble(const Levels& L, const FaceFn& face);

// Runs body(i) for i < n, in parallel when asked; rethrows the exception of the lowest failing index.
void for_each_index(std::size_t n, bool parallel, const std::function<void(std::size_t)>& body);

}  // namespace loghh::detail
