#pragma once

#include "loghh/lattice.hpp"

#include <vector>

namespace loghh {

// Primitive inward facet normals of the cone spanned by gens; gens must span Q^r.
std::vector<IntVec> cone_facets(const std::vector<IntVec>& gens, std::size_t r);

bool satisfies(const std::vector<IntVec>& ineqs, const IntVec& x);

struct ConeVRep {
    std::vector<IntVec> lineality;  // saturated basis
    std::vector<IntVec> rays;       // primitive, modulo lineality
};
// Generators of {x in Q^r : a.x >= 0 for all a in ineqs}.
ConeVRep cone_from_inequalities(const std::vector<IntVec>& ineqs, std::size_t r);

// Minimal generating set of cone(rays) intersected with Z^r. The cone must be pointed.
std::vector<IntVec> hilbert_basis_pointed(const std::vector<IntVec>& rays, std::size_t r);

// Monoid generators of {x in Z^r : a.x >= 0}; lineality contributes +-basis vectors.
std::vector<IntVec> cone_lattice_generators(const std::vector<IntVec>& ineqs, std::size_t r);

// Public operation with the desk-scale guard d <= 4.
std::vector<IntVec> hilbert_basis(const std::vector<IntVec>& rays, std::size_t d);

// Enumerate k-subsets of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        f(static_cast<const std::vector<std::size_t>&>(idx));
        if (k == 0) return;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace loghh
