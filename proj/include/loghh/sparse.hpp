#pragma once

#include "loghh/abelian.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace loghh {

// Column-major sparse integer matrix; entries within a column sorted by row.
struct SparseMatrix {
    using Entry = std::pair<std::uint32_t, std::int64_t>;

    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<Entry>> columns;

    SparseMatrix() = default;
    SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}

    // Accumulates into column j; call normalize() before use.
    void add(std::size_t i, std::size_t j, std::int64_t v) { columns[j].push_back({static_cast<std::uint32_t>(i), v}); }
    void normalize();
    std::size_t nonzeros() const;

    static SparseMatrix from_dense(const IntMatrix& A);
    IntMatrix to_dense() const;
};

bool composite_is_zero(const SparseMatrix& d_low, const SparseMatrix& d_high);

// Rank over the given coefficients (over the integers: rank over the rationals).
std::size_t sparse_rank(const SparseMatrix& A, const Coefficients& k);

struct DivisorSummary {
    std::size_t rank = 0;
    std::vector<Int> torsion;  // invariant factors >= 2
};
DivisorSummary sparse_divisors(const SparseMatrix& A);

// d[i] : C_{i+1} -> C_i, dims[i] = rank of C_i.
struct SparseComplex {
    std::vector<std::size_t> dims;
    std::vector<SparseMatrix> d;
};

ModuleDesc sparse_homology(const SparseComplex& c, std::size_t n, const Coefficients& k);

}  // namespace loghh
