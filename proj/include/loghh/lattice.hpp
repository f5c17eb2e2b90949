#pragma once

#include "loghh/abelian.hpp"

#include <optional>
#include <vector>

namespace loghh {

IntVec add(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
IntVec scale(const IntVec& a, std::int64_t s);
IntVec neg(const IntVec& a);
std::int64_t dot(const IntVec& a, const IntVec& b);
bool is_zero(const IntVec& v);
IntVec primitive(const IntVec& v);
IntVec concat(const IntVec& a, const IntVec& b);
std::string vec_str(const IntVec& v);

// Z-basis (as columns) of the lattice spanned by gens in Z^d.
std::vector<IntVec> lattice_basis(const std::vector<IntVec>& gens, std::size_t d);
// Z-basis of (Q-span of gens) intersected with Z^d.
std::vector<IntVec> saturation_basis(const std::vector<IntVec>& gens, std::size_t d);
// Saturated Z-basis of the kernel of A (as columns of length A.cols()).
std::vector<IntVec> kernel_basis(const IntMatrix& A);
// Integer solution x of A x = b, if any.
std::optional<IntVec> solve_integer(const IntMatrix& A, const IntVec& b);
// Extend a basis of a saturated sublattice to a unimodular basis of Z^d; the
// sublattice basis vectors span the first columns' span.
IntMatrix complete_basis(const std::vector<IntVec>& sub, std::size_t d);
// Bareiss determinant of a square matrix.
Int determinant(std::vector<std::vector<Int>> a);
// Inverse of a unimodular matrix.
IntMatrix unimodular_inverse(const IntMatrix& U);

// Z^d / K in canonical coordinates: free part first, then torsion part reduced
// into [0, d_i).
class LatticeQuotient {
public:
    LatticeQuotient() = default;
    LatticeQuotient(const std::vector<IntVec>& sublattice_gens, std::size_t d);

    std::size_t ambient() const { return d_; }
    const FgAbGroup& group() const { return group_; }
    IntVec reduce(const IntVec& v) const;
    IntVec lift(const IntVec& code) const;
    bool is_zero(const IntVec& v) const;
    bool contains(const IntVec& v) const { return is_zero(v); }
    // Add two canonical codes.
    IntVec add_codes(const IntVec& a, const IntVec& b) const;
    IntVec normalize_code(IntVec c) const;

private:
    std::size_t d_ = 0;
    FgAbGroup group_;
    IntMatrix U_, Uinv_;
    std::vector<Int> diag_;
    // rows of U kept in the code: (row index, modulus or 0 for free)
    std::vector<std::pair<std::size_t, std::int64_t>> coords_;
};

}  // namespace loghh
