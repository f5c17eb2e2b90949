#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace loghh {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<std::int64_t>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MalformedComplex : Error {
    using Error::Error;
};
struct Unsupported : Error {
    using Error::Error;
};
struct ScaleError : Error {
    using Error::Error;
};
struct PreconditionError : Error {
    using Error::Error;
};
// Bounded search ran out before reaching a verdict.
struct Inconclusive : Error {
    Inconclusive(const std::string& what, std::int64_t b) : Error(what), bound(b) {}
    std::int64_t bound;
};

std::int64_t to_i64(const Int& x);

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols);
    static IntMatrix from_columns(const std::vector<IntVec>& cols, std::size_t rows);
    static IntMatrix diagonal(const std::vector<Int>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntMatrix operator*(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const;
    IntMatrix transpose() const;
    bool is_zero() const;

    IntVec column(std::size_t j) const;
    IntVec row(std::size_t i) const;
    IntVec apply(const IntVec& v) const;
    std::vector<Int> apply(const std::vector<Int>& v) const;

    IntMatrix hstack(const IntMatrix& o) const;
    IntMatrix vstack(const IntMatrix& o) const;
    IntMatrix select_columns(const std::vector<std::size_t>& idx) const;
    IntMatrix select_rows(const std::vector<std::size_t>& idx) const;

    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> data_;
};

struct SmithForm {
    IntMatrix U, D, V;
    // Inverses of U and V, tracked during elimination.
    IntMatrix Uinv, Vinv;
    std::size_t rank() const;
    std::vector<Int> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& A);

// Finitely generated abelian group in invariant-factor form.
struct FgAbGroup {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;

    static FgAbGroup from_orders(std::size_t free_rank, const std::vector<Int>& cyclic_orders);
    static FgAbGroup free(std::size_t r) { return FgAbGroup{r, {}}; }
    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    bool is_finite() const { return free_rank == 0; }
    Int torsion_order() const;
    bool operator==(const FgAbGroup& o) const = default;
    std::string to_string() const;
};

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b);
FgAbGroup tensor(const FgAbGroup& a, const FgAbGroup& b);
FgAbGroup tor1(const FgAbGroup& a, const FgAbGroup& b);

FgAbGroup cokernel_structure(const IntMatrix& A);

struct Coefficients {
    enum class Kind { Integers, Rationals, PrimeField };
    Kind kind = Kind::Integers;
    std::uint64_t p = 0;

    static Coefficients integers() { return {}; }
    static Coefficients rationals() { return {Kind::Rationals, 0}; }
    static Coefficients prime_field(std::uint64_t p);

    bool is_field() const { return kind != Kind::Integers; }
    std::uint64_t characteristic() const { return kind == Kind::PrimeField ? p : 0; }
    bool invertible(const Int& n) const;
    std::string name() const;
    bool operator==(const Coefficients& o) const = default;
};

bool is_prime(std::uint64_t p);

// Module over the coefficient ring; fields have empty torsion.
using ModuleDesc = FgAbGroup;

ModuleDesc change_coefficients(const FgAbGroup& G, const Coefficients& k);

// boundaries[i] is the differential C_{i+1} -> C_i.
ModuleDesc complex_homology(const std::vector<IntMatrix>& boundaries, std::size_t n, const Coefficients& k);

ModuleDesc group_homology(const FgAbGroup& G, std::size_t n, const Coefficients& k);

std::pair<ModuleDesc, ModuleDesc> scalar_tensor_tor(const FgAbGroup& G, const Coefficients& k);

std::size_t rank_over(const IntMatrix& A, const Coefficients& k);

}  // namespace loghh
