#pragma once

#include "loghh/cone.hpp"
#include "loghh/lattice.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace loghh {

inline constexpr std::int64_t kDefaultGradingBound = 64;
inline constexpr std::int64_t kDefaultBoxBound = 8;

struct TriState {
    enum class Value { Yes, No, Unknown };
    Value value = Value::Unknown;
    std::int64_t bound = 0;  // exhausted search bound when Unknown
    std::string evidence;

    static TriState yes(std::string ev) { return {Value::Yes, 0, std::move(ev)}; }
    static TriState no(std::string ev) { return {Value::No, 0, std::move(ev)}; }
    static TriState unknown(std::int64_t b, std::string ev) { return {Value::Unknown, b, std::move(ev)}; }
    bool is_yes() const { return value == Value::Yes; }
    bool is_no() const { return value == Value::No; }
    std::string str() const;
};

class AffineMonoid {
public:
    AffineMonoid() : AffineMonoid(0, {}) {}
    AffineMonoid(std::size_t ambient_rank, std::vector<IntVec> generators);

    static AffineMonoid free_monoid(std::size_t n);
    static AffineMonoid lattice(std::size_t n);
    static AffineMonoid trivial(std::size_t ambient_rank = 0) { return AffineMonoid(ambient_rank, {}); }

    std::size_t ambient_rank() const;
    const std::vector<IntVec>& generators() const;

    // M^gp: rank and a basis (ambient vectors).
    std::size_t rank() const;
    const std::vector<IntVec>& group_basis() const;
    std::optional<IntVec> to_group(const IntVec& v) const;
    IntVec from_group(const IntVec& y) const;
    bool in_group(const IntVec& v) const { return to_group(v).has_value(); }
    // Index of M^gp in its saturation inside Z^d.
    Int index_in_saturation() const;

    // Cone data in intrinsic coordinates.
    const std::vector<IntVec>& facets() const;
    const IntVec& grading() const;
    std::int64_t degree(const IntVec& v) const;
    bool in_cone(const IntVec& v) const;

    // Units U = M cap (-M), as a lattice basis in ambient coordinates.
    const std::vector<IntVec>& unit_basis() const;
    bool is_sharp() const { return unit_basis().empty(); }
    bool is_unit(const IntVec& v) const;
    std::vector<IntVec> nonunit_generators() const;

    bool contains(const IntVec& v, std::int64_t grading_bound = kDefaultGradingBound) const;

    // Z^r / U (intrinsic) torsion-free, so M = U x M_sharp splits.
    bool splits() const;
    // Coordinates of the sharp quotient M^gp / U; only meaningful when splits().
    IntVec sharp_coords(const IntVec& v) const;
    AffineMonoid sharp_part() const;

    bool operator==(const AffineMonoid& o) const;
    std::string to_string() const;

private:
    struct Data;
    std::shared_ptr<const Data> d_;
};

class MonoidHom {
public:
    MonoidHom() = default;
    MonoidHom(AffineMonoid source, AffineMonoid target, IntMatrix matrix);

    static MonoidHom identity(const AffineMonoid& M);
    static MonoidHom zero(const AffineMonoid& source, const AffineMonoid& target);

    const AffineMonoid& source() const { return source_; }
    const AffineMonoid& target() const { return target_; }
    const IntMatrix& matrix() const { return matrix_; }
    IntVec apply(const IntVec& v) const { return matrix_.apply(v); }
    // theta^gp in intrinsic coordinates (rank target x rank source).
    const IntMatrix& group_map() const { return group_map_; }
    MonoidHom compose_after(const MonoidHom& first) const;  // this o first

private:
    AffineMonoid source_, target_;
    IntMatrix matrix_, group_map_;
};

struct GroupCompletion {
    FgAbGroup group;
    std::vector<IntVec> basis;  // gamma: Z^r -> Z^d as basis vectors
    Int index_in_saturation;
    std::vector<IntVec> units;
    AffineMonoid sharp;
    bool splits = true;
};

GroupCompletion group_completion(const AffineMonoid& M);
bool is_saturated(const AffineMonoid& M);
TriState is_exact(const MonoidHom& theta, std::int64_t box = kDefaultBoxBound);
TriState is_integral(const MonoidHom& theta, std::int64_t box = 3);

struct AmalgamatedSum {
    AffineMonoid monoid;
    FgAbGroup pushout_group;
    bool caveat = false;
    // (M^gp + N^gp) / P^gp in canonical coordinates; the sum lives in its free part.
    LatticeQuotient quotient;
    std::size_t first_rank = 0, second_rank = 0;
    AffineMonoid first, second;

    IntVec from_first(const IntVec& m) const;
    IntVec from_second(const IntVec& n) const;
};
AmalgamatedSum amalgamated_sum(const MonoidHom& theta, const MonoidHom& phi);

// cokernel of theta^gp as a finitely generated abelian group.
FgAbGroup group_cokernel(const MonoidHom& theta);
std::size_t group_kernel_rank(const MonoidHom& theta);

}  // namespace loghh
