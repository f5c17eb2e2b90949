#pragma once

#include "loghh/monoid.hpp"
#include "loghh/report.hpp"

#include <map>
#include <string>
#include <vector>

namespace loghh {

inline constexpr std::size_t kMaxFanRank = 3;

struct Cone {
    std::size_t d = 0;
    std::vector<IntVec> rays;  // primitive, sorted, no redundant generators
    bool pointed = true;

    Cone() = default;
    Cone(std::size_t d, std::vector<IntVec> rays);

    std::size_t dim() const;
    bool contains(const IntVec& v) const;
    bool contains(const Cone& c) const;
    // Inequalities u.x >= 0 cutting out the cone (facet normals plus +-equations of its span).
    const std::vector<IntVec>& inequalities() const { return ineqs_; }
    // Facets as subsets of rays; relative to the span of the cone.
    std::vector<std::vector<IntVec>> facets() const;
    bool is_face(const std::vector<IntVec>& subset) const;
    bool operator==(const Cone& o) const { return d == o.d && rays == o.rays; }
    std::string to_string() const;

private:
    std::vector<IntVec> ineqs_, normals_;  // normals_: facet normals modulo the span's annihilator
};

Cone intersect(const Cone& a, const Cone& b);

AffineMonoid dual_monoid(const Cone& c);

struct Fan {
    std::size_t d = 0;
    std::vector<Cone> cones;  // maximal cones

    Fan() = default;
    Fan(std::size_t d, std::vector<Cone> cones);

    std::vector<IntVec> rays() const;  // sorted union of cone rays
    std::size_t ray_index(const IntVec& r) const;
    bool in_support(const IntVec& v) const;
    // Intersection of the maximal cones in idx (sorted).
    Cone intersection(const std::vector<std::size_t>& idx) const;
    json to_json() const;

    static Fan named(const std::string& name);
};

// Pairwise intersections are faces of both; returns a witness message on failure.
std::optional<std::string> fan_defect(const Fan& f);

struct Subdivision {
    Fan refined, coarse;
    std::vector<std::size_t> assignment;  // refined cone -> coarse cone containing it
    json to_json() const;
};

Subdivision star_subdivision(const Fan& f, const IntVec& ray);

struct SubdivisionCertificate {
    bool holds = false;
    std::vector<std::size_t> assignment;
    std::string witness;
};
SubdivisionCertificate is_subdivision(const Fan& refined, const Fan& coarse);

// Coefficient a_rho per ray of the fan, in the order of Fan::rays(); O(D) has sections x^m on U_sigma iff
// m.v_rho >= -a_rho for the rays of sigma.
struct ToricDivisor {
    std::vector<std::int64_t> coeff;
    static ToricDivisor zero(const Fan& f) { return {std::vector<std::int64_t>(f.rays().size(), 0)}; }
};

// H^i(X_Sigma, O(D) tensor Lambda^{q_log} of the dual lattice) per degree, i < number of cones.
struct ToricCohomology {
    std::vector<IntVec> degrees;
    std::size_t top = 0;
    std::map<IntVec, std::vector<ModuleDesc>> H;
    std::int64_t euler(const IntVec& m) const;
    json to_json() const;
};

ToricCohomology cohomology(const Fan& f, const Coefficients& k, const ToricDivisor& D, std::size_t q_log,
                           const std::vector<IntVec>& degrees, bool parallel = true);
ToricCohomology cohomology_serial(const Fan& f, const Coefficients& k, const ToricDivisor& D, std::size_t q_log,
                                  const std::vector<IntVec>& degrees);

// Lattice points of [-radius, radius]^d.
std::vector<IntVec> lattice_box(std::size_t d, std::int64_t radius);

Report invariance_check(const Subdivision& s, const Coefficients& k, const std::vector<IntVec>& degrees);

// Cech complexes of O and of the relative log forms on the two charts of (P^1, infinity) over a point.
Report pone_bar_check(const Coefficients& k, std::int64_t radius = 6);

}  // namespace loghh
