#pragma once

#include "loghh/prelog.hpp"
#include "loghh/sparse.hpp"

#include <map>
#include <vector>

namespace loghh {

inline constexpr std::size_t kDefaultQmax = 2;
inline constexpr std::int64_t kDefaultRadius = 6;

struct BarOptions {
    bool parallel = true;
    // l-infinity diameter bound for free group directions in the enumerated models
    std::int64_t rips_radius = 1;
};

// pi[n][degree] for n <= qmax on an explicit degree window.
struct HomotopyTable {
    std::size_t qmax = 0;
    std::vector<IntVec> degrees;
    std::map<std::size_t, std::map<IntVec, ModuleDesc>> pi;
    std::string shape;

    const ModuleDesc& at(std::size_t n, const IntVec& m) const;
    json to_json() const;
    bool operator==(const HomotopyTable& o) const { return qmax == o.qmax && degrees == o.degrees && pi == o.pi; }
};

// Bounded complexes of free modules, one per grading degree.
struct GradedComplex {
    Coefficients k;
    std::vector<IntVec> degrees;
    std::vector<SparseComplex> pieces;
};

HomotopyTable homology_table(const GradedComplex& c, std::size_t qmax, const BarOptions& opt = {});

// Elements of M (ambient coordinates) inside [-radius, radius]^d.
std::vector<IntVec> degree_box(const AffineMonoid& M, std::int64_t radius);

// Normalized cyclic bar complex of k[M]/J relative to k[P] along theta; M sharp.
GradedComplex cyclic_bar_complex(const MonoidHom& theta, const std::vector<IntVec>& ideal, const Coefficients& k,
                                 std::size_t top, const std::vector<IntVec>& degrees, const BarOptions& opt = {});

HomotopyTable cyclic_bar_homology(const MonoidHom& theta, const Coefficients& k, std::size_t qmax,
                                  const std::vector<IntVec>& degrees, const BarOptions& opt = {});

// Closed form: k[M] tensor H_*(B(M^gp/P^gp); k).
HomotopyTable replete_bar_homology(const MonoidHom& theta, const Coefficients& k, std::size_t qmax,
                                   const std::vector<IntVec>& degrees, const BarOptions& opt = {});
// Independent oracle: enumerated replete bar levels with a diameter-bounded model of the free part.
HomotopyTable replete_bar_moore(const MonoidHom& theta, const Coefficients& k, std::size_t qmax,
                                const std::vector<IntVec>& degrees, const BarOptions& opt = {});

// Bar complex of a finitely generated abelian group with the free part cut to l-infinity diameter <= radius.
SparseComplex group_bar_complex(const FgAbGroup& G, std::size_t top, std::int64_t radius);

HomotopyTable hochschild_homology(const PreLogMap& f, std::size_t qmax, const std::vector<IntVec>& degrees,
                                  const BarOptions& opt = {});
HomotopyTable loghh_homology(const PreLogMap& f, std::size_t qmax, const std::vector<IntVec>& degrees,
                             const BarOptions& opt = {});

// Enumerated pushout model HH(A) (x) B^rep(N) over B^cy(N); base must be the point, ring monoid sharp.
GradedComplex loghh_complex(const PreLogMap& f, std::size_t top, const std::vector<IntVec>& degrees,
                            const BarOptions& opt = {});
HomotopyTable loghh_enumerated(const PreLogMap& f, std::size_t qmax, const std::vector<IntVec>& degrees,
                               const BarOptions& opt = {});

// Tor^{k[P]}_q(k, k[M]/J) along theta; P sharp and theta finite-to-one on degrees.
HomotopyTable graded_tor(const MonoidHom& theta, const std::vector<IntVec>& ideal, const Coefficients& k,
                         std::size_t qmax, const std::vector<IntVec>& degrees, const BarOptions& opt = {});

Report hkr_check(const PreLogMap& f, std::size_t qmax, const std::vector<IntVec>& degrees,
                 const BarOptions& opt = {});
// g: (R,P) -> (A,M), f: (A,M) -> (B,N); compares B (x)_A logHH(A/R) with logHH(B/R).
Report base_change_check(const PreLogMap& g, const PreLogMap& f, std::size_t qmax,
                         const std::vector<IntVec>& degrees, const BarOptions& opt = {});
// X, Y over the point; degrees of the product are pairs (mx, my) concatenated.
Report kunneth_check(const PreLogRing& X, const PreLogRing& Y, std::size_t qmax, const std::vector<IntVec>& x_degrees,
                     const std::vector<IntVec>& y_degrees, const BarOptions& opt = {});

// Tensor product of two pre-log rings over the coefficient ring.
PreLogRing product_over_point(const PreLogRing& X, const PreLogRing& Y);

}  // namespace loghh
