#pragma once

#include "loghh/monoid.hpp"
#include "loghh/report.hpp"
#include "loghh/sparse.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace loghh {

// {"rank": r, "torsion": [...]}
json module_json(const ModuleDesc& M);

// k[M]/(ideal) with pre-log structure alpha: N -> M.
struct PreLogRing {
    Coefficients coeff;
    AffineMonoid ring_monoid;
    std::vector<IntVec> ideal;
    AffineMonoid prelog_monoid;
    MonoidHom structure;

    PreLogRing() = default;
    PreLogRing(Coefficients k, AffineMonoid M, std::vector<IntVec> ideal, AffineMonoid N, IntMatrix alpha);

    static PreLogRing canonical(const AffineMonoid& M, Coefficients k);
    static PreLogRing trivial_log(const AffineMonoid& M, Coefficients k);
    static PreLogRing point(Coefficients k) { return trivial_log(AffineMonoid::trivial(0), k); }

    std::size_t rank() const { return ring_monoid.ambient_rank(); }
    bool in_ideal(const IntVec& m) const;
    // Degree m carries a nonzero monomial of the ring.
    bool has_monomial(const IntVec& m) const { return ring_monoid.contains(m) && !in_ideal(m); }
    bool is_canonical() const;
    std::string to_string() const;
};

struct PreLogMap {
    PreLogRing source, target;
    MonoidHom monoid_map;  // ring monoids
    MonoidHom prelog_map;  // pre-log monoids

    PreLogMap() = default;
    PreLogMap(PreLogRing source, PreLogRing target, IntMatrix ring_matrix, IntMatrix prelog_matrix);

    // (k[P], P) -> (k[M], M) induced by theta.
    static PreLogMap canonical(const MonoidHom& theta, Coefficients k);
    // Structure map from the point (k, trivial) to a pre-log ring.
    static PreLogMap over_point(const PreLogRing& A);
    static PreLogMap identity(const PreLogRing& A);
    PreLogMap compose_after(const PreLogMap& first) const;  // this o first
    bool is_canonical() const;
};

struct FreePrelog {
    PreLogRing ring;
    PreLogMap unit;  // base -> free algebra
    std::vector<std::size_t> x_coords, y_coords;
};
FreePrelog free_prelog(const PreLogRing& base, const std::vector<std::string>& X, const std::vector<std::string>& Y);

// Degree-local presentation of the log Kahler forms Omega^q of a map f.
class KahlerPresentation {
public:
    explicit KahlerPresentation(const PreLogMap& f);

    struct Generator {
        enum class Kind { D, DlogUnit, DlogLog } kind;
        IntVec sharp;    // D: sharp coordinates of the element
        std::size_t index = 0;  // DlogUnit / DlogLog: basis index
        IntVec ambient;  // D: lift in M; others: associated character vector in the ambient lattice
        IntVec degree;   // ambient degree of the generator
        std::string label;
    };
    struct Piece {
        std::vector<Generator> gens;
        std::vector<std::vector<std::size_t>> basis;  // sorted generator ids; coefficient monomial implied
        std::vector<IntVec> coefficient;              // monomial of each basis element (ambient)
        SparseMatrix relations;                       // rows = basis
    };

    Piece piece(const IntVec& m, std::size_t q) const;
    ModuleDesc dimension(const IntVec& m, std::size_t q) const;

    // Wedge of character vectors in Lambda^q of the ambient lattice modulo base directions;
    // columns indexed by basis elements of the piece, rows by q-subsets of coordinates.
    IntMatrix embedding(const Piece& p, std::size_t q) const;
    std::size_t embedded_dim() const { return proj_.rows(); }

    const PreLogMap& map() const { return f_; }
    std::vector<std::string> generator_labels() const;
    std::vector<std::string> relation_labels() const;

private:
    PreLogMap f_;
    AffineMonoid M_;
    std::vector<IntVec> units_;      // ambient unit basis
    LatticeQuotient modU_;           // intrinsic coordinates modulo units
    AffineMonoid sharp_;             // M / U
    std::vector<IntVec> Nbasis_;     // basis of N^gp (ambient of N)
    struct Template {
        // sum of coeff * t^{mono} * gen, homogeneous of degree deg
        IntVec deg;
        std::vector<std::tuple<std::int64_t, IntVec, Generator>> terms;
    };
    std::vector<Template> fixed_templates_;  // log, base ring, base prelog relations
    IntMatrix proj_;

    IntVec split_lift(const IntVec& sharp) const;
    std::optional<IntVec> sharp_of(const IntVec& m) const;
    Generator dgen(const IntVec& sharp) const;
    std::vector<std::pair<std::int64_t, Generator>> dlog_expansion(const IntVec& n_ambient) const;
    std::vector<std::pair<std::int64_t, Generator>> dlog_unit_expansion(const IntVec& u_ambient) const;
    std::pair<IntVec, IntVec> split(const IntVec& m) const;  // (unit part ambient, sharp coords)
};

struct PresentedModule {
    std::vector<std::string> generators;
    std::vector<std::string> relations;
    std::map<IntVec, ModuleDesc> graded;  // per requested degree, q = 1
};
PresentedModule kahler_differentials(const PreLogMap& f, const std::vector<IntVec>& degrees = {});

struct CotangentPi {
    std::string shape;
    ModuleDesc fiber;                      // rank (and torsion) as a module over the target ring
    std::map<IntVec, ModuleDesc> graded;   // per requested degree
};
CotangentPi cotangent_pi(const PreLogMap& f, std::size_t n, const std::vector<IntVec>& degrees = {});

// Target ring monoid split as L x N^F, L generated by the pre-log image and units, with the induced
// group map from the source log part L_R (pre-log image, units, free generators sent to units).
struct EffectiveChart {
    bool ring_ok = false;
    std::vector<std::string> evidence;
    AffineMonoid target_monoid;
    std::vector<IntVec> log_gens;       // ambient generators of L (with +-units)
    std::vector<IntVec> log_basis;      // basis of L^gp, intrinsic coordinates of M^gp
    std::vector<IntVec> free_gens;      // ambient
    std::vector<bool> free_hit;         // free variable coming from a source free variable
    std::vector<IntVec> src_log_images; // ambient images in M of the source log part generators
    std::size_t src_log_rank = 0;
    std::size_t src_units_rank = 0;
    IntMatrix theta;                    // L_R^gp -> L^gp
    std::size_t kernel_rank = 0;
    FgAbGroup cokernel;
    std::size_t free_variables() const;
    // (coordinates in log_basis, exponents of free_gens); requires ring_ok.
    std::optional<std::pair<IntVec, IntVec>> decompose(const IntVec& m) const;
};
EffectiveChart effective_chart(const PreLogMap& f);

struct MapClassification {
    bool strict = false, kummer = false;
    TriState integral, exact;
    bool log_smooth = false, log_etale = false, derived_log_smooth = false, derived_log_etale = false;
    std::size_t kernel_rank = 0;
    FgAbGroup cokernel;
    bool ring_condition = false;
    std::size_t free_variables = 0;
    std::vector<std::string> evidence;
    json to_json() const;
};
MapClassification classify_map(const PreLogMap& f);

Report transitivity_check(const PreLogMap& f, const PreLogMap& g, std::size_t n_max);

}  // namespace loghh
