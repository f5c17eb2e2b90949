#pragma once

#include "loghh/bar.hpp"
#include "loghh/toric.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace loghh {

// Finite affine cover: every piece lives in one common character lattice, restrictions are inclusions
// (identity matrices on ring and pre-log ambients), and the full nerve is present.
struct GluedLogScheme {
    std::string name;
    PreLogRing base;
    std::vector<PreLogRing> charts;
    std::map<std::vector<std::size_t>, PreLogRing> overlaps;  // sorted index sets of size >= 2
    IntMatrix base_ring_map, base_prelog_map;                 // base ambient -> piece ambient

    std::size_t depth() const;
    const PreLogRing& piece(const std::vector<std::size_t>& idx) const;
    PreLogMap structure(const std::vector<std::size_t>& idx) const;
    std::size_t grading_rank() const { return charts.at(0).rank(); }
    json to_json() const;
};

// Restriction squares commute and the nerve is complete; a witness on failure.
std::optional<std::string> scheme_defect(const GluedLogScheme& X);

// Charts from the maximal cones, log structure along the rays in log_rays (divisorial faces).
GluedLogScheme toric_scheme(const Fan& f, const std::vector<IntVec>& log_rays, const Coefficients& k,
                            const std::string& name);
// Catalog: point, A1, A2, A3, A1_log (origin), P1, P2, boxbar, blowup_A2, A1_cover ({A1, Gm}).
GluedLogScheme standard_scheme(const std::string& name, const Coefficients& k);
std::vector<std::string> standard_scheme_names();
// X x S over S.
GluedLogScheme over_base(const GluedLogScheme& X, const PreLogRing& S);

enum class Theory { HH, LogHH, Omega };
std::string theory_name(Theory t);

struct TotalizedTable {
    Theory theory = Theory::LogHH;
    std::size_t qmax = 0, depth = 0, omega_q = 0;
    std::vector<IntVec> degrees;
    // pi_n (Omega: H^n of Omega^omega_q) per grading degree; n >= -(depth - 1)
    std::map<std::int64_t, std::map<IntVec, ModuleDesc>> pi;
    std::set<std::int64_t> flagged;  // degrees outside the trusted window
    std::vector<std::string> certificates;

    const ModuleDesc& at(std::int64_t n, const IntVec& m) const;
    ModuleDesc total(std::int64_t n) const;
    json to_json() const;
};

TotalizedTable cech_totalize(const GluedLogScheme& X, Theory theory, std::size_t qmax,
                             const std::vector<IntVec>& degrees, std::size_t omega_q = 0, const BarOptions& opt = {});

// Catalog cases: "affine" (k[t], a = t^e), "affine_line" (A^1 relative to the origin through the global route),
// "blowup" (A^2, origin, exceptional divisor).
Report residue_check(const std::string& config, std::size_t nmax, const Coefficients& k, std::int64_t radius = 4,
                     std::int64_t exponent = 1);

Report projective_bundle_check(std::size_t n, const PreLogRing& base, std::size_t qmax, std::int64_t radius = 2,
                               const BarOptions& opt = {});

struct DescentCover {
    enum class Kind { Kummer, Zariski } kind = Kind::Zariski;
    MonoidHom kummer;        // canonical chart map P -> Q
    Coefficients k;
    GluedLogScheme cover;    // Zariski: the cover
    PreLogRing target;       // Zariski: the ring being covered
    std::string label;
};
DescentCover kummer_cover(const MonoidHom& theta, const Coefficients& k);
DescentCover zariski_cover(const GluedLogScheme& cover, const PreLogRing& target);

Report descent_check(const DescentCover& c, std::size_t qmax, const std::vector<IntVec>& degrees,
                     const BarOptions& opt = {});

}  // namespace loghh
