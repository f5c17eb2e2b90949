#pragma once

#include "loghh/global.hpp"

namespace loghh::detail {

// Forms of a chart-shaped piece in degree m as a lattice in Lambda^q of the character lattice modulo base directions:
// Lambda^q of (log directions + free directions in the support of m).
class PieceForms {
public:
    explicit PieceForms(const PreLogMap& f);
    // Columns span the q-forms of degree m (empty when m carries no monomial).
    IntMatrix basis(std::size_t q, const IntVec& m) const;
    std::size_t rows(std::size_t q) const;

private:
    PreLogMap f_;
    EffectiveChart e_;
    IntMatrix proj_;
    std::vector<IntVec> log_dirs_;  // ambient
};

// Lift of the piece to its trivial-log version (HH theory).
PreLogMap without_log(const PreLogMap& f);

// Integer matrix R with big * R = small (restriction of forms); throws if the inclusion fails.
IntMatrix restriction(const IntMatrix& big, const IntMatrix& small);

// Cech cochains of one (q, m) layer over the nerve.
struct CechLayer {
    std::vector<std::vector<std::vector<std::size_t>>> simplices;  // [p] -> index sets of size p+1
    std::vector<std::vector<IntMatrix>> bases;                     // [p][s]
    SparseComplex complex;                                         // chain-reversed: cochain p at n - 1 - p
    std::vector<ModuleDesc> H;                                     // H^p
};

struct CechPieces {
    std::vector<std::vector<std::vector<std::size_t>>> simplices;
    std::vector<std::vector<PieceForms>> forms;
};

CechPieces cech_pieces(const GluedLogScheme& X, Theory theory);
CechLayer cech_layer(const CechPieces& P, std::size_t q, const IntVec& m, const Coefficients& k);

}  // namespace loghh::detail
