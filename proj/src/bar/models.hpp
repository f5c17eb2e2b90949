#pragma once

#include "loghh/bar.hpp"
#include "loghh/detail/enumerate.hpp"

namespace loghh::detail {

// Elements s of N with m - alpha(s) in M; M sharp and alpha nonzero on the generators of N.
std::vector<IntVec> elements_over(const AffineMonoid& N, const IntMatrix& alpha, BelowCache& M, const IntVec& m);

// Cyclic face d_i of a flattened (q+1)-tuple of rank-d vectors.
IntVec cyclic_face(const IntVec& x, std::size_t d, std::size_t q, std::size_t i);

// D times a rational left inverse of alpha^gp, D minimal; H = D h + partial sums of B(x_1..x_j) is invariant under
// the pushout moves.
struct Retraction {
    std::size_t rank = 0;
    std::int64_t scale = 1;
    IntMatrix B;
    std::optional<AffineMonoid> M;
    IntVec phi(const IntVec& x, std::size_t d, std::size_t q) const;
    IntVec invariant(const IntVec& x, std::size_t d, std::size_t q, const IntVec& h) const;
};
Retraction group_retraction(const AffineMonoid& M, const AffineMonoid& N, const IntMatrix& alpha);

// One grading degree of the levelwise pushout of k[M^{q+1}]/J along alpha: N -> M.
// States are (x_0..x_q, s) with sum x + alpha(s) = m; moving alpha(n) between s and a slot is an identification.
// Without repletion this is the cyclic bar relative to k[N]; with repletion each state also carries homogeneous
// coordinates h_1..h_q in N^gp (h_0 = 0), shifted by n on slots >= i when n moves into slot i. With a rational
// retraction beta of alpha^gp, H = D (h + partial sums of beta(x)) is invariant under the moves and commutes with
// the faces; classes are cut to l-infinity diameter of H at most D * radius.
class PushoutBarDegree {
public:
    PushoutBarDegree(const AffineMonoid& M, const std::vector<IntVec>& ideal, const AffineMonoid& N,
                     const IntMatrix& alpha, const IntVec& m, std::size_t top, bool replete, std::int64_t radius);

    const SparseComplex& complex() const { return complex_; }
    std::size_t basis_size(std::size_t q) const { return levels_.simplices[q].size(); }
    // Basis index of the class of (x, s, h) at level q; nothing when the class is zero or degenerate.
    std::optional<std::size_t> basis_index(std::size_t q, const IntVec& x, const IntVec& s, const IntVec& h) const;

private:
    struct Level {
        std::vector<IntVec> states;
        std::unordered_map<IntVec, std::size_t, VecHash> index;
        std::vector<std::size_t> comp;
        std::vector<IntVec> phi;  // D times the partial sums of beta(x), so H = D h + phi
        std::vector<std::size_t> root;
        std::vector<bool> zero;
        std::vector<std::vector<char>> unit_slot;  // slot j >= 1 is empty in some member of the component
    };

    std::size_t d_, dN_, rN_;
    IntVec m_;
    Retraction ret_;
    std::vector<Level> lv_;
    Levels levels_{0};
    SparseComplex complex_;

    void build_level(std::size_t q, const std::vector<IntVec>& ideal, const AffineMonoid& N, const IntMatrix& alpha,
                     BelowCache& Mc, BelowCache& Nc, const std::vector<IntVec>& svals);
    bool good(std::size_t q, std::size_t c, const IntVec& H) const;
    std::optional<IntVec> class_key(std::size_t q, const IntVec& state, const IntVec& H) const;
};

// Throws Unsupported unless f is over the point with a sharp ring monoid and alpha injective, nonzero on generators.
void require_enumerable_log(const PreLogMap& f);

// Closed form over a chart decomposition: pi_n(m) = sum over a + b = n of H_a(B coker; k) tensor the b-th exterior
// power on the unhit free variables in the support of m.
HomotopyTable chart_table(const EffectiveChart& e, const PreLogRing& A, std::size_t qmax,
                          const std::vector<IntVec>& degrees, const BarOptions& opt, const std::string& shape);
PreLogMap trivial_log_map(const MonoidHom& theta, const Coefficients& k);
// effective_chart, throwing Unsupported when the ring condition fails.
EffectiveChart checked_chart(const PreLogMap& f);

}  // namespace loghh::detail
