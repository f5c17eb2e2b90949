#pragma once

#include "loghh/monoid.hpp"
#include "loghh/report.hpp"

#include <cstdint>
#include <vector>

namespace loghh {

// N^ex = M x_{M^gp} N^gp for theta: N -> M, realized inside N^gp (intrinsic coordinates of N).
struct Repletion {
    MonoidHom original;
    AffineMonoid replete_monoid;  // lattice part, ambient = Z^{rank N^gp}
    FgAbGroup torsion;            // torsion of the group part that has no lattice embedding
    IntMatrix projection;         // replete ambient -> ambient of M
    bool virtually_surjective = false;
    TriState projection_exact;

    IntVec unit(const IntVec& n) const;             // N -> N^rep
    IntVec project(const IntVec& x) const { return projection.apply(x); }
    bool contains(const IntVec& x) const;           // x in N^gp with theta(x) in M
    json to_json() const;
};

// Throws Inconclusive when the target is not saturated (the preimage cone alone does not decide membership).
Repletion exactify(const MonoidHom& theta);

// N^rep = M + N^gp/M^gp along a section eta; the group part is coded by a LatticeQuotient of N^gp.
struct RepleteSplit {
    Repletion repletion;
    IntMatrix section_gp;      // eta^gp, intrinsic M -> intrinsic N
    LatticeQuotient quotient;  // N^gp / eta(M^gp)
    IntMatrix complement;      // lifts of the quotient's free basis into ker theta^gp (columns, intrinsic N)

    // N^rep -> M + G: (ambient of M, code)
    std::pair<IntVec, IntVec> forward(const IntVec& x) const;
    // M + G -> N^rep
    IntVec backward(const IntVec& m, const IntVec& code) const;
    json to_json() const;
};

RepleteSplit replete_split(const MonoidHom& theta, const MonoidHom& eta);

// Elementwise checks that exactify(theta) and M + G agree through the split maps.
Report split_check(const MonoidHom& theta, const MonoidHom& eta, std::size_t samples, std::uint64_t seed);

// (M +_P M)^rep for theta: P -> M, split along the first inclusion.
struct RepleteDiagonal {
    AffineMonoid sum;         // M +_P M (integralized)
    MonoidHom fold;           // sum -> M
    IntMatrix first, second;  // intrinsic M^gp -> sum ambient
    RepleteSplit split;
    json to_json() const;
};

RepleteDiagonal replete_diagonal(const MonoidHom& theta);

// Level q of M + B(G), G = M^gp / P^gp, with the map into the pullback of M -> M^gp <- B^cy_{P^gp}(M^gp).
class RepleteBarLevel {
public:
    RepleteBarLevel(const MonoidHom& theta, std::size_t q);

    struct Element {
        IntVec m;                // ambient of M
        std::vector<IntVec> g;   // q codes in G
        bool operator==(const Element& o) const = default;
    };

    std::size_t degree() const { return q_; }
    const FgAbGroup& group() const { return G_.group(); }
    const LatticeQuotient& quotient() const { return G_; }

    Element face(const Element& x, std::size_t i) const;
    Element degeneracy(const Element& x, std::size_t i) const;
    // (m, [g_1..g_q]) -> (m, (gamma(m) - sum g_j, g_1, ..., g_q)) with chosen lifts
    std::vector<IntVec> to_pullback(const Element& x) const;
    Element from_pullback(const IntVec& m, const std::vector<IntVec>& tuple) const;
    json to_json() const;

private:
    MonoidHom theta_;
    std::size_t q_;
    LatticeQuotient G_;
};

RepleteBarLevel replete_bar_level(const MonoidHom& theta, std::size_t q);

Report verify_bar_iso(const MonoidHom& theta, std::size_t qmax, std::size_t samples, std::uint64_t seed = 1);

}  // namespace loghh
