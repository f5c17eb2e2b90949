#include "loghh/bar.hpp"
#include "loghh/monoid.hpp"

#include <numeric>

namespace loghh {

namespace {

// theta(P) plus the remaining generators of M give M = theta(P) x <rest> with theta^gp injective.
bool is_direct_summand(const MonoidHom& theta) {
    const AffineMonoid& P = theta.source();
    const AffineMonoid& M = theta.target();
    if (group_kernel_rank(theta) != 0) return false;
    std::vector<IntVec> image, rest;
    for (std::size_t j = 0; j < theta.group_map().cols(); ++j) image.push_back(theta.group_map().column(j));
    const IntMatrix A = theta.group_map();
    for (const auto& v : M.generators()) {
        IntVec y = *M.to_group(v);
        auto x = A.cols() ? solve_integer(A, y) : std::optional<IntVec>{};
        if (x && P.contains(P.from_group(*x))) continue;
        rest.push_back(y);
    }
    auto rest_basis = lattice_basis(rest, M.rank());
    if (image.size() + rest_basis.size() != M.rank()) return false;
    std::vector<IntVec> all = image;
    all.insert(all.end(), rest_basis.begin(), rest_basis.end());
    if (all.empty()) return true;
    return cokernel_structure(IntMatrix::from_columns(all, M.rank())).is_zero();
}

bool is_free_rank_one(const AffineMonoid& P) {
    if (P.rank() != 1 || !P.is_sharp() || P.generators().empty()) return false;
    std::vector<std::int64_t> a;
    for (const auto& g : P.generators()) a.push_back((*P.to_group(g))[0]);
    std::int64_t g = 0, lo = a[0];
    for (auto v : a) {
        g = std::gcd(g, v);
        lo = std::min(lo, std::abs(v));
    }
    return g == lo;
}

bool is_free(const AffineMonoid& P) { return P.is_sharp() && P.generators().size() == P.rank(); }

// N^r -> N^s sending each basis vector to a positive multiple of a distinct basis vector: a product of maps out of N.
bool is_monomial_between_free(const MonoidHom& theta) {
    const AffineMonoid &P = theta.source(), &M = theta.target();
    if (!is_free(P) || !is_free(M)) return false;
    std::vector<bool> used(M.generators().size(), false);
    for (const auto& g : P.generators()) {
        const IntVec y = theta.apply(g);
        bool hit = false;
        for (std::size_t j = 0; j < M.generators().size() && !hit; ++j) {
            const IntVec& h = M.generators()[j];
            std::size_t i = 0;
            while (i < h.size() && h[i] == 0) ++i;
            if (used[j] || i == h.size() || y[i] % h[i] != 0 || y[i] / h[i] <= 0) continue;
            if (scale(h, y[i] / h[i]) == y) used[j] = hit = true;
        }
        if (!hit) return false;
    }
    return true;
}

}  // namespace

TriState is_integral(const MonoidHom& theta, std::int64_t box) {
    const AffineMonoid& P = theta.source();
    const AffineMonoid& M = theta.target();
    if (P.generators().empty()) return TriState::yes("trivial source");
    if (P.rank() == M.rank() && is_direct_summand(theta)) return TriState::yes("isomorphism");
    if (is_free_rank_one(P) && group_kernel_rank(theta) == 0)
        return TriState::yes("source is N and the map is injective, so the monoid algebra is torsion-free over k[t]");
    if (is_direct_summand(theta)) return TriState::yes("source is a direct summand of the target");
    if (is_monomial_between_free(theta))
        return TriState::yes("free source and target with each generator sent to a multiple of its own target generator");

    if (P.is_sharp() && M.is_sharp()) {
        bool nonzero = true;
        for (const auto& g : P.generators()) nonzero = nonzero && !is_zero(theta.apply(g));
        if (nonzero) {
            auto degrees = degree_box(M, box);
            auto tor = graded_tor(theta, {}, Coefficients::rationals(), 1, degrees);
            for (const auto& m : degrees)
                if (!tor.at(1, m).is_zero())
                    return TriState::no("Tor_1 over the source algebra is nonzero at degree " + vec_str(m) +
                                        ", so the monoid algebra map is not flat");
        }
    }
    return TriState::unknown(box, "no certificate and no Tor_1 witness in the degree box");
}

}  // namespace loghh
