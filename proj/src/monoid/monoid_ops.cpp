#include "loghh/monoid.hpp"

#include <algorithm>

namespace loghh {

GroupCompletion group_completion(const AffineMonoid& M) {
    GroupCompletion g;
    g.group = FgAbGroup::free(M.rank());
    g.basis = M.group_basis();
    g.index_in_saturation = M.index_in_saturation();
    g.units = M.unit_basis();
    g.splits = M.splits();
    if (g.splits) {
        g.sharp = M.sharp_part();
    } else {
        // keep only the free coordinates of M^gp / U
        std::size_t f = M.rank() - M.unit_basis().size();
        std::vector<IntVec> gens;
        LatticeQuotient q(
            [&] {
                std::vector<IntVec> u;
                for (const auto& v : M.unit_basis()) u.push_back(*M.to_group(v));
                return u;
            }(),
            M.rank());
        for (const auto& x : M.nonunit_generators()) {
            IntVec c = q.reduce(*M.to_group(x));
            gens.push_back(IntVec(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(f)));
        }
        g.sharp = AffineMonoid(f, gens);
    }
    return g;
}

bool is_saturated(const AffineMonoid& M) {
    if (M.rank() > 4) throw ScaleError("is_saturated: rank " + std::to_string(M.rank()) + " exceeds 4");
    for (const auto& y : cone_lattice_generators(M.facets(), M.rank()))
        if (!M.contains(M.from_group(y))) return false;
    return true;
}

TriState is_exact(const MonoidHom& theta, std::int64_t box) {
    const AffineMonoid& N = theta.source();
    const AffineMonoid& M = theta.target();
    bool target_saturated = false;
    try {
        target_saturated = is_saturated(M);
    } catch (const ScaleError&) {
        target_saturated = false;
    }
    const std::size_t r = N.rank();
    if (target_saturated) {
        std::vector<IntVec> ineqs;
        const IntMatrix& T = theta.group_map();
        for (const auto& f : M.facets()) {
            IntVec row(r, 0);
            for (std::size_t j = 0; j < r; ++j) {
                Int s = 0;
                for (std::size_t i = 0; i < f.size(); ++i) s += static_cast<long>(f[i]) * T(i, j);
                row[j] = to_i64(s);
            }
            ineqs.push_back(row);
        }
        for (const auto& y : cone_lattice_generators(ineqs, r)) {
            IntVec x = N.from_group(y);
            if (!N.contains(x)) return TriState::no("preimage generator " + vec_str(x) + " lies outside the source");
        }
        return TriState::yes("preimage monoid of the saturated target equals the source");
    }
    // bounded search for a witness x in N^gp with theta(x) in M, x not in N
    IntVec y(r, -box);
    if (r == 0) return TriState::yes("source group is trivial");
    for (;;) {
        IntVec x = N.from_group(y);
        try {
            if (M.contains(theta.apply(x)) && !N.contains(x))
                return TriState::no("witness " + vec_str(x) + " maps into the target but lies outside the source");
        } catch (const Inconclusive&) {
        }
        std::size_t i = 0;
        while (i < r && y[i] == box) y[i++] = -box;
        if (i == r) break;
        ++y[i];
    }
    return TriState::unknown(box, "no witness in the search box; target not known to be saturated");
}

IntVec AmalgamatedSum::from_first(const IntVec& m) const {
    auto y = first.to_group(m);
    if (!y) throw PreconditionError("element outside the first summand's group");
    IntVec full(first_rank + second_rank, 0);
    std::copy(y->begin(), y->end(), full.begin());
    IntVec c = quotient.reduce(full);
    return IntVec(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(quotient.group().free_rank));
}

IntVec AmalgamatedSum::from_second(const IntVec& n) const {
    auto y = second.to_group(n);
    if (!y) throw PreconditionError("element outside the second summand's group");
    IntVec full(first_rank + second_rank, 0);
    std::copy(y->begin(), y->end(), full.begin() + static_cast<std::ptrdiff_t>(first_rank));
    IntVec c = quotient.reduce(full);
    return IntVec(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(quotient.group().free_rank));
}

AmalgamatedSum amalgamated_sum(const MonoidHom& theta, const MonoidHom& phi) {
    if (!(theta.source() == phi.source())) throw PreconditionError("amalgamated_sum: maps have different sources");
    AmalgamatedSum s;
    s.first = theta.target();
    s.second = phi.target();
    s.first_rank = s.first.rank();
    s.second_rank = s.second.rank();
    const std::size_t rp = theta.source().rank();
    std::vector<IntVec> rel;
    for (std::size_t j = 0; j < rp; ++j) {
        IntVec v(s.first_rank + s.second_rank, 0);
        for (std::size_t i = 0; i < s.first_rank; ++i) v[i] = to_i64(theta.group_map()(i, j));
        for (std::size_t i = 0; i < s.second_rank; ++i) v[s.first_rank + i] = -to_i64(phi.group_map()(i, j));
        rel.push_back(v);
    }
    s.quotient = LatticeQuotient(rel, s.first_rank + s.second_rank);
    s.pushout_group = s.quotient.group();
    if (!s.pushout_group.torsion.empty())
        throw Unsupported("pushout group " + s.pushout_group.to_string() + " has torsion; no lattice embedding");
    std::vector<IntVec> gens;
    for (const auto& g : s.first.generators()) gens.push_back(s.from_first(g));
    for (const auto& g : s.second.generators()) gens.push_back(s.from_second(g));
    s.monoid = AffineMonoid(s.pushout_group.free_rank, gens);
    s.caveat = !(is_integral(theta).is_yes() && is_integral(phi).is_yes());
    return s;
}

FgAbGroup group_cokernel(const MonoidHom& theta) { return cokernel_structure(theta.group_map()); }

std::size_t group_kernel_rank(const MonoidHom& theta) {
    return theta.source().rank() - rank_over(theta.group_map(), Coefficients::rationals());
}

}  // namespace loghh
