#include "loghh/repletion.hpp"

#include <doctest.h>

#include <random>

using namespace loghh;

namespace {

AffineMonoid index_two() { return AffineMonoid(2, {{2, 0}, {1, 1}, {0, 2}}); }
MonoidHom hom(const AffineMonoid& P, const AffineMonoid& M, const std::vector<IntVec>& rows) {
    return MonoidHom(P, M, rows.empty() ? IntMatrix(M.ambient_rank(), P.ambient_rank()) : IntMatrix::from_rows(rows, P.ambient_rank()));
}
const AffineMonoid T = AffineMonoid::trivial(0), N1 = AffineMonoid::free_monoid(1), N2 = AffineMonoid::free_monoid(2);

// Units and sharp rank of a monoid, as a cheap isomorphism invariant.
std::pair<std::size_t, std::size_t> shape(const AffineMonoid& M) { return {M.unit_basis().size(), M.rank() - M.unit_basis().size()}; }

}  // namespace

TEST_SUITE("repletion") {
    TEST_CASE("exactification examples") {
        Repletion id = exactify(MonoidHom::identity(N2));
        CHECK(shape(id.replete_monoid) == std::pair<std::size_t, std::size_t>{0, 2});

        Repletion add = exactify(hom(N2, N1, {{1, 1}}));
        CHECK(add.virtually_surjective);
        CHECK(shape(add.replete_monoid) == std::pair<std::size_t, std::size_t>{1, 1});
        // (m, n) lies in N^rep iff m + n >= 0
        CHECK(add.contains({3, -2}));
        CHECK_FALSE(add.contains({-2, 1}));

        Repletion incl = exactify(hom(index_two(), N2, {{1, 0}, {0, 1}}));
        CHECK(shape(incl.replete_monoid) == std::pair<std::size_t, std::size_t>{0, 2});
        CHECK(incl.replete_monoid.generators().size() == 3);

        CHECK_THROWS_AS(exactify(hom(N1, AffineMonoid(1, {{2}, {3}}), {{2}})), Inconclusive);
    }

    TEST_CASE("addition map unit is (m, n) -> (m + n, n)") {
        RepleteSplit sp = replete_split(hom(N2, N1, {{1, 1}}), hom(N1, N2, {{1}, {0}}));
        CHECK(sp.quotient.group() == FgAbGroup::free(1));
        for (std::int64_t m = 0; m <= 3; ++m)
            for (std::int64_t n = 0; n <= 3; ++n) {
                auto [mm, code] = sp.forward(sp.repletion.unit({m, n}));
                CHECK(mm == IntVec{m + n});
                CHECK(code == IntVec{n});
            }
    }

    TEST_CASE("split examples") {
        // fold N + N -> N along the first inclusion: N + Z
        RepleteSplit fold = replete_split(hom(N2, N1, {{1, 1}}), hom(N1, N2, {{1}, {0}}));
        CHECK(fold.quotient.group() == FgAbGroup::free(1));
        // trivial target: N^rep = N^gp
        RepleteSplit triv = replete_split(hom(N2, T, {}), hom(T, N2, {{}, {}}));
        CHECK(triv.quotient.group() == FgAbGroup::free(2));
        CHECK(shape(triv.repletion.replete_monoid) == std::pair<std::size_t, std::size_t>{2, 0});
        // fold N^2 + N^2 -> N^2: N^2 + Z^2
        AffineMonoid N4 = AffineMonoid::free_monoid(4);
        RepleteSplit f2 = replete_split(hom(N4, N2, {{1, 0, 1, 0}, {0, 1, 0, 1}}), hom(N2, N4, {{1, 0}, {0, 1}, {0, 0}, {0, 0}}));
        CHECK(f2.quotient.group() == FgAbGroup::free(2));
    }

    TEST_CASE("replete diagonal") {
        RepleteDiagonal a = replete_diagonal(hom(T, N1, {{}}));
        CHECK(a.split.quotient.group() == FgAbGroup::free(1));
        RepleteDiagonal b = replete_diagonal(MonoidHom::identity(N1));
        CHECK(b.split.quotient.group().is_zero());
        RepleteDiagonal c = replete_diagonal(hom(N1, N2, {{1}, {1}}));
        CHECK(c.split.quotient.group() == FgAbGroup::free(1));
        // N^2 +_P N^2 has torsion in its group, so it has no lattice model
        CHECK_THROWS(replete_diagonal(hom(index_two(), N2, {{1, 0}, {0, 1}})));
    }

    TEST_CASE("split check on the paper's shapes") {
        CHECK(split_check(hom(N2, N1, {{1, 1}}), hom(N1, N2, {{1}, {0}}), 50, 1).passed());
        CHECK(split_check(MonoidHom::identity(N2), MonoidHom::identity(N2), 20, 1).passed());
        CHECK(split_check(hom(N2, T, {}), hom(T, N2, {{}, {}}), 30, 2).passed());
    }

    TEST_CASE("replete bar levels") {
        RepleteBarLevel l0 = replete_bar_level(hom(T, N1, {{}}), 0);
        CHECK(l0.group() == FgAbGroup::free(1));
        RepleteBarLevel l1 = replete_bar_level(hom(T, N1, {{}}), 1);
        RepleteBarLevel::Element x{{4}, {{-3}}};
        CHECK(l1.face(x, 0).m == IntVec{4});
        CHECK(l1.face(x, 1).m == IntVec{4});
        CHECK(l1.face(x, 0).g.empty());
        RepleteBarLevel l2 = replete_bar_level(hom(index_two(), N2, {{1, 0}, {0, 1}}), 2);
        CHECK(l2.group() == FgAbGroup{0, {2}});
    }

    TEST_CASE("replete bar levels satisfy the simplicial identities") {
        std::mt19937_64 rng(17);
        const std::vector<MonoidHom> maps = {hom(T, N1, {{}}), hom(index_two(), N2, {{1, 0}, {0, 1}}), hom(N1, N2, {{1}, {1}}),
                                             hom(N1, N1, {{3}})};
        for (const auto& theta : maps)
            for (std::size_t q = 1; q <= 3; ++q) {
                RepleteBarLevel Lq(theta, q), Lq1(theta, q - 1), Lup(theta, q + 1);
                const LatticeQuotient& G = Lq.quotient();
                auto element = [&](std::size_t level) {
                    RepleteBarLevel::Element e;
                    e.m = IntVec(theta.target().ambient_rank(), 0);
                    for (const auto& g : theta.target().generators()) e.m = add(e.m, scale(g, static_cast<std::int64_t>(rng() % 3)));
                    for (std::size_t j = 0; j < level; ++j) {
                        IntVec c(theta.target().rank());
                        for (auto& x : c) x = static_cast<std::int64_t>(rng() % 7) - 3;
                        e.g.push_back(G.reduce(c));
                    }
                    return e;
                };
                for (int s = 0; s < 10; ++s) {
                    auto x = element(q);
                    // d_i d_j = d_{j-1} d_i for i < j
                    for (std::size_t j = 1; q >= 2 && j <= q; ++j)
                        for (std::size_t i = 0; i < j; ++i)
                            CHECK(Lq1.face(Lq.face(x, j), i) == Lq1.face(Lq.face(x, i), j - 1));
                    // d_i s_i = d_{i+1} s_i = id
                    for (std::size_t i = 0; i <= q; ++i) {
                        auto y = Lq.degeneracy(x, i);
                        CHECK(Lup.face(y, i) == x);
                        CHECK(Lup.face(y, i + 1) == x);
                    }
                    // the pullback description is inverse to the split description
                    auto tuple = Lq.to_pullback(x);
                    CHECK(Lq.from_pullback(x.m, tuple) == x);
                }
            }
    }

    TEST_CASE("bar isomorphism verification") {
        CHECK(verify_bar_iso(MonoidHom::identity(N2), 3, 10).passed());
        CHECK(verify_bar_iso(hom(T, N1, {{}}), 4, 10).passed());
        CHECK(verify_bar_iso(hom(index_two(), N2, {{1, 0}, {0, 1}}), 3, 10).passed());
    }
}
