#include "loghh/monoid.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace loghh;

namespace {

AffineMonoid index_two() { return AffineMonoid(2, {{2, 0}, {1, 1}, {0, 2}}); }
MonoidHom hom(const AffineMonoid& P, const AffineMonoid& M, const std::vector<IntVec>& rows) {
    return MonoidHom(P, M, IntMatrix::from_rows(rows, P.ambient_rank()));
}

std::vector<IntVec> oracle_box(std::size_t d) {
    std::vector<IntVec> out{IntVec(d, 0)};
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<IntVec> next;
        for (const auto& v : out)
            for (std::int64_t x = -2; x <= 5; ++x) {
                IntVec w = v;
                w[i] = x;
                next.push_back(w);
            }
        out = next;
    }
    return out;
}

}  // namespace

TEST_SUITE("monoid") {
    TEST_CASE("membership examples") {
        AffineMonoid M = index_two();
        CHECK(M.contains({1, 1}));
        CHECK_FALSE(M.contains({1, 0}));
        CHECK(M.contains({2, 2}));
    }

    TEST_CASE("membership agrees with brute-force enumeration") {
        const std::vector<AffineMonoid> monoids = {index_two(), AffineMonoid(1, {{2}, {3}}), AffineMonoid(2, {{1, 0}, {1, 1}, {1, 2}}),
                                                   AffineMonoid(2, {{3, 0}, {1, 1}, {0, 1}}), AffineMonoid(2, {{1, 2}, {2, 1}})};
        for (const auto& M : monoids)
            for (const auto& v : oracle_box(M.ambient_rank()))
                CHECK_MESSAGE(M.contains(v) == oracle::in_span(M.generators(), v, 6), (M.to_string() + " at " + vec_str(v)));
    }

    TEST_CASE("group completion") {
        GroupCompletion n2 = group_completion(AffineMonoid::free_monoid(2));
        CHECK(n2.group == FgAbGroup::free(2));
        CHECK(n2.units.empty());
        GroupCompletion i2 = group_completion(index_two());
        CHECK(i2.group == FgAbGroup::free(2));
        CHECK(i2.index_in_saturation == 2);
        CHECK(index_two().in_group({1, 1}));
        CHECK_FALSE(index_two().in_group({1, 0}));
        GroupCompletion z = group_completion(AffineMonoid::lattice(1));
        CHECK(z.units.size() == 1);
        CHECK(z.sharp.rank() == 0);
    }

    TEST_CASE("hilbert basis examples") {
        auto sorted = [](std::vector<IntVec> v) {
            std::sort(v.begin(), v.end());
            return v;
        };
        CHECK(sorted(hilbert_basis({{1, 0}, {0, 1}}, 2)) == std::vector<IntVec>{{0, 1}, {1, 0}});
        CHECK(sorted(hilbert_basis({{1, 0}, {1, 2}}, 2)) == std::vector<IntVec>{{1, 0}, {1, 1}, {1, 2}});
        CHECK(sorted(hilbert_basis({{0, 1}, {2, -1}}, 2)) == std::vector<IntVec>{{0, 1}, {1, 0}, {2, -1}});
        CHECK_THROWS_AS(hilbert_basis({{1, 0, 0, 0, 0}}, 5), ScaleError);
    }

    TEST_CASE("hilbert basis against brute-force irreducibles") {
        std::mt19937_64 rng(13);
        std::uniform_int_distribution<int> d(-4, 4);
        int compared = 0;
        while (compared < 30) {
            IntVec r1 = primitive({d(rng), d(rng)}), r2 = primitive({d(rng), d(rng)});
            if (r1[0] * r2[1] - r1[1] * r2[0] == 0) continue;
            auto hb = hilbert_basis({r1, r2}, 2);
            std::sort(hb.begin(), hb.end());
            CHECK(hb == oracle::irreducibles_2d(r1, r2, 9));
            ++compared;
        }
    }

    TEST_CASE("saturation") {
        CHECK(is_saturated(AffineMonoid::free_monoid(2)));
        CHECK_FALSE(is_saturated(AffineMonoid(1, {{2}, {3}})));
        CHECK(is_saturated(index_two()));
    }

    TEST_CASE("exactness") {
        AffineMonoid N1 = AffineMonoid::free_monoid(1), N2 = AffineMonoid::free_monoid(2);
        CHECK(is_exact(MonoidHom::identity(N2)).is_yes());
        CHECK(is_exact(hom(index_two(), N2, {{1, 0}, {0, 1}})).is_yes());
        CHECK(is_exact(hom(N1, N2, {{1}, {1}})).is_yes());
        // N -> Z is not exact: the preimage of N in Z is N, but -1 maps outside
        CHECK(is_exact(hom(N1, AffineMonoid::lattice(1), {{1}})).is_no());
    }

    TEST_CASE("integrality") {
        AffineMonoid N1 = AffineMonoid::free_monoid(1), N2 = AffineMonoid::free_monoid(2);
        for (std::int64_t n : {2, 3, 5}) CHECK(is_integral(hom(N1, N1, {{n}})).is_yes());
        CHECK(is_integral(MonoidHom::identity(N2)).is_yes());
        TriState t = is_integral(hom(index_two(), N2, {{1, 0}, {0, 1}}));
        CHECK(t.is_no());
        CHECK((t.evidence.find("(2,1)") != std::string::npos || t.evidence.find("(1,2)") != std::string::npos));
    }

    TEST_CASE("amalgamated sums") {
        AffineMonoid T = AffineMonoid::trivial(0), N1 = AffineMonoid::free_monoid(1), N2 = AffineMonoid::free_monoid(2);
        MonoidHom t1(T, N1, IntMatrix(1, 0));
        AmalgamatedSum s = amalgamated_sum(t1, t1);
        CHECK(s.monoid.rank() == 2);
        CHECK(s.monoid.generators().size() == 2);
        CHECK(is_saturated(s.monoid));

        AmalgamatedSum fold = amalgamated_sum(MonoidHom::identity(N1), MonoidHom::identity(N1));
        CHECK(fold.monoid.rank() == 1);
        CHECK(fold.from_first({3}) == fold.from_second({3}));

        MonoidHom diag = hom(N1, N2, {{1}, {1}});
        AmalgamatedSum d = amalgamated_sum(diag, diag);
        CHECK(d.monoid.rank() == 3);
        CHECK(d.monoid.generators().size() == 4);
        CHECK(d.pushout_group == FgAbGroup::free(3));
        // e1 + e2 = f1 + f2
        CHECK(add(d.from_first({1, 0}), d.from_first({0, 1})) == add(d.from_second({1, 0}), d.from_second({0, 1})));
        CHECK(d.from_first({1, 0}) != d.from_second({1, 0}));
    }

    TEST_CASE("group cokernel and kernel") {
        AffineMonoid N1 = AffineMonoid::free_monoid(1), N2 = AffineMonoid::free_monoid(2);
        CHECK(group_cokernel(hom(index_two(), N2, {{1, 0}, {0, 1}})) == FgAbGroup{0, {2}});
        CHECK(group_cokernel(hom(N1, N2, {{1}, {1}})) == FgAbGroup::free(1));
        CHECK(group_kernel_rank(hom(N2, N1, {{1, 1}})) == 1);
    }

    TEST_CASE("homomorphisms are validated") {
        AffineMonoid N1 = AffineMonoid::free_monoid(1);
        CHECK_THROWS(MonoidHom(N1, N1, IntMatrix::from_rows({{-1}}, 1)));
        CHECK_THROWS(MonoidHom(N1, AffineMonoid::free_monoid(2), IntMatrix::from_rows({{1}}, 1)));
    }
}
