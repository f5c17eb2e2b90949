#include "loghh/prelog.hpp"
#include "../src/global/cech.hpp"

#include <doctest.h>

using namespace loghh;

namespace {

const Coefficients kZ = Coefficients::integers(), kQ = Coefficients::rationals(), kF2 = Coefficients::prime_field(2);
const AffineMonoid N1 = AffineMonoid::free_monoid(1), N2 = AffineMonoid::free_monoid(2);
AffineMonoid index_two() { return AffineMonoid(2, {{2, 0}, {1, 1}, {0, 2}}); }
MonoidHom hom(const AffineMonoid& P, const AffineMonoid& M, const std::vector<IntVec>& rows) {
    return MonoidHom(P, M, IntMatrix::from_rows(rows, P.ambient_rank()));
}

std::vector<IntVec> box2(std::int64_t r) {
    std::vector<IntVec> out;
    for (std::int64_t a = 0; a <= r; ++a)
        for (std::int64_t b = 0; b <= r; ++b) out.push_back({a, b});
    return out;
}

}  // namespace

TEST_SUITE("prelog") {
    TEST_CASE("free pre-log algebras") {
        FreePrelog x = free_prelog(PreLogRing::point(kZ), {"x"}, {});
        CHECK(x.ring.rank() == 1);
        CHECK(x.ring.is_canonical());
        FreePrelog none = free_prelog(PreLogRing::point(kZ), {}, {});
        CHECK(none.ring.rank() == 0);
        FreePrelog xy = free_prelog(PreLogRing::point(kZ), {"x"}, {"y"});
        CHECK(xy.ring.rank() == 2);
        CHECK(xy.ring.prelog_monoid.rank() == 1);
        CHECK(xy.x_coords == std::vector<std::size_t>{0});
        CHECK(xy.y_coords == std::vector<std::size_t>{1});
    }

    TEST_CASE("log Kahler differentials") {
        PresentedModule line = kahler_differentials(PreLogMap::over_point(PreLogRing::canonical(N1, kQ)), {{0}, {1}, {2}, {5}});
        for (const auto& [m, M] : line.graded) CHECK(M == FgAbGroup::free(1));

        FreePrelog F = free_prelog(PreLogRing::point(kZ), {"x"}, {"y"});
        PresentedModule f = kahler_differentials(F.unit, box2(3));
        for (const auto& [m, M] : f.graded) CHECK(M == FgAbGroup::free(m[1] >= 1 ? 2 : 1));

        PresentedModule id = kahler_differentials(PreLogMap::identity(PreLogRing::canonical(N2, kQ)), box2(2));
        for (const auto& [m, M] : id.graded) CHECK(M.is_zero());
    }

    TEST_CASE("log cotangent complex") {
        PreLogMap f = PreLogMap::canonical(hom(index_two(), N2, {{1, 0}, {0, 1}}), kQ);
        CHECK(cotangent_pi(f, 0).fiber.is_zero());
        CHECK(cotangent_pi(f, 1).fiber.is_zero());
        PreLogMap f2 = PreLogMap::canonical(hom(index_two(), N2, {{1, 0}, {0, 1}}), kF2);
        CHECK(cotangent_pi(f2, 0).fiber == FgAbGroup::free(1));
        CHECK(cotangent_pi(f2, 1).fiber == FgAbGroup::free(1));
        PreLogMap line = PreLogMap::over_point(PreLogRing::canonical(N1, kQ));
        CHECK(cotangent_pi(line, 0).fiber == FgAbGroup::free(1));
        CHECK(cotangent_pi(line, 1).fiber.is_zero());
    }

    TEST_CASE("classification") {
        MapClassification k3 = classify_map(PreLogMap::canonical(hom(N1, N1, {{3}}), kQ));
        CHECK(k3.log_etale);
        CHECK(k3.kummer);
        CHECK(k3.integral.is_yes());
        CHECK(k3.derived_log_etale);

        MapClassification i2 = classify_map(PreLogMap::canonical(hom(index_two(), N2, {{1, 0}, {0, 1}}), kQ));
        CHECK(i2.log_etale);
        CHECK(i2.integral.is_no());
        CHECK(i2.derived_log_etale);
        CHECK(i2.cokernel == FgAbGroup{0, {2}});

        MapClassification i2f = classify_map(PreLogMap::canonical(hom(index_two(), N2, {{1, 0}, {0, 1}}), kF2));
        CHECK_FALSE(i2f.derived_log_etale);

        MapClassification id = classify_map(PreLogMap::identity(PreLogRing::canonical(N2, kQ)));
        CHECK(id.strict);
        CHECK(id.log_smooth);
        CHECK(id.log_etale);
        CHECK(id.derived_log_smooth);
        CHECK(id.derived_log_etale);

        MapClassification line = classify_map(PreLogMap::over_point(PreLogRing::canonical(N1, kQ)));
        CHECK(line.log_smooth);
        CHECK_FALSE(line.log_etale);
    }

    TEST_CASE("transitivity sequences") {
        const AffineMonoid T = AffineMonoid::trivial(0);
        PreLogMap id = PreLogMap::identity(PreLogRing::canonical(N1, kQ));
        CHECK(transitivity_check(id, id, 1).passed());
        PreLogMap a = PreLogMap::canonical(MonoidHom(T, N1, IntMatrix(1, 0)), kQ);
        PreLogMap b = PreLogMap::canonical(hom(N1, N2, {{1}, {1}}), kQ);
        CHECK(transitivity_check(a, b, 1).passed());
        PreLogMap k2 = PreLogMap::canonical(hom(N1, N1, {{2}}), kQ), k3 = PreLogMap::canonical(hom(N1, N1, {{3}}), kQ);
        CHECK(transitivity_check(k2, k3, 1).passed());
    }

    TEST_CASE("presentation embedding matches the chart forms") {
        const std::vector<PreLogRing> rings = {PreLogRing::canonical(N1, kQ), PreLogRing::canonical(N2, kQ),
                                               PreLogRing::trivial_log(N2, kQ),
                                               PreLogRing(kQ, N2, {}, N1, IntMatrix::from_rows({{1}, {0}}, 1)),
                                               PreLogRing::canonical(AffineMonoid(2, {{1, 0}, {0, 1}, {0, -1}}), kQ)};
        for (const auto& A : rings) {
            PreLogMap f = PreLogMap::over_point(A);
            KahlerPresentation P(f);
            detail::PieceForms F(f);
            for (std::size_t q = 0; q <= 2; ++q)
                for (const auto& m : box2(2)) {
                    IntVec mm(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(A.rank()));
                    if (!A.has_monomial(mm)) continue;
                    IntMatrix E = P.embedding(P.piece(mm, q), q);
                    IntMatrix B = F.basis(q, mm);
                    const std::size_t re = rank_over(E, kQ), rb = rank_over(B, kQ);
                    CHECK_MESSAGE(re == rb, (A.to_string() + " q=" + std::to_string(q) + " m=" + vec_str(mm)));
                    CHECK(P.dimension(mm, q) == FgAbGroup::free(rb));
                    if (E.cols() && B.cols()) CHECK(rank_over(E.hstack(B), kQ) == rb);
                }
        }
    }
}
