#include "loghh/bar.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace loghh;

namespace {

const Coefficients kZ = Coefficients::integers(), kQ = Coefficients::rationals();
const AffineMonoid T = AffineMonoid::trivial(0), N1 = AffineMonoid::free_monoid(1), N2 = AffineMonoid::free_monoid(2);
AffineMonoid index_two() { return AffineMonoid(2, {{2, 0}, {1, 1}, {0, 2}}); }
AffineMonoid cusp() { return AffineMonoid(1, {{2}, {3}}); }
MonoidHom hom(const AffineMonoid& P, const AffineMonoid& M, const std::vector<IntVec>& rows) {
    return MonoidHom(P, M, rows.empty() ? IntMatrix(M.ambient_rank(), P.ambient_rank()) : IntMatrix::from_rows(rows, P.ambient_rank()));
}
std::vector<IntVec> line(std::int64_t lo, std::int64_t hi) {
    std::vector<IntVec> out;
    for (std::int64_t j = lo; j <= hi; ++j) out.push_back({j});
    return out;
}

}  // namespace

TEST_SUITE("bar") {
    TEST_CASE("cyclic bar homology") {
        HomotopyTable t = cyclic_bar_homology(hom(T, N1, {{}}), kQ, 2, line(0, 5));
        for (std::int64_t m = 0; m <= 5; ++m) {
            CHECK(t.at(0, {m}) == FgAbGroup::free(1));
            CHECK(t.at(1, {m}) == FgAbGroup::free(m >= 1 ? 1 : 0));
            CHECK(t.at(2, {m}).is_zero());
        }
        HomotopyTable pt = cyclic_bar_homology(MonoidHom::identity(T), kQ, 2, {IntVec{}});
        CHECK(pt.at(0, {}) == FgAbGroup::free(1));
        CHECK(pt.at(1, {}).is_zero());
        HomotopyTable z = cyclic_bar_homology(hom(T, AffineMonoid::lattice(1), {{}}), kQ, 2, line(-2, 2));
        for (std::int64_t m = -2; m <= 2; ++m) {
            CHECK(z.at(0, {m}) == FgAbGroup::free(1));
            CHECK(z.at(1, {m}) == FgAbGroup::free(1));
            CHECK(z.at(2, {m}).is_zero());
        }
        CHECK_THROWS(t.at(0, {9}));
    }

    TEST_CASE("cyclic bar complexes square to zero") {
        const std::vector<std::pair<MonoidHom, std::vector<IntVec>>> cases = {
            {hom(T, N1, {{}}), line(0, 4)}, {hom(T, cusp(), {{}}), line(0, 6)}, {hom(T, N2, {}), degree_box(N2, 2)},
            {hom(index_two(), N2, {{1, 0}, {0, 1}}), degree_box(N2, 2)}};
        for (const auto& [theta, degrees] : cases) {
            GradedComplex c = cyclic_bar_complex(theta, {}, kZ, 4, degrees);
            for (const auto& piece : c.pieces)
                for (std::size_t i = 0; i + 1 < piece.d.size(); ++i) CHECK(composite_is_zero(piece.d[i], piece.d[i + 1]));
        }
    }

    TEST_CASE("replete bar closed form") {
        HomotopyTable x = replete_bar_homology(hom(T, N1, {{}}), kZ, 3, line(0, 4));
        for (std::int64_t m = 0; m <= 4; ++m) {
            CHECK(x.at(0, {m}) == FgAbGroup::free(1));
            CHECK(x.at(1, {m}) == FgAbGroup::free(1));
            CHECK(x.at(2, {m}).is_zero());
        }
        HomotopyTable i2 = replete_bar_homology(hom(index_two(), N2, {{1, 0}, {0, 1}}), kQ, 2, degree_box(N2, 2));
        for (const auto& m : degree_box(N2, 2)) {
            CHECK(i2.at(1, m).is_zero());
            CHECK(i2.at(2, m).is_zero());
        }
        HomotopyTable i2z = replete_bar_homology(hom(index_two(), N2, {{1, 0}, {0, 1}}), kZ, 2, {{1, 0}});
        CHECK(i2z.at(1, {1, 0}) == FgAbGroup{0, {2}});
    }

    TEST_CASE("replete bar: Moore complex against closed form") {
        const std::vector<MonoidHom> maps = {hom(T, N1, {{}}), hom(index_two(), N2, {{1, 0}, {0, 1}}), hom(N1, N1, {{3}}),
                                             hom(N1, N2, {{1}, {1}}), hom(T, cusp(), {{}}), MonoidHom::identity(N2)};
        for (const auto& theta : maps)
            for (const auto& k : {kZ, kQ, Coefficients::prime_field(2), Coefficients::prime_field(3)}) {
                auto degrees = degree_box(theta.target(), 2);
                CHECK(replete_bar_moore(theta, k, 3, degrees) == replete_bar_homology(theta, k, 3, degrees));
            }
    }

    TEST_CASE("Hochschild homology") {
        HomotopyTable t = hochschild_homology(PreLogMap::over_point(PreLogRing::trivial_log(N1, kQ)), 2, line(0, 4));
        for (std::int64_t m = 0; m <= 4; ++m) {
            CHECK(t.at(0, {m}) == FgAbGroup::free(1));
            CHECK(t.at(1, {m}) == FgAbGroup::free(m >= 1 ? 1 : 0));
            CHECK(t.at(2, {m}).is_zero());
        }
        HomotopyTable pt = hochschild_homology(PreLogMap::identity(PreLogRing::point(kQ)), 2, {IntVec{}});
        CHECK(pt.at(0, {}) == FgAbGroup::free(1));
        CHECK(pt.at(1, {}).is_zero());
        HomotopyTable xy = hochschild_homology(PreLogMap::over_point(PreLogRing::trivial_log(N2, kQ)), 2, degree_box(N2, 2));
        for (const auto& m : degree_box(N2, 2)) {
            const std::size_t support = (m[0] > 0) + (m[1] > 0);
            for (std::size_t q = 0; q <= 2; ++q) CHECK(xy.at(q, m) == FgAbGroup::free(oracle::binomial(support, q)));
        }
    }

    TEST_CASE("logarithmic Hochschild homology") {
        HomotopyTable t = loghh_homology(PreLogMap::over_point(PreLogRing::canonical(N1, kQ)), 2, line(0, 4));
        for (std::int64_t m = 0; m <= 4; ++m) {
            CHECK(t.at(0, {m}) == FgAbGroup::free(1));
            CHECK(t.at(1, {m}) == FgAbGroup::free(1));
            CHECK(t.at(2, {m}).is_zero());
        }
        PreLogMap f = PreLogMap::canonical(hom(index_two(), N2, {{1, 0}, {0, 1}}), kQ);
        HomotopyTable e = loghh_homology(f, 2, degree_box(N2, 2));
        for (const auto& m : degree_box(N2, 2)) {
            CHECK(e.at(0, m) == FgAbGroup::free(1));
            CHECK(e.at(1, m).is_zero());
            CHECK(e.at(2, m).is_zero());
        }
        FreePrelog F = free_prelog(PreLogRing::point(kZ), {"x"}, {"y"});
        HomotopyTable ff = loghh_homology(F.unit, 2, degree_box(F.ring.ring_monoid, 2));
        for (const auto& m : degree_box(F.ring.ring_monoid, 2)) {
            const std::size_t dirs = 1 + (m[1] > 0);
            for (std::size_t q = 0; q <= 2; ++q) CHECK(ff.at(q, m) == FgAbGroup::free(oracle::binomial(dirs, q)));
        }
    }

    TEST_CASE("enumerated pushout model against the closed form") {
        const std::vector<PreLogRing> rings = {PreLogRing::canonical(N1, kQ), PreLogRing::trivial_log(N1, kQ),
                                               PreLogRing::canonical(cusp(), kQ), PreLogRing::trivial_log(cusp(), kQ),
                                               PreLogRing(kQ, N2, {}, N1, IntMatrix::from_rows({{1}, {0}}, 1)),
                                               PreLogRing(kQ, N1, {{3}}, N1, IntMatrix::from_rows({{1}}, 1))};
        for (const auto& A : rings) {
            PreLogMap f = PreLogMap::over_point(A);
            auto degrees = degree_box(A.ring_monoid, A.rank() == 1 ? 4 : 2);
            HomotopyTable a = loghh_enumerated(f, 2, degrees), b = loghh_homology(f, 2, degrees);
            CHECK_MESSAGE(a == b, (A.to_string()));
            GradedComplex c = loghh_complex(f, 3, degrees);
            for (const auto& piece : c.pieces)
                for (std::size_t i = 0; i + 1 < piece.d.size(); ++i) CHECK(composite_is_zero(piece.d[i], piece.d[i + 1]));
        }
    }

    TEST_CASE("HKR comparison") {
        CHECK(hkr_check(PreLogMap::over_point(PreLogRing::canonical(N2, kZ)), 3, degree_box(N2, 2)).passed());
        PreLogMap f = PreLogMap::canonical(hom(index_two(), N2, {{1, 0}, {0, 1}}), kQ);
        CHECK(hkr_check(f, 2, degree_box(N2, 2)).passed());
        HomotopyTable t = loghh_homology(PreLogMap::over_point(PreLogRing::canonical(N2, kZ)), 3, {{1, 1}});
        for (std::size_t q = 0; q <= 3; ++q) CHECK(t.at(q, {1, 1}) == FgAbGroup::free(oracle::binomial(2, q)));
    }

    TEST_CASE("graded Tor") {
        HomotopyTable t = graded_tor(hom(index_two(), N2, {{1, 0}, {0, 1}}), {}, kQ, 2, degree_box(N2, 3));
        CHECK(t.at(1, {2, 1}) == FgAbGroup::free(1));
        CHECK(t.at(1, {1, 2}) == FgAbGroup::free(1));
        std::size_t tor0 = 0;
        for (const auto& m : degree_box(N2, 3)) tor0 += t.at(0, m).free_rank;
        CHECK(tor0 == 3);
        CHECK(t.at(0, {0, 0}) == FgAbGroup::free(1));
        CHECK(t.at(0, {1, 0}) == FgAbGroup::free(1));
        CHECK(t.at(0, {0, 1}) == FgAbGroup::free(1));
        HomotopyTable free = graded_tor(hom(N1, N2, {{1}, {0}}), {}, kQ, 2, degree_box(N2, 3));
        for (const auto& m : degree_box(N2, 3)) {
            CHECK(free.at(1, m).is_zero());
            CHECK(free.at(2, m).is_zero());
        }
    }

    TEST_CASE("base change and Kunneth") {
        PreLogMap g = PreLogMap::over_point(PreLogRing::canonical(N1, kQ));
        for (std::int64_t n : {2, 3}) {
            Report r = base_change_check(g, PreLogMap::canonical(hom(N1, N1, {{n}}), kQ), 2, line(0, 6));
            CHECK(r.passed());
            CHECK(r.data.value("equivalence", false));
        }
        CHECK(base_change_check(g, PreLogMap::identity(PreLogRing::canonical(N1, kQ)), 2, line(0, 4)).passed());
        Report loc = base_change_check(PreLogMap::over_point(PreLogRing::trivial_log(N1, kQ)),
                                       PreLogMap(PreLogRing::trivial_log(N1, kQ), PreLogRing::trivial_log(AffineMonoid::lattice(1), kQ),
                                                 IntMatrix::identity(1), IntMatrix(0, 0)),
                                       2, line(-3, 3));
        CHECK(loc.passed());

        PreLogRing X = PreLogRing::canonical(N1, kQ);
        CHECK(kunneth_check(X, X, 2, line(0, 2), line(0, 2)).passed());
        CHECK(kunneth_check(X, PreLogRing::point(kQ), 2, line(0, 3), {IntVec{}}).passed());
        CHECK(kunneth_check(X, PreLogRing::trivial_log(N1, kQ), 2, line(0, 2), line(0, 2)).passed());
        HomotopyTable xx = loghh_homology(PreLogMap::over_point(product_over_point(X, X)), 2, {{1, 1}});
        CHECK(xx.at(0, {1, 1}) == FgAbGroup::free(1));
        CHECK(xx.at(1, {1, 1}) == FgAbGroup::free(2));
        CHECK(xx.at(2, {1, 1}) == FgAbGroup::free(1));
    }

    TEST_CASE("parallel and serial evaluation agree") {
        BarOptions serial;
        serial.parallel = false;
        auto degrees = degree_box(N2, 3);
        PreLogMap f = PreLogMap::over_point(PreLogRing::trivial_log(N2, kQ));
        CHECK(hochschild_homology(f, 2, degrees, serial) == hochschild_homology(f, 2, degrees));
        MonoidHom theta = hom(T, cusp(), {{}});
        CHECK(cyclic_bar_homology(theta, kQ, 3, line(0, 8), serial) == cyclic_bar_homology(theta, kQ, 3, line(0, 8)));
    }
}
