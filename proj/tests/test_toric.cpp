#include "loghh/toric.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace loghh;

namespace {

const Coefficients kQ = Coefficients::rationals();

std::int64_t total_euler(const ToricCohomology& h) {
    std::int64_t e = 0;
    for (const auto& m : h.degrees) e += h.euler(m);
    return e;
}

ModuleDesc total(const ToricCohomology& h, std::size_t i) {
    ModuleDesc t;
    for (const auto& m : h.degrees) t = direct_sum(t, h.H.at(m)[i]);
    return t;
}

}  // namespace

TEST_SUITE("toric") {
    TEST_CASE("dual monoids") {
        CHECK(dual_monoid(Cone(2, {{1, 0}, {0, 1}})).generators().size() == 2);
        AffineMonoid d = dual_monoid(Cone(2, {{1, 0}, {1, 2}}));
        CHECK(d.generators().size() == 3);
        CHECK(d.rank() == 2);
        AffineMonoid z = dual_monoid(Cone(2, {}));
        CHECK(z.unit_basis().size() == 2);
        CHECK(z.is_unit({1, -1}));
    }

    TEST_CASE("star subdivisions") {
        Subdivision a = star_subdivision(Fan::named("affine_plane"), {1, 1});
        REQUIRE(a.refined.cones.size() == 2);
        std::vector<std::vector<IntVec>> rays;
        for (const auto& c : a.refined.cones) rays.push_back(c.rays);
        std::sort(rays.begin(), rays.end());
        CHECK(rays == std::vector<std::vector<IntVec>>{{{0, 1}, {1, 1}}, {{1, 0}, {1, 1}}});
        CHECK(is_subdivision(a.refined, a.coarse).holds);

        Subdivision same = star_subdivision(Fan::named("P2"), {1, 0});
        CHECK(same.refined.cones.size() == 3);

        Subdivision p2 = star_subdivision(Fan::named("P2"), {1, 1});
        CHECK(p2.refined.cones.size() == 4);
        CHECK(is_subdivision(p2.refined, Fan::named("P2")).holds);
        CHECK(is_subdivision(Fan::named("blowup_P2"), Fan::named("P2")).holds);
        CHECK_FALSE(is_subdivision(Fan::named("P2"), Fan::named("affine_plane")).holds);
        CHECK(!fan_defect(p2.refined));
    }

    TEST_CASE("structure sheaf cohomology") {
        ToricCohomology one = cohomology(Fan::named("affine_plane"), kQ, ToricDivisor::zero(Fan::named("affine_plane")), 0,
                                         {{0, 0}, {2, 3}});
        CHECK(one.H.at({0, 0})[0] == FgAbGroup::free(1));
        Fan P1 = Fan::named("P1");
        auto box = lattice_box(1, 5);
        ToricCohomology o = cohomology(P1, kQ, ToricDivisor::zero(P1), 0, box);
        for (const auto& m : box) {
            CHECK(o.H.at(m)[0] == FgAbGroup::free(m[0] == 0 ? 1 : 0));
            CHECK(o.H.at(m)[1].is_zero());
        }
        ToricCohomology w = cohomology(P1, kQ, ToricDivisor{{-1, -1}}, 0, box);
        CHECK(total(w, 0).is_zero());
        CHECK(total(w, 1) == FgAbGroup::free(1));
        CHECK(w.H.at({0})[1] == FgAbGroup::free(1));
    }

    TEST_CASE("line bundle Euler characteristics match Riemann-Roch") {
        Fan P1 = Fan::named("P1"), P2 = Fan::named("P2");
        for (std::int64_t d = -4; d <= 4; ++d) {
            ToricDivisor D1 = ToricDivisor::zero(P1);
            D1.coeff[0] = d;
            CHECK(total_euler(cohomology(P1, kQ, D1, 0, lattice_box(1, 7))) == d + 1);
            ToricDivisor D2 = ToricDivisor::zero(P2);
            D2.coeff[1] = d;
            CHECK(total_euler(cohomology(P2, kQ, D2, 0, lattice_box(2, 6))) ==
                  static_cast<std::int64_t>((d + 1) * (d + 2) / 2));
        }
    }

    TEST_CASE("cohomology does not depend on the order of cones") {
        Fan f = Fan::named("blowup_P2");
        ToricDivisor D = ToricDivisor::zero(f);
        D.coeff[0] = -2;
        auto box = lattice_box(2, 3);
        ToricCohomology ref = cohomology_serial(f, kQ, D, 0, box);
        std::vector<Cone> cones = f.cones;
        std::mt19937_64 rng(23);
        for (int trial = 0; trial < 4; ++trial) {
            std::shuffle(cones.begin(), cones.end(), rng);
            Fan g(f.d, cones);
            REQUIRE(g.rays() == f.rays());
            ToricCohomology h = cohomology(g, kQ, D, 0, box);
            for (const auto& m : box) CHECK(h.H.at(m) == ref.H.at(m));
        }
    }

    TEST_CASE("serial and parallel cohomology agree") {
        for (const char* name : {"P2", "blowup_P2", "blowup_affine_plane"}) {
            Fan f = Fan::named(name);
            auto box = lattice_box(2, 4);
            for (std::size_t q = 0; q <= 2; ++q) {
                ToricCohomology a = cohomology_serial(f, kQ, ToricDivisor::zero(f), q, box);
                ToricCohomology b = cohomology(f, kQ, ToricDivisor::zero(f), q, box, true);
                for (const auto& m : box) CHECK(a.H.at(m) == b.H.at(m));
            }
        }
    }

    TEST_CASE("subdivision invariance") {
        auto box = lattice_box(2, 4);
        CHECK(invariance_check(star_subdivision(Fan::named("affine_plane"), {1, 1}), kQ, box).passed());
        CHECK(invariance_check(star_subdivision(Fan::named("P2"), {1, 1}), kQ, box).passed());
        CHECK(invariance_check(star_subdivision(Fan::named("P2"), {1, 0}), kQ, box).passed());
        CHECK(invariance_check(star_subdivision(Fan::named("affine_plane"), {1, 2}), kQ, box).passed());
    }

    TEST_CASE("P1 bar check") {
        Report r = pone_bar_check(kQ, 5);
        CHECK(r.passed());
        CHECK(pone_bar_check(Coefficients::prime_field(3), 4).passed());
    }

    TEST_CASE("fan validation") {
        CHECK_THROWS(Fan(2, {Cone(2, {{1, 0}, {0, 1}}), Cone(2, {{1, 1}, {0, 1}})}));
        CHECK_THROWS(Fan::named("no_such_fan"));
    }
}
