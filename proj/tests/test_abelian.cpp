#include "loghh/abelian.hpp"
#include "loghh/bar.hpp"
#include "loghh/sparse.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace loghh;

namespace {

const Coefficients kZ = Coefficients::integers(), kQ = Coefficients::rationals();

std::vector<Int> nonzero_diagonal(const SmithForm& s) {
    std::vector<Int> d;
    for (const auto& x : s.diagonal())
        if (x != 0) d.push_back(x);
    return d;
}

}  // namespace

TEST_SUITE("abelian") {
    TEST_CASE("smith normal form examples") {
        SmithForm id = smith_normal_form(IntMatrix::identity(2));
        CHECK(id.D == IntMatrix::identity(2));
        CHECK(id.U == IntMatrix::identity(2));
        CHECK(id.V == IntMatrix::identity(2));

        IntMatrix A = IntMatrix::from_columns({{2, 0}, {1, 1}, {0, 2}}, 2);
        CHECK(oracle::invariant_factors(A) == std::vector<Int>{1, 2});
        CHECK(nonzero_diagonal(smith_normal_form(A)) == std::vector<Int>{1, 2});

        IntMatrix B = IntMatrix::from_rows({{2, 4}, {6, 8}}, 2);
        CHECK(oracle::invariant_factors(B) == std::vector<Int>{2, 4});
        CHECK(nonzero_diagonal(smith_normal_form(B)) == std::vector<Int>{2, 4});
    }

    TEST_CASE("smith normal form properties on random matrices") {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
            IntMatrix A = oracle::random_matrix(rng, r, c, -6, 6, 0.3);
            SmithForm s = smith_normal_form(A);
            CHECK(s.U * A * s.V == s.D);
            CHECK(s.U * s.Uinv == IntMatrix::identity(r));
            CHECK(s.V * s.Vinv == IntMatrix::identity(c));
            auto d = nonzero_diagonal(s);
            for (std::size_t i = 0; i + 1 < d.size(); ++i) CHECK(d[i + 1] % d[i] == 0);
            for (const auto& x : d) CHECK(x > 0);
            CHECK(d == oracle::invariant_factors(A));
            CHECK(s.rank() == d.size());
        }
    }

    TEST_CASE("cokernel structure") {
        CHECK(cokernel_structure(IntMatrix(1, 1)) == FgAbGroup::free(1));
        CHECK(cokernel_structure(IntMatrix::from_columns({{2, 0}, {1, 1}, {0, 2}}, 2)) == FgAbGroup{0, {2}});
        CHECK(cokernel_structure(IntMatrix::diagonal({3})) == FgAbGroup{0, {3}});
    }

    TEST_CASE("cokernel structure against coset enumeration") {
        std::mt19937_64 rng(11);
        int compared = 0;
        while (compared < 25) {
            std::vector<IntVec> gens;
            std::uniform_int_distribution<int> d(-4, 4);
            const std::size_t n = 2 + rng() % 2;
            for (std::size_t i = 0; i < n; ++i) gens.push_back({d(rng), d(rng)});
            if (gens[0][0] * gens[1][1] - gens[0][1] * gens[1][0] == 0) continue;
            auto [order, exponent] = oracle::coset_enumeration(gens);
            FgAbGroup G = cokernel_structure(IntMatrix::from_columns(gens, 2));
            CHECK(G.free_rank == 0);
            CHECK(G.torsion_order() == order);
            CHECK((G.torsion.empty() ? Int(1) : G.torsion.back()) == exponent);
            ++compared;
        }
    }

    TEST_CASE("complex homology") {
        CHECK(complex_homology({IntMatrix(1, 1)}, 0, kZ) == FgAbGroup::free(1));
        CHECK(complex_homology({IntMatrix(0, 0)}, 0, kZ).is_zero());
        std::vector<IntMatrix> two = {IntMatrix::diagonal({2})};
        CHECK(complex_homology(two, 0, kZ) == FgAbGroup{0, {2}});
        CHECK(complex_homology(two, 0, kQ).is_zero());
        CHECK(complex_homology(two, 0, Coefficients::prime_field(2)) == FgAbGroup::free(1));
        CHECK(complex_homology(two, 1, Coefficients::prime_field(2)) == FgAbGroup::free(1));
        CHECK_THROWS_AS(complex_homology({IntMatrix::identity(1), IntMatrix::identity(1)}, 1, kZ), MalformedComplex);
    }

    TEST_CASE("group homology") {
        for (std::size_t q = 0; q <= 3; ++q)
            CHECK(group_homology(FgAbGroup::free(2), q, kZ) == FgAbGroup::free(oracle::binomial(2, q)));
        CHECK(group_homology(FgAbGroup{0, {2}}, 0, kZ) == FgAbGroup::free(1));
        CHECK(group_homology(FgAbGroup{0, {2}}, 1, kZ) == FgAbGroup{0, {2}});
        CHECK(group_homology(FgAbGroup{0, {2}}, 2, kZ).is_zero());
        CHECK(group_homology(FgAbGroup{0, {6}}, 3, kZ) == FgAbGroup{0, {6}});
        CHECK(group_homology(FgAbGroup{0, {2}}, 2, Coefficients::prime_field(2)) == FgAbGroup::free(1));
        CHECK(group_homology(FgAbGroup{0, {2}}, 1, kQ).is_zero());
    }

    TEST_CASE("group homology against the truncated bar complex") {
        const std::vector<FgAbGroup> groups = {FgAbGroup{0, {2}}, FgAbGroup{0, {3}}, FgAbGroup{0, {2, 2}}, FgAbGroup::free(1)};
        for (const auto& G : groups)
            for (const auto& k : {kZ, kQ, Coefficients::prime_field(2), Coefficients::prime_field(3)}) {
                SparseComplex bar = group_bar_complex(G, 4, 2);
                for (std::size_t q = 0; q <= 2; ++q) CHECK(sparse_homology(bar, q, k) == group_homology(G, q, k));
            }
    }

    TEST_CASE("scalar tensor and tor") {
        auto [t2q, tor2q] = scalar_tensor_tor(FgAbGroup{0, {2}}, kQ);
        CHECK(t2q.is_zero());
        CHECK(tor2q.is_zero());
        auto [t2f, tor2f] = scalar_tensor_tor(FgAbGroup{0, {2}}, Coefficients::prime_field(2));
        CHECK(t2f == FgAbGroup::free(1));
        CHECK(tor2f == FgAbGroup::free(1));
        for (const auto& k : {kZ, kQ, Coefficients::prime_field(5)}) {
            auto [t, tor] = scalar_tensor_tor(FgAbGroup::free(1), k);
            CHECK(t == FgAbGroup::free(1));
            CHECK(tor.is_zero());
        }
    }

    TEST_CASE("sparse and dense elimination agree") {
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 80; ++trial) {
            const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
            IntMatrix A = oracle::random_matrix(rng, r, c, -3, 3, 0.6);
            SparseMatrix S = SparseMatrix::from_dense(A);
            CHECK(S.to_dense() == A);
            for (const auto& k : {kZ, kQ, Coefficients::prime_field(2), Coefficients::prime_field(3)})
                CHECK(sparse_rank(S, k) == rank_over(A, k));
            DivisorSummary ds = sparse_divisors(S);
            std::vector<Int> torsion;
            for (const auto& x : oracle::invariant_factors(A))
                if (x > 1) torsion.push_back(x);
            CHECK(ds.rank == smith_normal_form(A).rank());
            CHECK(ds.torsion == torsion);
        }
    }

    TEST_CASE("sparse homology matches dense homology on random complexes") {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 30; ++trial) {
            // d1 * d2 = 0 by construction: d2 = kernel vectors of d1
            IntMatrix d1 = oracle::random_matrix(rng, 3, 4, -2, 2, 0.4);
            auto ker = kernel_basis(d1);
            IntMatrix d2(4, ker.size());
            for (std::size_t j = 0; j < ker.size(); ++j) {
                const auto s = static_cast<std::int64_t>(1 + rng() % 3);
                for (std::size_t i = 0; i < 4; ++i) d2(i, j) = ker[j][i] * s;
            }
            REQUIRE((d1 * d2).is_zero());
            SparseComplex c{{3, 4, ker.size()}, {SparseMatrix::from_dense(d1), SparseMatrix::from_dense(d2)}};
            CHECK(composite_is_zero(c.d[0], c.d[1]));
            for (std::size_t n = 0; n <= 2; ++n)
                for (const auto& k : {kZ, kQ, Coefficients::prime_field(2)})
                    CHECK(sparse_homology(c, n, k) == complex_homology({d1, d2}, n, k));
        }
    }

    TEST_CASE("coefficient validation") {
        CHECK_THROWS(Coefficients::prime_field(4));
        CHECK(Coefficients::prime_field(7).characteristic() == 7);
        CHECK(kQ.invertible(Int(6)));
        CHECK_FALSE(Coefficients::prime_field(3).invertible(Int(6)));
        CHECK_FALSE(kZ.invertible(Int(2)));
    }
}
