#pragma once

// Independent reference computations used to freeze derived values.

#include "loghh/cone.hpp"
#include "loghh/lattice.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

namespace oracle {

using loghh::Int;
using loghh::IntMatrix;
using loghh::IntVec;

// Determinantal divisors: D_k = gcd of all k x k minors; invariant factors d_k = D_k / D_{k-1}.
inline std::vector<Int> invariant_factors(const IntMatrix& A) {
    std::vector<Int> out;
    Int prev = 1;
    const std::size_t r = std::min(A.rows(), A.cols());
    for (std::size_t k = 1; k <= r; ++k) {
        Int g = 0;
        loghh::for_each_subset(A.rows(), k, [&](const std::vector<std::size_t>& rows) {
            loghh::for_each_subset(A.cols(), k, [&](const std::vector<std::size_t>& cols) {
                std::vector<std::vector<Int>> m(k, std::vector<Int>(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) m[i][j] = A(rows[i], cols[j]);
                Int det = loghh::determinant(m);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
            });
        });
        if (g == 0) break;
        out.push_back(Int(g / prev));
        prev = g;
    }
    return out;
}

// Z^2 / L for a full-rank L given by generators, by union-find over (Z/N)^2 with N Z^2 inside L.
// Returns (group order, exponent).
inline std::pair<std::int64_t, std::int64_t> coset_enumeration(const std::vector<IntVec>& gens) {
    std::int64_t N = 0;
    for (std::size_t i = 0; i < gens.size() && N == 0; ++i)
        for (std::size_t j = i + 1; j < gens.size() && N == 0; ++j)
            N = std::abs(gens[i][0] * gens[j][1] - gens[i][1] * gens[j][0]);
    std::vector<std::int64_t> parent(static_cast<std::size_t>(N * N));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::int64_t(std::int64_t)> find = [&](std::int64_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto idx = [N](std::int64_t a, std::int64_t b) { return ((a % N + N) % N) * N + ((b % N + N) % N); };
    for (std::int64_t a = 0; a < N; ++a)
        for (std::int64_t b = 0; b < N; ++b)
            for (const auto& g : gens) parent[find(idx(a, b))] = find(idx(a + g[0], b + g[1]));
    std::set<std::int64_t> classes;
    for (std::int64_t x = 0; x < N * N; ++x) classes.insert(find(x));
    std::int64_t exponent = 1;
    for (std::int64_t a = 0; a < N; ++a)
        for (std::int64_t b = 0; b < N; ++b) {
            std::int64_t k = 1;
            while (find(idx(k * a, k * b)) != find(0)) ++k;
            exponent = std::lcm(exponent, k);
        }
    return {static_cast<std::int64_t>(classes.size()), exponent};
}

// Membership by brute force over nonnegative combinations with coefficients <= c.
inline bool in_span(const std::vector<IntVec>& gens, const IntVec& v, std::int64_t c) {
    std::function<bool(std::size_t, IntVec)> go = [&](std::size_t i, IntVec rest) {
        if (i == gens.size()) return loghh::is_zero(rest);
        for (std::int64_t a = 0; a <= c; ++a) {
            if (go(i + 1, rest)) return true;
            rest = loghh::sub(rest, gens[i]);
        }
        return false;
    };
    return go(0, v);
}

// Irreducible lattice points of a 2-dimensional pointed cone, by brute force in a box.
inline std::vector<IntVec> irreducibles_2d(const IntVec& r1, const IntVec& r2, std::int64_t box) {
    auto inside = [&](const IntVec& x) {
        const std::int64_t s = r1[0] * r2[1] - r1[1] * r2[0];
        const std::int64_t a = (x[0] * r2[1] - x[1] * r2[0]) * (s > 0 ? 1 : -1);
        const std::int64_t b = (r1[0] * x[1] - r1[1] * x[0]) * (s > 0 ? 1 : -1);
        return a >= 0 && b >= 0;
    };
    std::vector<IntVec> pts;
    for (std::int64_t i = -box; i <= box; ++i)
        for (std::int64_t j = -box; j <= box; ++j)
            if ((i || j) && inside({i, j})) pts.push_back({i, j});
    std::vector<IntVec> out;
    for (const auto& p : pts) {
        bool reducible = false;
        for (const auto& q : pts)
            if (q != p && inside(loghh::sub(p, q)) && !loghh::is_zero(loghh::sub(p, q))) reducible = true;
        if (!reducible) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi, double zero_rate = 0) {
    std::uniform_int_distribution<int> d(lo, hi);
    std::uniform_real_distribution<double> z(0, 1);
    IntMatrix A(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) A(i, j) = z(rng) < zero_rate ? 0 : d(rng);
    return A;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace oracle
