#include "loghh/abelian.hpp"
#include "loghh/detail/smith_core.hpp"
#include "loghh/sparse.hpp"

#include <sstream>

namespace loghh {

FgAbGroup FgAbGroup::from_orders(std::size_t free_rank, const std::vector<Int>& cyclic_orders) {
    std::vector<Int> d;
    for (const auto& o : cyclic_orders) {
        if (o == 0)
            ++free_rank;
        else if (abs(o) != 1)
            d.push_back(abs(o));
    }
    FgAbGroup g;
    g.free_rank = free_rank;
    if (!d.empty())
        for (const auto& x : detail::invariant_factors(IntMatrix::diagonal(d)))
            if (x > 1) g.torsion.push_back(x);
    return g;
}

Int FgAbGroup::torsion_order() const {
    Int o = 1;
    for (const auto& d : torsion) o *= d;
    return o;
}

std::string FgAbGroup::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1) os << "^" << free_rank;
        first = false;
    }
    for (const auto& d : torsion) {
        os << (first ? "" : " + ") << "Z/" << d.get_str();
        first = false;
    }
    return os.str();
}

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
    std::vector<Int> t = a.torsion;
    t.insert(t.end(), b.torsion.begin(), b.torsion.end());
    return FgAbGroup::from_orders(a.free_rank + b.free_rank, t);
}

FgAbGroup tensor(const FgAbGroup& a, const FgAbGroup& b) {
    std::vector<Int> t;
    for (std::size_t i = 0; i < a.free_rank; ++i) t.insert(t.end(), b.torsion.begin(), b.torsion.end());
    for (std::size_t i = 0; i < b.free_rank; ++i) t.insert(t.end(), a.torsion.begin(), a.torsion.end());
    for (const auto& x : a.torsion)
        for (const auto& y : b.torsion) t.push_back(gcd(x, y));
    return FgAbGroup::from_orders(a.free_rank * b.free_rank, t);
}

FgAbGroup tor1(const FgAbGroup& a, const FgAbGroup& b) {
    std::vector<Int> t;
    for (const auto& x : a.torsion)
        for (const auto& y : b.torsion) t.push_back(gcd(x, y));
    return FgAbGroup::from_orders(0, t);
}

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Coefficients Coefficients::prime_field(std::uint64_t p) {
    if (!is_prime(p)) throw PreconditionError("prime field requires a prime, got " + std::to_string(p));
    return {Kind::PrimeField, p};
}

bool Coefficients::invertible(const Int& n) const {
    switch (kind) {
        case Kind::Integers:
            return n == 1 || n == -1;
        case Kind::Rationals:
            return n != 0;
        case Kind::PrimeField:
            return !mpz_divisible_ui_p(n.get_mpz_t(), p);
    }
    return false;
}

std::string Coefficients::name() const {
    switch (kind) {
        case Kind::Integers:
            return "ZZ";
        case Kind::Rationals:
            return "QQ";
        case Kind::PrimeField:
            return "GF(" + std::to_string(p) + ")";
    }
    return "?";
}

namespace {

std::size_t count_divisible(const std::vector<Int>& t, std::uint64_t p) {
    std::size_t c = 0;
    for (const auto& d : t)
        if (mpz_divisible_ui_p(d.get_mpz_t(), p)) ++c;
    return c;
}

}  // namespace

ModuleDesc change_coefficients(const FgAbGroup& G, const Coefficients& k) {
    switch (k.kind) {
        case Coefficients::Kind::Integers:
            return G;
        case Coefficients::Kind::Rationals:
            return FgAbGroup::free(G.free_rank);
        case Coefficients::Kind::PrimeField:
            return FgAbGroup::free(G.free_rank + count_divisible(G.torsion, k.p));
    }
    return {};
}

std::pair<ModuleDesc, ModuleDesc> scalar_tensor_tor(const FgAbGroup& G, const Coefficients& k) {
    ModuleDesc t = change_coefficients(G, k);
    ModuleDesc r;
    if (k.kind == Coefficients::Kind::PrimeField) r = FgAbGroup::free(count_divisible(G.torsion, k.p));
    return {t, r};
}

std::size_t rank_over(const IntMatrix& A, const Coefficients& k) {
    return sparse_rank(SparseMatrix::from_dense(A), k);
}

ModuleDesc complex_homology(const std::vector<IntMatrix>& boundaries, std::size_t n, const Coefficients& k) {
    SparseComplex c;
    if (boundaries.empty()) {
        if (n == 0) return {};
        return {};
    }
    c.dims.push_back(boundaries[0].rows());
    for (std::size_t i = 0; i < boundaries.size(); ++i) {
        if (boundaries[i].rows() != c.dims.back())
            throw MalformedComplex("boundary " + std::to_string(i + 1) + " is not composable with its predecessor");
        c.dims.push_back(boundaries[i].cols());
        if (i > 0 && !(boundaries[i - 1] * boundaries[i]).is_zero())
            throw MalformedComplex("boundaries " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                   " do not compose to zero");
        c.d.push_back(SparseMatrix::from_dense(boundaries[i]));
    }
    return sparse_homology(c, n, k);
}

namespace {

// Integral homology of BG in degrees 0..nmax via Kunneth over the cyclic factors.
std::vector<FgAbGroup> integral_group_homology(const FgAbGroup& G, std::size_t nmax) {
    std::vector<FgAbGroup> H(nmax + 1);
    H[0] = FgAbGroup::free(1);
    std::vector<std::vector<FgAbGroup>> factors;
    for (std::size_t i = 0; i < G.free_rank; ++i) {
        std::vector<FgAbGroup> h(nmax + 1);
        h[0] = FgAbGroup::free(1);
        if (nmax >= 1) h[1] = FgAbGroup::free(1);
        factors.push_back(h);
    }
    for (const auto& d : G.torsion) {
        std::vector<FgAbGroup> h(nmax + 1);
        h[0] = FgAbGroup::free(1);
        for (std::size_t q = 1; q <= nmax; q += 2) h[q] = FgAbGroup::from_orders(0, {d});
        factors.push_back(h);
    }
    for (const auto& h : factors) {
        std::vector<FgAbGroup> next(nmax + 1);
        for (std::size_t m = 0; m <= nmax; ++m) {
            FgAbGroup acc;
            for (std::size_t i = 0; i <= m; ++i) acc = direct_sum(acc, tensor(H[i], h[m - i]));
            if (m >= 1)
                for (std::size_t i = 0; i <= m - 1; ++i) acc = direct_sum(acc, tor1(H[i], h[m - 1 - i]));
            next[m] = acc;
        }
        H = std::move(next);
    }
    return H;
}

}  // namespace

ModuleDesc group_homology(const FgAbGroup& G, std::size_t n, const Coefficients& k) {
    auto H = integral_group_homology(G, n);
    ModuleDesc out = change_coefficients(H[n], k);
    if (n >= 1) {
        auto tor = scalar_tensor_tor(H[n - 1], k).second;
        out = direct_sum(out, tor);
    }
    return out;
}

}  // namespace loghh
