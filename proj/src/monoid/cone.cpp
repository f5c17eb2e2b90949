#include "loghh/cone.hpp"

#include <algorithm>
#include <set>

namespace loghh {

namespace {

std::vector<IntVec> distinct_directions(const std::vector<IntVec>& gens) {
    std::set<IntVec> s;
    for (const auto& g : gens)
        if (!is_zero(g)) s.insert(primitive(g));
    return {s.begin(), s.end()};
}

}  // namespace

bool satisfies(const std::vector<IntVec>& ineqs, const IntVec& x) {
    for (const auto& a : ineqs)
        if (dot(a, x) < 0) return false;
    return true;
}

std::vector<IntVec> cone_facets(const std::vector<IntVec>& gens, std::size_t r) {
    if (r == 0) return {};
    auto dirs = distinct_directions(gens);
    std::set<IntVec> normals;
    for_each_subset(dirs.size(), r - 1, [&](const std::vector<std::size_t>& idx) {
        IntMatrix A(r - 1, r);
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < r; ++j) A(i, j) = static_cast<long>(dirs[idx[i]][j]);
        auto ker = kernel_basis(A);
        if (ker.size() != 1) return;
        IntVec n = primitive(ker[0]);
        bool pos = false, negv = false;
        for (const auto& g : dirs) {
            auto v = dot(n, g);
            if (v > 0) pos = true;
            if (v < 0) negv = true;
        }
        if (pos && !negv) normals.insert(n);
        if (negv && !pos) normals.insert(neg(n));
    });
    return {normals.begin(), normals.end()};
}

ConeVRep cone_from_inequalities(const std::vector<IntVec>& ineqs, std::size_t r) {
    ConeVRep out;
    IntMatrix A = IntMatrix::from_rows(ineqs, r);
    out.lineality = ineqs.empty() ? kernel_basis(IntMatrix(0, r)) : kernel_basis(A);
    std::size_t k = out.lineality.size();
    if (k == r) return out;
    IntMatrix B = complete_basis(out.lineality, r);
    std::size_t s = r - k;
    // inequalities in quotient coordinates
    std::vector<IntVec> Aq;
    for (const auto& a : ineqs) {
        IntVec row(s);
        for (std::size_t j = 0; j < s; ++j) {
            Int acc = 0;
            for (std::size_t i = 0; i < r; ++i) acc += static_cast<long>(a[i]) * B(i, k + j);
            row[j] = to_i64(acc);
        }
        if (!is_zero(row)) Aq.push_back(primitive(row));
    }
    std::sort(Aq.begin(), Aq.end());
    Aq.erase(std::unique(Aq.begin(), Aq.end()), Aq.end());
    std::set<IntVec> rays;
    auto consider = [&](const IntVec& x0) {
        for (int sgn : {1, -1}) {
            IntVec x = scale(x0, sgn);
            bool ok = true, nonzero = false;
            for (const auto& a : Aq) {
                auto v = dot(a, x);
                if (v < 0) ok = false;
                if (v != 0) nonzero = true;
            }
            if (ok && nonzero) rays.insert(primitive(x));
        }
    };
    for_each_subset(Aq.size(), s - 1, [&](const std::vector<std::size_t>& idx) {
        IntMatrix M(s - 1, s);
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < s; ++j) M(i, j) = static_cast<long>(Aq[idx[i]][j]);
        auto ker = s - 1 == 0 ? kernel_basis(IntMatrix(0, s)) : kernel_basis(M);
        if (ker.size() == 1) consider(ker[0]);
    });
    for (const auto& y : rays) {
        IntVec full(r, 0);
        for (std::size_t i = 0; i < r; ++i) {
            Int acc = 0;
            for (std::size_t j = 0; j < s; ++j) acc += B(i, k + j) * static_cast<long>(y[j]);
            full[i] = to_i64(acc);
        }
        out.rays.push_back(full);
    }
    return out;
}

std::vector<IntVec> hilbert_basis_pointed(const std::vector<IntVec>& rays_in, std::size_t r) {
    auto dirs = distinct_directions(rays_in);
    if (dirs.empty()) return {};
    auto S = saturation_basis(dirs, r);
    std::size_t s = S.size();
    IntMatrix Sm = IntMatrix::from_columns(S, r);
    std::vector<IntVec> rays;
    for (const auto& d : dirs) rays.push_back(*solve_integer(Sm, d));
    auto facets = cone_facets(rays, s);
    if (s > 0) {
        std::size_t rk = facets.empty() ? 0 : smith_normal_form(IntMatrix::from_rows(facets, s)).rank();
        if (rk != s) throw Unsupported("Hilbert basis requested for a non-pointed cone");
    }

    std::set<IntVec> cand(rays.begin(), rays.end());
    constexpr std::int64_t kMaxVolume = 200000;
    for_each_subset(rays.size(), s, [&](const std::vector<std::size_t>& idx) {
        std::vector<IntVec> cols;
        for (auto i : idx) cols.push_back(rays[i]);
        IntMatrix B = IntMatrix::from_columns(cols, s);
        auto sf = smith_normal_form(B);
        if (sf.rank() != s) return;
        std::vector<std::int64_t> d(s);
        std::int64_t vol = 1;
        for (std::size_t i = 0; i < s; ++i) {
            d[i] = to_i64(sf.D(i, i));
            vol *= d[i];
            if (vol > kMaxVolume) throw ScaleError("simplicial cone volume exceeds enumeration limit");
        }
        // a ranges over prod [0, d_i); lambda = V * (a / d) gives coordinates in the ray basis
        std::vector<std::int64_t> a(s, 0);
        for (;;) {
            std::vector<Rat> lam(s);
            for (std::size_t i = 0; i < s; ++i) {
                Rat acc = 0;
                for (std::size_t j = 0; j < s; ++j)
                    if (a[j] != 0) acc += Rat(sf.V(i, j)) * Rat(static_cast<long>(a[j]), static_cast<long>(d[j]));
                acc.canonicalize();
                // fractional part
                Int fl;
                mpz_fdiv_q(fl.get_mpz_t(), acc.get_num_mpz_t(), acc.get_den_mpz_t());
                lam[i] = acc - Rat(fl);
            }
            IntVec p(s, 0);
            for (std::size_t row = 0; row < s; ++row) {
                Rat acc = 0;
                for (std::size_t j = 0; j < s; ++j) acc += Rat(static_cast<long>(cols[j][row])) * lam[j];
                acc.canonicalize();
                p[row] = to_i64(acc.get_num());
            }
            if (!is_zero(p)) cand.insert(p);
            std::size_t i = 0;
            while (i < s && ++a[i] == d[i]) a[i++] = 0;
            if (i == s) break;
        }
    });

    std::vector<IntVec> cv(cand.begin(), cand.end());
    std::vector<IntVec> basis;
    for (const auto& x : cv) {
        bool reducible = false;
        for (const auto& y : cv) {
            if (y == x) continue;
            if (satisfies(facets, sub(x, y))) {
                reducible = true;
                break;
            }
        }
        if (!reducible) basis.push_back(x);
    }
    std::vector<IntVec> out;
    for (const auto& h : basis) {
        IntVec v(r, 0);
        for (std::size_t j = 0; j < s; ++j)
            for (std::size_t i = 0; i < r; ++i) v[i] += S[j][i] * h[j];
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<IntVec> cone_lattice_generators(const std::vector<IntVec>& ineqs, std::size_t r) {
    auto vrep = cone_from_inequalities(ineqs, r);
    std::size_t k = vrep.lineality.size();
    std::vector<IntVec> out;
    for (const auto& l : vrep.lineality) {
        out.push_back(l);
        out.push_back(neg(l));
    }
    if (k == r) return out;
    IntMatrix B = complete_basis(vrep.lineality, r);
    IntMatrix Binv = unimodular_inverse(B);
    std::size_t s = r - k;
    std::vector<IntVec> qrays;
    for (const auto& ray : vrep.rays) {
        IntVec y = Binv.apply(ray);
        qrays.push_back(IntVec(y.begin() + static_cast<std::ptrdiff_t>(k), y.end()));
    }
    for (const auto& h : hilbert_basis_pointed(qrays, s)) {
        IntVec y(r, 0);
        for (std::size_t j = 0; j < s; ++j) y[k + j] = h[j];
        out.push_back(B.apply(y));
    }
    return out;
}

std::vector<IntVec> hilbert_basis(const std::vector<IntVec>& rays, std::size_t d) {
    if (d > 4) throw ScaleError("hilbert_basis: ambient rank " + std::to_string(d) + " exceeds 4");
    for (const auto& r : rays)
        if (r.size() != d) throw PreconditionError("hilbert_basis: ray length mismatch");
    return hilbert_basis_pointed(rays, d);
}

}  // namespace loghh
