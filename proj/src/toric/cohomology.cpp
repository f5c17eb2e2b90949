#include "loghh/cone.hpp"
#include "loghh/sparse.hpp"
#include "loghh/toric.hpp"

#include <omp.h>

namespace loghh {

namespace {

std::size_t binom(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Nerve of the maximal-cone cover: subsets by size with their intersection's rays as fan ray indices.
struct Nerve {
    std::vector<std::vector<std::vector<std::size_t>>> subsets;  // [p] -> subsets of size p+1
    std::vector<std::vector<std::vector<std::size_t>>> rays;     // [p][s] -> ray indices of the intersection
};

Nerve build_nerve(const Fan& f) {
    Nerve N;
    const std::size_t n = f.cones.size();
    auto rs = f.rays();
    N.subsets.resize(n);
    N.rays.resize(n);
    for (std::size_t p = 0; p < n; ++p)
        for_each_subset(n, p + 1, [&](const std::vector<std::size_t>& S) {
            N.subsets[p].push_back(S);
            std::vector<std::size_t> idx;
            for (const auto& r : f.intersection(S).rays) idx.push_back(f.ray_index(r));
            N.rays[p].push_back(idx);
        });
    return N;
}

std::vector<ModuleDesc> cech_at(const Fan& f, const Nerve& N, const std::vector<IntVec>& rs, const ToricDivisor& D,
                                const Coefficients& k, const IntVec& m) {
    const std::size_t n = N.subsets.size();
    std::vector<std::vector<std::size_t>> live(n);  // positions of subsets carrying a section
    std::vector<std::vector<long>> pos(n);
    for (std::size_t p = 0; p < n; ++p) {
        pos[p].assign(N.subsets[p].size(), -1);
        for (std::size_t s = 0; s < N.subsets[p].size(); ++s) {
            bool ok = true;
            for (auto r : N.rays[p][s])
                if (dot(m, rs[r]) < -D.coeff[r]) ok = false;
            if (ok) {
                pos[p][s] = static_cast<long>(live[p].size());
                live[p].push_back(s);
            }
        }
    }
    // cochain degree p sits in chain degree n-1-p
    SparseComplex c;
    c.dims.resize(n);
    for (std::size_t p = 0; p < n; ++p) c.dims[n - 1 - p] = live[p].size();
    c.d.resize(n > 0 ? n - 1 : 0);
    for (std::size_t p = 0; p + 1 < n; ++p) {
        SparseMatrix A(live[p + 1].size(), live[p].size());
        for (std::size_t t = 0; t < live[p + 1].size(); ++t) {
            const auto& T = N.subsets[p + 1][live[p + 1][t]];
            for (std::size_t drop = 0; drop < T.size(); ++drop) {
                std::vector<std::size_t> S;
                for (std::size_t i = 0; i < T.size(); ++i)
                    if (i != drop) S.push_back(T[i]);
                auto it = std::lower_bound(N.subsets[p].begin(), N.subsets[p].end(), S);
                long q = pos[p][static_cast<std::size_t>(it - N.subsets[p].begin())];
                if (q >= 0) A.add(t, static_cast<std::size_t>(q), drop % 2 ? -1 : 1);
            }
        }
        A.normalize();
        c.d[n - 2 - p] = A;
    }
    std::vector<ModuleDesc> H(n);
    for (std::size_t p = 0; p < n; ++p) H[p] = sparse_homology(c, n - 1 - p, k);
    (void)f;
    return H;
}

ToricCohomology run(const Fan& f, const Coefficients& k, const ToricDivisor& D, std::size_t q_log,
                    const std::vector<IntVec>& degrees, bool parallel) {
    auto rs = f.rays();
    if (D.coeff.size() != rs.size()) throw PreconditionError("divisor needs one coefficient per ray");
    for (const auto& m : degrees)
        if (m.size() != f.d) throw PreconditionError("degree " + vec_str(m) + " has the wrong length");
    Nerve N = build_nerve(f);
    const std::size_t mult = binom(f.d, q_log);
    std::vector<std::vector<ModuleDesc>> rows(degrees.size());
    const long nd = static_cast<long>(degrees.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long i = 0; i < nd; ++i) {
        auto H = cech_at(f, N, rs, D, k, degrees[static_cast<std::size_t>(i)]);
        for (auto& h : H) {
            ModuleDesc out;
            for (std::size_t c = 0; c < mult; ++c) out = direct_sum(out, h);
            h = out;
        }
        rows[static_cast<std::size_t>(i)] = std::move(H);
    }
    ToricCohomology t;
    t.degrees = degrees;
    t.top = f.cones.empty() ? 0 : f.cones.size() - 1;
    for (std::size_t i = 0; i < degrees.size(); ++i) t.H[degrees[i]] = std::move(rows[i]);
    return t;
}

}  // namespace

std::int64_t ToricCohomology::euler(const IntVec& m) const {
    std::int64_t e = 0;
    const auto& h = H.at(m);
    for (std::size_t i = 0; i < h.size(); ++i) e += (i % 2 ? -1 : 1) * static_cast<std::int64_t>(h[i].free_rank);
    return e;
}

json ToricCohomology::to_json() const {
    json j = json::array();
    for (const auto& m : degrees) {
        const auto& h = H.at(m);
        bool any = false;
        for (const auto& x : h) any = any || !x.is_zero();
        if (!any) continue;
        json row;
        row["degree"] = m;
        json hs = json::array();
        for (const auto& x : h) hs.push_back(x.to_string());
        row["H"] = hs;
        j.push_back(row);
    }
    return j;
}

ToricCohomology cohomology(const Fan& f, const Coefficients& k, const ToricDivisor& D, std::size_t q_log,
                           const std::vector<IntVec>& degrees, bool parallel) {
    return run(f, k, D, q_log, degrees, parallel);
}

ToricCohomology cohomology_serial(const Fan& f, const Coefficients& k, const ToricDivisor& D, std::size_t q_log,
                                  const std::vector<IntVec>& degrees) {
    return run(f, k, D, q_log, degrees, false);
}

std::vector<IntVec> lattice_box(std::size_t d, std::int64_t radius) {
    std::vector<IntVec> out;
    IntVec v(d, -radius);
    for (;;) {
        out.push_back(v);
        std::size_t i = d;
        while (i > 0 && v[i - 1] == radius) v[--i] = -radius;
        if (i == 0) return out;
        ++v[i - 1];
    }
}

Report invariance_check(const Subdivision& s, const Coefficients& k, const std::vector<IntVec>& degrees) {
    Report r;
    r.name = "invariance_check";
    auto cert = is_subdivision(s.refined, s.coarse);
    if (!cert.holds) {
        r.fail("not a subdivision: " + cert.witness);
        return r;
    }
    json nonzero = json::array();
    for (std::size_t q = 0; q <= s.coarse.d; ++q) {
        auto a = cohomology(s.coarse, k, ToricDivisor::zero(s.coarse), q, degrees);
        auto b = cohomology(s.refined, k, ToricDivisor::zero(s.refined), q, degrees);
        for (const auto& m : degrees) {
            const auto &ha = a.H.at(m), &hb = b.H.at(m);
            const std::size_t top = std::max(ha.size(), hb.size());
            for (std::size_t i = 0; i < top; ++i) {
                ModuleDesc x = i < ha.size() ? ha[i] : ModuleDesc{}, y = i < hb.size() ? hb[i] : ModuleDesc{};
                r.check(x == y, "q_log=" + std::to_string(q) + " H^" + std::to_string(i) + " at " + vec_str(m) + ": " +
                                    x.to_string() + " vs " + y.to_string());
                if (!x.is_zero() && q == 0) nonzero.push_back({{"degree", m}, {"i", i}, {"module", x.to_string()}});
            }
            r.check(a.euler(m) == b.euler(m), "Euler characteristic differs at " + vec_str(m));
        }
    }
    r.data["subdivision"] = s.to_json();
    r.data["degrees"] = degrees.size();
    r.data["nonzero_O"] = nonzero;
    return r;
}

Report pone_bar_check(const Coefficients& k, std::int64_t radius) {
    Report r;
    r.name = "pone_bar_check";
    // Chart U0 = Spec k[t] (no log), U1 = Spec k[1/t] (log at infinity), overlap k[t, 1/t].
    // Degree j basis: O: t^j on U0 (j >= 0), on U1 (j <= 0), overlap always.
    // Omega^1: t^{j-1} dt on U0 (j >= 1), t^{j} dt/t on U1 (j <= 0), overlap t^{j-1} dt always.
    Fan P1 = Fan::named("P1");
    ToricDivisor zero = ToricDivisor::zero(P1), minus_zero = zero;
    minus_zero.coeff[P1.ray_index({1})] = -1;
    std::vector<IntVec> degrees;
    for (std::int64_t j = -radius; j <= radius; ++j) degrees.push_back({j});
    auto toric_O = cohomology(P1, k, zero, 0, degrees), toric_W = cohomology(P1, k, minus_zero, 0, degrees);
    json table = json::array();
    for (std::size_t d = 0; d <= 2; ++d) {
        std::vector<std::size_t> H0(degrees.size()), H1(degrees.size());
        for (std::size_t i = 0; i < degrees.size(); ++i) {
            const std::int64_t j = degrees[i][0];
            bool u0 = false, u1 = false, u01 = false;
            if (d == 0) u0 = j >= 0, u1 = j <= 0, u01 = true;
            if (d == 1) u0 = j >= 1, u1 = j <= 0, u01 = true;
            // restriction is the identity on basis monomials: C^0 -> C^1 is [1, -1] on the live charts
            IntMatrix A(u01 ? 1 : 0, (u0 ? 1 : 0) + (u1 ? 1 : 0));
            std::size_t c = 0;
            if (u01 && u0) A(0, c) = 1;
            if (u0) ++c;
            if (u01 && u1) A(0, c) = -1;
            const std::size_t rk = rank_over(A, k);
            H0[i] = A.cols() - rk;
            H1[i] = A.rows() - rk;
            std::string at = "d=" + std::to_string(d) + " degree " + std::to_string(j);
            if (d == 0) {
                r.check(H0[i] == (j == 0 ? 1u : 0u), at + ": H^0 of O is not k in degree 0 only");
                r.check(H1[i] == 0, at + ": H^1 of O is nonzero");
                r.check(toric_O.H.at(degrees[i])[0].free_rank == H0[i] && toric_O.H.at(degrees[i])[1].free_rank == H1[i],
                        at + ": differs from the toric Cech complex of O");
            } else if (d == 1) {
                r.check(H0[i] == 0 && H1[i] == 0, at + ": relative log forms have cohomology");
                r.check(toric_W.H.at(degrees[i])[0].free_rank == H0[i] && toric_W.H.at(degrees[i])[1].free_rank == H1[i],
                        at + ": differs from the toric Cech complex of O(-D_0)");
            } else {
                r.check(A.rows() == 0 && A.cols() == 0, at + ": Omega^2 of a curve is not zero");
            }
        }
        std::size_t s0 = 0, s1 = 0;
        for (std::size_t i = 0; i < degrees.size(); ++i) s0 += H0[i], s1 += H1[i];
        table.push_back({{"d", d}, {"H0", s0}, {"H1", s1}});
    }
    r.data["window"] = radius;
    r.data["totals"] = table;
    return r;
}

}  // namespace loghh
