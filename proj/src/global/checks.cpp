#include "cech.hpp"

#include "loghh/cone.hpp"

#include <algorithm>

namespace loghh {

namespace {

std::size_t dim(const ModuleDesc& M) { return M.free_rank; }

// Exactness bookkeeping for X_n -f-> Y_n -g-> Z_{n-1} -delta-> X_{n-1} with the ranks of f known (and of g when
// given); ranks of the unconstructed maps are forced from the bottom up.
struct Ladder {
    std::vector<std::size_t> X, Y, Z, f;
    std::vector<std::optional<std::size_t>> g;  // explicit rank of g_n when available
};

void bookkeeping(Report& r, const Ladder& L, const std::string& where, json& out) {
    const std::size_t top = L.Y.size();
    std::size_t g_forced = 0;  // rank of g_n, starting with g_0 = 0
    json rows = json::array();
    for (std::size_t n = 0; n < top; ++n) {
        const std::string at = where + " n=" + std::to_string(n);
        r.check(L.f[n] <= std::min(L.X[n], L.Y[n]), at + ": rank of f exceeds its dimensions");
        r.check(L.f[n] + g_forced == L.Y[n], at + ": exactness at the log term fails (" + std::to_string(L.f[n]) +
                                                 " + " + std::to_string(g_forced) + " != " + std::to_string(L.Y[n]) + ")");
        if (L.g[n]) r.check(*L.g[n] == g_forced, at + ": explicit residue rank differs from the forced rank");
        // delta_n : Z_n -> X_n has image ker f_n
        const std::size_t delta = L.X[n] - std::min(L.X[n], L.f[n]);
        const std::size_t zn = n < L.Z.size() ? L.Z[n] : 0;
        r.check(delta <= zn, at + ": kernel of f is larger than the shifted third term");
        rows.push_back({{"n", n}, {"X", L.X[n]}, {"Y", L.Y[n]}, {"Z_shift", n == 0 ? 0 : L.Z[n - 1]}, {"rank_f", L.f[n]},
                        {"rank_g", g_forced}, {"rank_delta", delta}});
        g_forced = zn - std::min(zn, delta);
    }
    out.push_back({{"degree", where}, {"rows", rows}});
}

std::vector<IntVec> line_degrees(std::int64_t radius) {
    std::vector<IntVec> out;
    for (std::int64_t j = 0; j <= radius; ++j) out.push_back({j});
    return out;
}

// Residue on one-variable log forms: t^m dlog t -> t^m mod t, nonzero only at m = 0.
IntMatrix residue_matrix(const IntMatrix& BY, std::size_t n, const IntVec& m, std::size_t z_dim) {
    IntMatrix G(z_dim, BY.cols());
    if (n == 1 && z_dim == 1 && m[0] == 0)
        for (std::size_t j = 0; j < BY.cols(); ++j) G(0, j) = BY(0, j);
    return G;
}

Report residue_affine(std::size_t nmax, const Coefficients& k, std::int64_t radius, bool global_route) {
    Report r;
    r.name = "residue_check";
    AffineMonoid line(1, {{1}});
    PreLogRing A = PreLogRing::trivial_log(line, k);
    PreLogRing Alog(k, line, {}, line, IntMatrix::identity(1));
    PreLogRing Z(k, line, {{1}}, AffineMonoid::trivial(0), IntMatrix(1, 0));
    auto degrees = line_degrees(radius);
    std::map<IntVec, Ladder> ladders;
    for (const auto& m : degrees) {
        Ladder& L = ladders[m];
        L.X.resize(nmax + 1);
        L.Y.resize(nmax + 1);
        L.Z.resize(nmax + 1);
        L.f.resize(nmax + 1);
        L.g.resize(nmax + 1);
    }
    HomotopyTable tz = hochschild_homology(PreLogMap::over_point(Z), nmax, degrees);
    if (global_route) {
        auto TX = cech_totalize(standard_scheme("A1", k), Theory::HH, nmax, degrees);
        auto TY = cech_totalize(standard_scheme("A1_log", k), Theory::LogHH, nmax, degrees);
        for (const auto& m : degrees)
            for (std::size_t n = 0; n <= nmax; ++n) {
                ladders[m].X[n] = dim(TX.at(static_cast<std::int64_t>(n), m));
                ladders[m].Y[n] = dim(TY.at(static_cast<std::int64_t>(n), m));
            }
        r.data["route"] = "cech_totalize of the one-chart covers";
    } else {
        HomotopyTable tx = hochschild_homology(PreLogMap::over_point(A), nmax, degrees);
        HomotopyTable ty = loghh_homology(PreLogMap::over_point(Alog), nmax, degrees);
        for (const auto& m : degrees)
            for (std::size_t n = 0; n <= nmax; ++n) {
                ladders[m].X[n] = dim(tx.at(n, m));
                ladders[m].Y[n] = dim(ty.at(n, m));
            }
        r.data["route"] = "chart tables";
    }
    detail::PieceForms FX(PreLogMap::over_point(A)), FY(PreLogMap::over_point(Alog));
    json maps = json::array(), books = json::array();
    for (const auto& m : degrees) {
        Ladder& L = ladders[m];
        for (std::size_t n = 0; n <= nmax; ++n) {
            L.Z[n] = dim(tz.at(n, m));
            IntMatrix BX = FX.basis(n, m), BY = FY.basis(n, m);
            r.check(BX.cols() == L.X[n] && BY.cols() == L.Y[n], "forms lattices disagree with the tables at " + vec_str(m));
            IntMatrix F = detail::restriction(BY, BX);
            L.f[n] = F.cols() == 0 || F.rows() == 0 ? 0 : rank_over(F, k);
            const std::size_t zprev = n == 0 ? 0 : L.Z[n - 1];
            IntMatrix G = residue_matrix(BY, n, m, zprev);
            L.g[n] = G.rows() == 0 || G.cols() == 0 ? 0 : rank_over(G, k);
            if (F.cols() > 0 && G.rows() > 0) r.check((G * F).is_zero(), "residue after inclusion is nonzero at " + vec_str(m));
            if (n == 1 && m[0] == 1)
                maps.push_back({{"dt", "t dlog t"}, {"coefficient", F.rows() == 1 && F.cols() == 1 ? to_i64(F(0, 0)) : 0}});
            if (n == 1 && m[0] == 1) r.check(F.rows() == 1 && F.cols() == 1 && F(0, 0) == 1, "dt does not map to t dlog t");
        }
        bookkeeping(r, L, vec_str(m), books);
    }
    r.data["maps"] = maps;
    r.data["bookkeeping"] = books;
    r.data["sequence"] = "0 -> k[t]dt -> k[t]dlog t -> k -> 0 in homotopy degree 1";
    return r;
}

Report residue_blowup(std::size_t nmax, const Coefficients& k, std::int64_t radius) {
    Report r;
    r.name = "residue_check";
    auto degrees = lattice_box(2, radius);
    GluedLogScheme A2 = standard_scheme("A2", k), Bl = standard_scheme("blowup_A2", k);
    auto TX = cech_totalize(A2, Theory::HH, nmax, degrees);
    auto TY = cech_totalize(Bl, Theory::LogHH, nmax + 1, degrees);
    for (std::int64_t n = 0; n <= static_cast<std::int64_t>(nmax); ++n)
        r.check(!TY.flagged.count(n), "log term degree " + std::to_string(n) + " is outside the trusted window");
    detail::PieceForms FX(detail::without_log(A2.structure({0})));
    detail::CechPieces P = detail::cech_pieces(Bl, Theory::LogHH);
    json books = json::array();
    for (const auto& m : degrees) {
        Ladder L;
        L.X.resize(nmax + 1);
        L.Y.resize(nmax + 1);
        L.Z.resize(nmax + 1);
        L.f.resize(nmax + 1);
        L.g.resize(nmax + 1);
        for (std::size_t n = 0; n <= nmax; ++n) {
            L.X[n] = dim(TX.at(static_cast<std::int64_t>(n), m));
            L.Y[n] = dim(TY.at(static_cast<std::int64_t>(n), m));
            L.Z[n] = n == 0 && is_zero(m) ? 1 : 0;
            // pullback of forms into the Cech 0-cochains; it must land in the cocycles
            IntMatrix BX = FX.basis(n, m);
            detail::CechLayer C = detail::cech_layer(P, n, m, k);
            IntMatrix F(0, BX.cols());
            for (const auto& B : C.bases[0]) F = F.vstack(detail::restriction(B, BX));
            L.f[n] = F.rows() == 0 || F.cols() == 0 ? 0 : rank_over(F, k);
            if (!C.complex.d.empty() && F.rows() > 0 && F.cols() > 0) {
                IntMatrix d0 = C.complex.d.back().to_dense();
                r.check((d0 * F).is_zero(), "pulled-back forms are not a Cech cocycle at " + vec_str(m));
            }
        }
        r.check(L.X[0] == L.Y[0] && L.f[0] == L.X[0], "pi_0 of HH(A^2) and logHH(Bl, E) differ at " + vec_str(m));
        bool interesting = false;
        for (std::size_t n = 0; n <= nmax; ++n) interesting = interesting || L.X[n] != L.Y[n];
        json sink = json::array();
        bookkeeping(r, L, vec_str(m), interesting ? books : sink);
    }
    r.data["route"] = "cech_totalize of (Bl, E) against the chart of A^2";
    r.data["window"] = radius;
    r.data["bookkeeping"] = books;
    r.data["pi0"] = "HH_0(A^2) = logHH_0(Bl, E) = k[x,y] on the window";
    return r;
}

}  // namespace

Report residue_check(const std::string& config, std::size_t nmax, const Coefficients& k, std::int64_t radius,
                     std::int64_t exponent) {
    if (config == "affine") {
        if (exponent != 1)
            throw Unsupported("residue_check: the forms of (k[t], <t^e>) for e > 1 do not embed in the torus forms");
        return residue_affine(nmax, k, radius, false);
    }
    if (config == "affine_line") return residue_affine(nmax, k, radius, true);
    if (config == "blowup") return residue_blowup(nmax, k, radius);
    throw Unsupported("residue_check: unknown configuration '" + config + "'");
}

Report projective_bundle_check(std::size_t n, const PreLogRing& S, std::size_t qmax, std::int64_t radius,
                               const BarOptions& opt) {
    Report r;
    r.name = "projective_bundle_check";
    if (n > 2) throw ScaleError("projective_bundle_check: n = " + std::to_string(n) + " exceeds 2");
    const std::size_t ds = S.rank();
    auto sdeg = lattice_box(ds, radius);
    HomotopyTable base = loghh_homology(PreLogMap::identity(S), qmax, sdeg, opt);
    if (n == 0) {
        r.data["profile"] = base.to_json();
        return r;
    }
    GluedLogScheme X = over_base(standard_scheme("P" + std::to_string(n), S.coeff), S);
    auto degrees = lattice_box(n + ds, radius);
    TotalizedTable T = cech_totalize(X, Theory::LogHH, qmax, degrees, 0, opt);
    json profile = json::array();
    for (const auto& [j, per] : T.pi) {
        if (T.flagged.count(j)) continue;
        for (const auto& m : degrees) {
            IntVec mp(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(n)), ms(m.begin() + static_cast<std::ptrdiff_t>(n), m.end());
            ModuleDesc expect;
            if (j >= 0 && is_zero(mp))
                for (std::size_t c = 0; c <= n; ++c) expect = direct_sum(expect, base.at(static_cast<std::size_t>(j), ms));
            r.check(T.at(j, m) == expect, "pi_" + std::to_string(j) + " at " + vec_str(m) + ": " + T.at(j, m).to_string() +
                                             " vs " + expect.to_string());
        }
        profile.push_back({{"n", j}, {"total", module_json(T.total(j))}});
    }
    r.data["n"] = n;
    r.data["base"] = S.to_string();
    r.data["profile"] = profile;
    r.data["flagged"] = std::vector<std::int64_t>(T.flagged.begin(), T.flagged.end());
    r.data["certificates"] = T.certificates;
    return r;
}

DescentCover kummer_cover(const MonoidHom& theta, const Coefficients& k) {
    DescentCover c;
    c.kind = DescentCover::Kind::Kummer;
    c.kummer = theta;
    c.k = k;
    c.label = "Kummer " + theta.source().to_string() + " -> " + theta.target().to_string();
    return c;
}

DescentCover zariski_cover(const GluedLogScheme& cover, const PreLogRing& target) {
    DescentCover c;
    c.kind = DescentCover::Kind::Zariski;
    c.cover = cover;
    c.target = target;
    c.k = target.coeff;
    c.label = "Zariski " + cover.name;
    return c;
}

namespace {

std::vector<IntVec> group_elements(const FgAbGroup& G) {
    std::vector<IntVec> out{IntVec(G.torsion.size(), 0)};
    for (std::size_t i = 0; i < G.torsion.size(); ++i) {
        std::vector<IntVec> next;
        for (const auto& v : out)
            for (std::int64_t a = 0; a < to_i64(G.torsion[i]); ++a) {
                IntVec w = v;
                w[i] = a;
                next.push_back(w);
            }
        out = next;
    }
    return out;
}

// Cobar complex of a G-graded module concentrated in class c: C^p = V (x) k[G]^{(x)p}, levels 0..top.
SparseComplex cobar(std::size_t rank, const std::vector<IntVec>& G, const IntVec& c,
                    std::size_t top) {
    const std::size_t g = G.size();
    auto index = [&](const IntVec& x) {
        return static_cast<std::size_t>(std::find(G.begin(), G.end(), x) - G.begin());
    };
    std::vector<std::size_t> words(top + 1, 1);
    for (std::size_t p = 1; p <= top; ++p) words[p] = words[p - 1] * g;
    SparseComplex cx;
    cx.dims.resize(top + 1);
    for (std::size_t p = 0; p <= top; ++p) cx.dims[top - p] = rank * words[p];
    cx.d.resize(top);
    const IntVec e = G.front();
    for (std::size_t p = 0; p < top; ++p) {
        SparseMatrix A(cx.dims[top - p - 1], cx.dims[top - p]);
        for (std::size_t w = 0; w < words[p]; ++w) {
            std::vector<IntVec> word(p);
            std::size_t x = w;
            for (std::size_t i = p; i-- > 0;) {
                word[i] = G[x % g];
                x /= g;
            }
            auto encode = [&](const std::vector<IntVec>& ws) {
                std::size_t code = 0;
                for (const auto& v : ws) code = code * g + index(v);
                return code;
            };
            std::vector<std::pair<std::size_t, std::int64_t>> terms;
            std::vector<IntVec> w0 = word;
            w0.insert(w0.begin(), c);
            terms.push_back({encode(w0), 1});
            for (std::size_t i = 0; i < p; ++i) {
                std::vector<IntVec> wi = word;
                wi.insert(wi.begin() + static_cast<std::ptrdiff_t>(i), word[i]);
                terms.push_back({encode(wi), (i + 1) % 2 ? -1 : 1});
            }
            std::vector<IntVec> wl = word;
            wl.push_back(e);
            terms.push_back({encode(wl), (p + 1) % 2 ? -1 : 1});
            for (std::size_t v = 0; v < rank; ++v)
                for (auto [code, s] : terms) A.add(code * rank + v, w * rank + v, s);
        }
        A.normalize();
        cx.d[top - p - 1] = A;
    }
    return cx;
}

Report descent_kummer(const DescentCover& c, std::size_t qmax, const std::vector<IntVec>& degrees, const BarOptions& opt) {
    Report r;
    r.name = "descent_check";
    const MonoidHom& theta = c.kummer;
    PreLogMap f = PreLogMap::canonical(theta, c.k);
    MapClassification cl = classify_map(f);
    r.data["classification"] = cl.to_json();
    if (!cl.integral.is_yes() || !cl.log_etale) {
        r.verdict = Verdict::Unsupported;
        r.notes.push_back("cover map is not classified integral and log etale over " + c.k.name());
        return r;
    }
    const AffineMonoid &P = theta.source(), &Q = theta.target();
    std::vector<IntVec> cols;
    for (std::size_t j = 0; j < theta.group_map().cols(); ++j) cols.push_back(theta.group_map().column(j));
    LatticeQuotient Gq(cols, Q.rank());
    const FgAbGroup& Gs = Gq.group();
    if (!Gs.is_finite()) throw PreconditionError("descent_check: Kummer cover with infinite cokernel");
    auto G = group_elements(Gs);
    HomotopyTable tb = loghh_homology(PreLogMap::over_point(PreLogRing::canonical(Q, c.k)), qmax, degrees, opt);
    std::vector<IntVec> pdeg;
    std::map<IntVec, IntVec> pre;
    for (const auto& m : degrees) {
        auto y = Q.to_group(m);
        if (!y || !Gq.is_zero(*y)) continue;
        auto x = solve_integer(theta.matrix(), m);
        if (!x) continue;
        pre[m] = *x;
        pdeg.push_back(*x);
    }
    HomotopyTable ta = loghh_homology(PreLogMap::over_point(PreLogRing::canonical(P, c.k)), qmax, pdeg, opt);
    const std::size_t top = 2;
    json rows = json::array();
    for (const auto& m : degrees) {
        auto y = Q.to_group(m);
        IntVec cls = y ? Gq.reduce(*y) : IntVec{};
        for (std::size_t q = 0; q <= qmax; ++q) {
            const ModuleDesc& V = tb.at(q, m);
            ModuleDesc W = pre.count(m) ? ta.at(q, pre[m]) : ModuleDesc{};
            if (V.is_zero() && W.is_zero()) continue;
            if (!V.torsion.empty()) throw Unsupported("descent_check: torsion in the cover's logHH");
            SparseComplex cx = cobar(V.free_rank, G, y ? cls : G.front(), top);
            for (std::size_t i = 0; i + 1 < cx.d.size(); ++i)
                r.check(composite_is_zero(cx.d[i], cx.d[i + 1]), "cobar differential does not square to zero");
            ModuleDesc H0 = sparse_homology(cx, top, c.k), H1 = sparse_homology(cx, top - 1, c.k);
            const std::string at = "q=" + std::to_string(q) + " at " + vec_str(m);
            r.check(H0 == W, at + ": Cech limit " + H0.to_string() + " vs base " + W.to_string());
            r.check(H1.is_zero(), at + ": first Cech cohomology " + H1.to_string());
            rows.push_back({{"q", q}, {"degree", m}, {"cover", module_json(V)}, {"limit", module_json(H0)}, {"base", module_json(W)}});
        }
    }
    r.data["group"] = Gs.to_string();
    r.data["rows"] = rows;
    return r;
}

Report descent_zariski(const DescentCover& c, std::size_t qmax, const std::vector<IntVec>& degrees, const BarOptions& opt) {
    Report r;
    r.name = "descent_check";
    TotalizedTable T = cech_totalize(c.cover, Theory::LogHH, qmax, degrees, 0, opt);
    HomotopyTable t = loghh_homology(PreLogMap::over_point(c.target), qmax, degrees, opt);
    for (const auto& [n, per] : T.pi) {
        if (T.flagged.count(n)) continue;
        for (const auto& m : degrees) {
            ModuleDesc expect = n >= 0 ? t.at(static_cast<std::size_t>(n), m) : ModuleDesc{};
            r.check(T.at(n, m) == expect, "pi_" + std::to_string(n) + " at " + vec_str(m) + ": limit " +
                                             T.at(n, m).to_string() + " vs " + expect.to_string());
        }
    }
    r.data["cover"] = c.cover.name;
    r.data["flagged"] = std::vector<std::int64_t>(T.flagged.begin(), T.flagged.end());
    r.data["limit"] = T.to_json();
    return r;
}

}  // namespace

Report descent_check(const DescentCover& c, std::size_t qmax, const std::vector<IntVec>& degrees, const BarOptions& opt) {
    Report r = c.kind == DescentCover::Kind::Kummer ? descent_kummer(c, qmax, degrees, opt) : descent_zariski(c, qmax, degrees, opt);
    r.data["label"] = c.label;
    return r;
}

}  // namespace loghh
