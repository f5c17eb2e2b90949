#include "models.hpp"

#include <algorithm>

namespace loghh {

const ModuleDesc& HomotopyTable::at(std::size_t n, const IntVec& m) const {
    if (n > qmax)
        throw PreconditionError("homotopy degree " + std::to_string(n) + " is above the truncation " +
                                std::to_string(qmax));
    auto it = pi.find(n);
    if (it == pi.end()) throw PreconditionError("homotopy degree " + std::to_string(n) + " was not computed");
    auto jt = it->second.find(m);
    if (jt == it->second.end()) throw PreconditionError("grading degree " + vec_str(m) + " is outside the window");
    return jt->second;
}

json HomotopyTable::to_json() const {
    json p = json::object();
    for (const auto& [n, row] : pi) {
        json r = json::object();
        for (const auto& [m, M] : row) r[vec_str(m)] = module_json(M);
        p[std::to_string(n)] = r;
    }
    return json{{"qmax", qmax}, {"shape", shape}, {"pi", p}};
}

std::vector<IntVec> degree_box(const AffineMonoid& M, std::int64_t radius) {
    const std::size_t d = M.ambient_rank();
    std::vector<IntVec> out;
    IntVec v(d, -radius);
    for (;;) {
        if (M.contains(v)) out.push_back(v);
        std::size_t i = 0;
        while (i < d && v[i] == radius) v[i++] = -radius;
        if (i == d) break;
        ++v[i];
    }
    std::sort(out.begin(), out.end());
    return out;
}

HomotopyTable homology_table(const GradedComplex& c, std::size_t qmax, const BarOptions& opt) {
    HomotopyTable t;
    t.qmax = qmax;
    t.degrees = c.degrees;
    for (const auto& p : c.pieces)
        if (p.dims.size() < qmax + 2) throw PreconditionError("complex is too short for the requested truncation");
    const std::size_t nd = c.degrees.size(), nq = qmax + 1;
    std::vector<ModuleDesc> out(nd * nq);
    detail::for_each_index(nd * nq, opt.parallel, [&](std::size_t i) {
        out[i] = sparse_homology(c.pieces[i / nq], i % nq, c.k);
    });
    for (std::size_t n = 0; n < nq; ++n)
        for (std::size_t i = 0; i < nd; ++i) t.pi[n][c.degrees[i]] = out[i * nq + n];
    return t;
}

namespace detail {

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

ModuleDesc copies(const ModuleDesc& M, std::size_t c) {
    ModuleDesc out;
    for (std::size_t i = 0; i < c; ++i) out = direct_sum(out, M);
    return out;
}

}  // namespace

HomotopyTable chart_table(const EffectiveChart& e, const PreLogRing& A, std::size_t qmax,
                          const std::vector<IntVec>& degrees, const BarOptions& opt, const std::string& shape) {
    HomotopyTable t;
    t.qmax = qmax;
    t.degrees = degrees;
    t.shape = shape;
    std::vector<ModuleDesc> H(qmax + 1);
    for (std::size_t a = 0; a <= qmax; ++a) H[a] = group_homology(e.cokernel, a, A.coeff);
    std::vector<std::vector<ModuleDesc>> rows(degrees.size(), std::vector<ModuleDesc>(qmax + 1));
    for_each_index(degrees.size(), opt.parallel, [&](std::size_t i) {
        const IntVec& m = degrees[i];
        if (!A.has_monomial(m)) return;
        auto dec = e.decompose(m);
        if (!dec) throw std::logic_error("chart decomposition failed at " + vec_str(m));
        std::size_t u = 0;
        for (std::size_t j = 0; j < e.free_gens.size(); ++j)
            if (!e.free_hit[j] && dec->second[j] > 0) ++u;
        for (std::size_t n = 0; n <= qmax; ++n)
            for (std::size_t a = 0; a <= n; ++a) rows[i][n] = direct_sum(rows[i][n], copies(H[a], binomial(u, n - a)));
    });
    for (std::size_t n = 0; n <= qmax; ++n)
        for (std::size_t i = 0; i < degrees.size(); ++i) t.pi[n][degrees[i]] = rows[i][n];
    return t;
}

PreLogMap trivial_log_map(const MonoidHom& theta, const Coefficients& k) {
    return PreLogMap(PreLogRing::trivial_log(theta.source(), k), PreLogRing::trivial_log(theta.target(), k),
                     theta.matrix(), IntMatrix(0, 0));
}

EffectiveChart checked_chart(const PreLogMap& f) {
    EffectiveChart e;
    try {
        e = effective_chart(f);
    } catch (const PreconditionError& err) {
        throw Unsupported(std::string("no chart decomposition: ") + err.what());
    }
    if (!e.ring_ok) {
        std::string why = "no chart decomposition";
        for (const auto& ev : e.evidence) why += "; " + ev;
        throw Unsupported(why);
    }
    return e;
}

}  // namespace detail

HomotopyTable cyclic_bar_homology(const MonoidHom& theta, const Coefficients& k, std::size_t qmax,
                                  const std::vector<IntVec>& degrees, const BarOptions& opt) {
    if (theta.target().is_sharp()) {
        auto t = homology_table(cyclic_bar_complex(theta, {}, k, qmax + 1, degrees, opt), qmax, opt);
        t.shape = "enumerated cyclic bar";
        return t;
    }
    PreLogMap f = detail::trivial_log_map(theta, k);
    return detail::chart_table(detail::checked_chart(f), f.target, qmax, degrees, opt,
                               "closed form: units and free directions");
}

HomotopyTable replete_bar_homology(const MonoidHom& theta, const Coefficients& k, std::size_t qmax,
                                   const std::vector<IntVec>& degrees, const BarOptions& opt) {
    (void)opt;
    HomotopyTable t;
    t.qmax = qmax;
    t.degrees = degrees;
    t.shape = "closed form: M x B(G)";
    FgAbGroup G = group_cokernel(theta);
    for (std::size_t n = 0; n <= qmax; ++n) {
        ModuleDesc Hn = group_homology(G, n, k);
        for (const auto& m : degrees) t.pi[n][m] = theta.target().contains(m) ? Hn : ModuleDesc{};
    }
    return t;
}

HomotopyTable replete_bar_moore(const MonoidHom& theta, const Coefficients& k, std::size_t qmax,
                                const std::vector<IntVec>& degrees, const BarOptions& opt) {
    const AffineMonoid& M = theta.target();
    const std::size_t r = M.rank();
    std::vector<IntVec> image;
    for (std::size_t j = 0; j < theta.group_map().cols(); ++j) image.push_back(theta.group_map().column(j));
    const LatticeQuotient G(image, r);
    const std::size_t f = G.group().free_rank, tr = G.group().torsion.size(), w = f + tr;
    std::vector<std::int64_t> orders;
    for (const auto& o : G.group().torsion) orders.push_back(to_i64(o));

    // inhomogeneous tuples (g_1..g_q) of codes, free partial sums cut to diameter <= radius
    std::vector<std::vector<IntVec>> level(qmax + 2);
    for (std::size_t q = 0; q <= qmax + 1; ++q) {
        std::vector<IntVec> tors{IntVec{}};
        for (std::size_t j = 0; j < q; ++j) {
            std::vector<IntVec> next;
            for (const auto& p : tors) {
                IntVec code(tr, 0);
                for (;;) {
                    next.push_back(concat(p, code));
                    std::size_t c = 0;
                    while (c < tr && code[c] + 1 == orders[c]) code[c++] = 0;
                    if (c == tr) break;
                    ++code[c];
                }
            }
            tors = std::move(next);
        }
        for (const auto& sums : detail::rips_sequences(f, q, opt.rips_radius)) {
            for (const auto& tp : tors) {
                IntVec g;
                bool nondeg = true;
                for (std::size_t j = 0; j < q; ++j) {
                    IntVec e(w);
                    for (std::size_t c = 0; c < f; ++c) e[c] = sums[j * f + c] - (j ? sums[(j - 1) * f + c] : 0);
                    for (std::size_t c = 0; c < tr; ++c) e[f + c] = tp[j * tr + c];
                    nondeg = nondeg && !is_zero(e);
                    g.insert(g.end(), e.begin(), e.end());
                }
                if (nondeg) level[q].push_back(std::move(g));
            }
        }
        std::sort(level[q].begin(), level[q].end());
    }

    GradedComplex gc{k, degrees, std::vector<SparseComplex>(degrees.size())};
    detail::for_each_index(degrees.size(), opt.parallel, [&](std::size_t i) {
        const IntVec& m = degrees[i];
        detail::Levels L(qmax + 2);
        if (!M.contains(m)) {
            gc.pieces[i] = detail::assemble(L, [](std::size_t, const IntVec&, std::size_t) { return std::nullopt; });
            return;
        }
        const IntVec mg = *M.to_group(m);
        for (std::size_t q = 0; q <= qmax + 1; ++q)
            for (const auto& g : level[q]) L.add(q, g);
        gc.pieces[i] = detail::assemble(L, [&](std::size_t q, const IntVec& g, std::size_t face) -> std::optional<IntVec> {
            // lift to a cyclic tuple in M^gp with y_0 = m - sum of the lifts, apply the cyclic face, reduce
            IntVec y0 = mg, lifted;
            for (std::size_t j = 0; j < q; ++j) {
                IntVec yj = G.lift(IntVec(g.begin() + static_cast<std::ptrdiff_t>(j * w),
                                          g.begin() + static_cast<std::ptrdiff_t>((j + 1) * w)));
                y0 = sub(y0, yj);
                lifted.insert(lifted.end(), yj.begin(), yj.end());
            }
            IntVec fy = detail::cyclic_face(concat(y0, lifted), r, q, face);
            IntVec out;
            for (std::size_t j = 1; j < q; ++j) {
                IntVec code = G.reduce(IntVec(fy.begin() + static_cast<std::ptrdiff_t>(j * r),
                                              fy.begin() + static_cast<std::ptrdiff_t>((j + 1) * r)));
                if (is_zero(code)) return std::nullopt;
                out.insert(out.end(), code.begin(), code.end());
            }
            return out;
        });
    });
    auto t = homology_table(gc, qmax, opt);
    t.shape = "enumerated replete bar";
    return t;
}

HomotopyTable hochschild_homology(const PreLogMap& f, std::size_t qmax, const std::vector<IntVec>& degrees,
                                  const BarOptions& opt) {
    if (!f.source.ideal.empty()) throw Unsupported("Hochschild homology needs a monoid algebra as base");
    const Coefficients& k = f.target.coeff;
    if (f.target.ring_monoid.is_sharp()) {
        auto t = homology_table(cyclic_bar_complex(f.monoid_map, f.target.ideal, k, qmax + 1, degrees, opt), qmax, opt);
        t.shape = "enumerated cyclic bar";
        return t;
    }
    if (!f.target.ideal.empty()) throw Unsupported("Hochschild homology of a monomial quotient with units");
    PreLogMap g = detail::trivial_log_map(f.monoid_map, k);
    return detail::chart_table(detail::checked_chart(g), g.target, qmax, degrees, opt,
                               "closed form: units and free directions");
}

HomotopyTable loghh_homology(const PreLogMap& f, std::size_t qmax, const std::vector<IntVec>& degrees,
                             const BarOptions& opt) {
    std::string why;
    if (f.source.ideal.empty() && f.target.ideal.empty()) {
        try {
            return detail::chart_table(detail::checked_chart(f), f.target, qmax, degrees, opt,
                                       "closed form: chart decomposition");
        } catch (const Unsupported& e) {
            why = e.what();
        }
    }
    try {
        return loghh_enumerated(f, qmax, degrees, opt);
    } catch (const Unsupported& e) {
        throw Unsupported(why.empty() ? std::string(e.what()) : why + "; " + e.what());
    }
}

HomotopyTable loghh_enumerated(const PreLogMap& f, std::size_t qmax, const std::vector<IntVec>& degrees,
                               const BarOptions& opt) {
    auto t = homology_table(loghh_complex(f, qmax + 1, degrees, opt), qmax, opt);
    t.shape = "enumerated log bar, radius " + std::to_string(opt.rips_radius);
    return t;
}

}  // namespace loghh
