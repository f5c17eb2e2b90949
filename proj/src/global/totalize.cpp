#include "cech.hpp"

#include "loghh/cone.hpp"

#include <algorithm>

namespace loghh {

namespace detail {

PieceForms::PieceForms(const PreLogMap& f) : f_(f), e_(effective_chart(f)) {
    if (!e_.ring_ok) {
        std::string why = "piece " + f.target.to_string() + " has no chart decomposition";
        for (const auto& ev : e_.evidence) why += "; " + ev;
        throw Unsupported(why);
    }
    if (!e_.cokernel.torsion.empty()) throw Unsupported("piece " + f.target.to_string() + " has torsion in its log cokernel");
    const AffineMonoid& M = f.target.ring_monoid;
    for (const auto& v : e_.log_basis) log_dirs_.push_back(M.from_group(v));
    std::vector<IntVec> base_dirs;
    for (const auto& r : f.source.ring_monoid.generators()) base_dirs.push_back(f.monoid_map.apply(r));
    for (const auto& p : f.source.prelog_monoid.generators())
        base_dirs.push_back(f.target.structure.apply(f.prelog_map.apply(p)));
    const std::size_t d = M.ambient_rank();
    proj_ = base_dirs.empty() ? IntMatrix::identity(d)
                              : IntMatrix::from_rows(kernel_basis(IntMatrix::from_rows(base_dirs, d)), d);
}

std::size_t PieceForms::rows(std::size_t q) const {
    std::size_t n = proj_.rows(), r = 1;
    if (q > n) return 0;
    for (std::size_t i = 1; i <= q; ++i) r = r * (n - q + i) / i;
    return r;
}

IntMatrix PieceForms::basis(std::size_t q, const IntVec& m) const {
    if (!f_.target.has_monomial(m)) return IntMatrix(rows(q), 0);
    auto dec = e_.decompose(m);
    if (!dec) throw std::logic_error("chart decomposition failed at " + vec_str(m));
    std::vector<IntVec> dirs;
    for (const auto& v : log_dirs_) dirs.push_back(proj_.apply(v));
    for (std::size_t j = 0; j < e_.free_gens.size(); ++j)
        if (!e_.free_hit[j] && dec->second[j] > 0) dirs.push_back(proj_.apply(e_.free_gens[j]));
    const std::size_t n = proj_.rows();
    std::vector<IntVec> b = dirs.empty() ? std::vector<IntVec>{} : lattice_basis(dirs, n);
    std::vector<std::vector<std::size_t>> rsub, csub;
    for_each_subset(n, q, [&](const std::vector<std::size_t>& S) { rsub.push_back(S); });
    for_each_subset(b.size(), q, [&](const std::vector<std::size_t>& S) { csub.push_back(S); });
    IntMatrix B(rsub.size(), csub.size());
    for (std::size_t c = 0; c < csub.size(); ++c)
        for (std::size_t r = 0; r < rsub.size(); ++r) {
            std::vector<std::vector<Int>> a(q, std::vector<Int>(q));
            for (std::size_t i = 0; i < q; ++i)
                for (std::size_t j = 0; j < q; ++j) a[i][j] = static_cast<long>(b[csub[c][j]][rsub[r][i]]);
            B(r, c) = determinant(a);
        }
    return B;
}

PreLogMap without_log(const PreLogMap& f) {
    return PreLogMap(PreLogRing::trivial_log(f.source.ring_monoid, f.source.coeff),
                     PreLogRing::trivial_log(f.target.ring_monoid, f.target.coeff), f.monoid_map.matrix(),
                     IntMatrix(0, 0));
}

IntMatrix restriction(const IntMatrix& big, const IntMatrix& small) {
    IntMatrix R(big.cols(), small.cols());
    for (std::size_t j = 0; j < small.cols(); ++j) {
        IntVec col = small.column(j);
        std::optional<IntVec> x;
        if (big.cols() > 0) x = solve_integer(big, col);
        if (!x) throw std::logic_error("forms do not restrict: " + vec_str(col) + " is not in the smaller chart");
        for (std::size_t i = 0; i < x->size(); ++i) R(i, j) = static_cast<long>((*x)[i]);
    }
    return R;
}

CechPieces cech_pieces(const GluedLogScheme& X, Theory theory) {
    CechPieces P;
    const std::size_t n = X.charts.size(), depth = X.depth();
    P.simplices.resize(depth);
    P.forms.resize(depth);
    for (std::size_t p = 0; p < depth; ++p)
        for_each_subset(n, p + 1, [&](const std::vector<std::size_t>& I) {
            P.simplices[p].push_back(I);
            PreLogMap f = X.structure(I);
            P.forms[p].emplace_back(theory == Theory::HH ? without_log(f) : f);
        });
    return P;
}

CechLayer cech_layer(const CechPieces& P, std::size_t q, const IntVec& m, const Coefficients& k) {
    CechLayer L;
    const std::size_t n = P.simplices.size();
    L.simplices = P.simplices;
    L.bases.resize(n);
    for (std::size_t p = 0; p < n; ++p)
        for (const auto& F : P.forms[p]) L.bases[p].push_back(F.basis(q, m));
    std::vector<std::vector<std::size_t>> offset(n);
    L.complex.dims.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        std::size_t o = 0;
        for (const auto& B : L.bases[p]) {
            offset[p].push_back(o);
            o += B.cols();
        }
        L.complex.dims[n - 1 - p] = o;
    }
    L.complex.d.resize(n > 0 ? n - 1 : 0);
    for (std::size_t p = 0; p + 1 < n; ++p) {
        SparseMatrix A(L.complex.dims[n - 2 - p], L.complex.dims[n - 1 - p]);
        for (std::size_t t = 0; t < P.simplices[p + 1].size(); ++t) {
            const auto& T = P.simplices[p + 1][t];
            const IntMatrix& BT = L.bases[p + 1][t];
            for (std::size_t drop = 0; drop < T.size(); ++drop) {
                std::vector<std::size_t> S;
                for (std::size_t i = 0; i < T.size(); ++i)
                    if (i != drop) S.push_back(T[i]);
                auto it = std::lower_bound(P.simplices[p].begin(), P.simplices[p].end(), S);
                std::size_t s = static_cast<std::size_t>(it - P.simplices[p].begin());
                IntMatrix R = restriction(BT, L.bases[p][s]);
                const std::int64_t sign = drop % 2 ? -1 : 1;
                for (std::size_t i = 0; i < R.rows(); ++i)
                    for (std::size_t j = 0; j < R.cols(); ++j)
                        if (R(i, j) != 0) A.add(offset[p + 1][t] + i, offset[p][s] + j, sign * to_i64(R(i, j)));
            }
        }
        A.normalize();
        L.complex.d[n - 2 - p] = A;
    }
    L.H.resize(n);
    for (std::size_t p = 0; p < n; ++p) L.H[p] = sparse_homology(L.complex, n - 1 - p, k);
    return L;
}

}  // namespace detail

std::string theory_name(Theory t) {
    switch (t) {
        case Theory::HH:
            return "HH";
        case Theory::LogHH:
            return "logHH";
        case Theory::Omega:
            return "Omega";
    }
    return "?";
}

const ModuleDesc& TotalizedTable::at(std::int64_t n, const IntVec& m) const {
    static const ModuleDesc zero;
    auto it = pi.find(n);
    if (it == pi.end()) return zero;
    auto jt = it->second.find(m);
    return jt == it->second.end() ? zero : jt->second;
}

ModuleDesc TotalizedTable::total(std::int64_t n) const {
    ModuleDesc out;
    auto it = pi.find(n);
    if (it != pi.end())
        for (const auto& [m, M] : it->second) out = direct_sum(out, M);
    return out;
}

json TotalizedTable::to_json() const {
    json j;
    j["theory"] = theory_name(theory);
    if (theory == Theory::Omega) j["omega_q"] = omega_q;
    j["qmax"] = qmax;
    j["cover_depth"] = depth;
    j["degrees"] = degrees.size();
    json rows = json::array();
    for (const auto& [n, per] : pi) {
        json row;
        row["n"] = n;
        row["total"] = module_json(total(n));
        row["flagged"] = flagged.count(n) > 0;
        json nz = json::array();
        for (const auto& [m, M] : per)
            if (!M.is_zero()) nz.push_back({{"degree", m}, {"module", module_json(M)}});
        row["nonzero"] = nz;
        rows.push_back(row);
    }
    j["pi"] = rows;
    j["certificates"] = certificates;
    return j;
}

TotalizedTable cech_totalize(const GluedLogScheme& X, Theory theory, std::size_t qmax,
                             const std::vector<IntVec>& degrees, std::size_t omega_q, const BarOptions& opt) {
    if (auto w = scheme_defect(X)) throw PreconditionError("cover is not glued: " + *w);
    for (const auto& m : degrees)
        if (m.size() != X.grading_rank()) throw PreconditionError("degree " + vec_str(m) + " has the wrong length");
    const Coefficients& k = X.base.coeff;
    TotalizedTable T;
    T.theory = theory;
    T.qmax = qmax;
    T.omega_q = omega_q;
    T.depth = X.depth();
    T.degrees = degrees;
    detail::CechPieces P = detail::cech_pieces(X, theory);
    const std::size_t qlo = theory == Theory::Omega ? omega_q : 0, qhi = theory == Theory::Omega ? omega_q : qmax;

    // HKR certificate: the forms lattice of every piece has the rank of the bar-model homology
    for (std::size_t p = 0; p < P.simplices.size(); ++p)
        for (std::size_t s = 0; s < P.simplices[p].size(); ++s) {
            PreLogMap f = X.structure(P.simplices[p][s]);
            HomotopyTable t = theory == Theory::HH ? hochschild_homology(detail::without_log(f), qhi, degrees, opt)
                                                   : loghh_homology(f, qhi, degrees, opt);
            for (std::size_t q = qlo; q <= qhi; ++q)
                for (const auto& m : degrees) {
                    const std::size_t r = P.forms[p][s].basis(q, m).cols();
                    if (!(t.at(q, m) == FgAbGroup::free(r)))
                        throw Unsupported("HKR certificate fails on a piece at " + vec_str(m) + ", q=" +
                                          std::to_string(q) + ": bar " + t.at(q, m).to_string() + ", forms rank " +
                                          std::to_string(r));
                }
            std::string idx;
            for (auto i : P.simplices[p][s]) idx += (idx.empty() ? "" : ",") + std::to_string(i);
            T.certificates.push_back("piece {" + idx + "}: forms rank = " + t.shape + " for q in [" +
                                     std::to_string(qlo) + "," + std::to_string(qhi) + "] on " +
                                     std::to_string(degrees.size()) + " degrees");
        }

    const std::size_t depth = T.depth;
    // H[q][i][p]
    std::vector<std::vector<std::vector<ModuleDesc>>> H(qhi + 1, std::vector<std::vector<ModuleDesc>>(degrees.size()));
    for (std::size_t q = qlo; q <= qhi; ++q) {
        const long nd = static_cast<long>(degrees.size());
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
        for (long i = 0; i < nd; ++i)
            H[q][static_cast<std::size_t>(i)] = detail::cech_layer(P, q, degrees[static_cast<std::size_t>(i)], k).H;
    }
    if (theory == Theory::Omega) {
        for (std::size_t p = 0; p < depth; ++p)
            for (std::size_t i = 0; i < degrees.size(); ++i) T.pi[static_cast<std::int64_t>(p)][degrees[i]] = H[omega_q][i][p];
        return T;
    }
    const std::int64_t lo = -static_cast<std::int64_t>(depth) + 1, hi = static_cast<std::int64_t>(qmax);
    for (std::int64_t n = lo; n <= hi; ++n) {
        if (n + static_cast<std::int64_t>(depth) - 1 > hi) T.flagged.insert(n);
        for (std::size_t i = 0; i < degrees.size(); ++i) {
            ModuleDesc acc;
            for (std::size_t p = 0; p < depth; ++p) {
                const std::int64_t q = n + static_cast<std::int64_t>(p);
                if (q < 0 || q > hi) continue;
                acc = direct_sum(acc, H[static_cast<std::size_t>(q)][i][p]);
            }
            T.pi[n][degrees[i]] = acc;
        }
    }
    return T;
}

}  // namespace loghh
