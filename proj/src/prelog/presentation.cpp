#include "loghh/prelog.hpp"

#include "loghh/detail/enumerate.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace loghh {


KahlerPresentation::KahlerPresentation(const PreLogMap& f) : f_(f), M_(f.target.ring_monoid) {
    if (!M_.splits()) throw Unsupported("ring monoid does not split off its units");
    units_ = M_.unit_basis();
    std::vector<IntVec> uint_basis;
    for (const auto& u : units_) uint_basis.push_back(*M_.to_group(u));
    modU_ = LatticeQuotient(uint_basis, M_.rank());
    sharp_ = M_.sharp_part();
    Nbasis_ = f.target.prelog_monoid.group_basis();

    const auto& alpha = f.target.structure;
    for (const auto& n : f.target.prelog_monoid.generators()) {
        Template t;
        t.deg = alpha.apply(n);
        auto [u, x] = split(t.deg);
        if (!is_zero(x)) t.terms.push_back({1, u, dgen(x)});
        for (auto& [c, g] : dlog_unit_expansion(u)) t.terms.push_back({c, t.deg, g});
        for (auto& [c, g] : dlog_expansion(n)) t.terms.push_back({-c, t.deg, g});
        fixed_templates_.push_back(std::move(t));
    }
    for (const auto& r : f.source.ring_monoid.generators()) {
        Template t;
        t.deg = f.monoid_map.apply(r);
        auto [u, x] = split(t.deg);
        if (!is_zero(x)) t.terms.push_back({1, u, dgen(x)});
        for (auto& [c, g] : dlog_unit_expansion(u)) t.terms.push_back({c, t.deg, g});
        if (!t.terms.empty()) fixed_templates_.push_back(std::move(t));
    }
    for (const auto& p : f.source.prelog_monoid.generators()) {
        Template t;
        t.deg = IntVec(M_.ambient_rank(), 0);
        for (auto& [c, g] : dlog_expansion(f.prelog_map.apply(p))) t.terms.push_back({c, t.deg, g});
        if (!t.terms.empty()) fixed_templates_.push_back(std::move(t));
    }

    // projection killing the base directions
    std::vector<IntVec> base_dirs;
    for (const auto& r : f.source.ring_monoid.generators()) base_dirs.push_back(f.monoid_map.apply(r));
    for (const auto& p : f.source.prelog_monoid.generators())
        base_dirs.push_back(alpha.apply(f.prelog_map.apply(p)));
    const std::size_t d = M_.ambient_rank();
    std::vector<IntVec> annihilators;
    if (base_dirs.empty()) {
        proj_ = IntMatrix::identity(d);
    } else {
        annihilators = kernel_basis(IntMatrix::from_rows(base_dirs, d));
        proj_ = IntMatrix::from_rows(annihilators, d);
    }
}

std::pair<IntVec, IntVec> KahlerPresentation::split(const IntVec& m) const {
    auto y = M_.to_group(m);
    if (!y) throw PreconditionError("degree " + vec_str(m) + " is outside the group completion");
    IntVec x = modU_.reduce(*y);
    IntVec u = sub(m, split_lift(x));
    return {u, x};
}

IntVec KahlerPresentation::split_lift(const IntVec& x) const { return M_.from_group(modU_.lift(x)); }

std::optional<IntVec> KahlerPresentation::sharp_of(const IntVec& m) const {
    auto y = M_.to_group(m);
    if (!y) return std::nullopt;
    return modU_.reduce(*y);
}

KahlerPresentation::Generator KahlerPresentation::dgen(const IntVec& x) const {
    Generator g;
    g.kind = Generator::Kind::D;
    g.sharp = x;
    g.ambient = split_lift(x);
    g.degree = g.ambient;
    g.label = "d" + vec_str(g.ambient);
    return g;
}

std::vector<std::pair<std::int64_t, KahlerPresentation::Generator>> KahlerPresentation::dlog_expansion(
    const IntVec& n) const {
    std::vector<std::pair<std::int64_t, Generator>> out;
    auto c = f_.target.prelog_monoid.to_group(n);
    if (!c) throw PreconditionError("dlog of an element outside N^gp");
    for (std::size_t i = 0; i < c->size(); ++i) {
        if ((*c)[i] == 0) continue;
        Generator g;
        g.kind = Generator::Kind::DlogLog;
        g.index = i;
        g.ambient = f_.target.structure.apply(Nbasis_[i]);
        g.degree = IntVec(M_.ambient_rank(), 0);
        g.label = "dlog" + vec_str(Nbasis_[i]);
        out.push_back({(*c)[i], g});
    }
    return out;
}

std::vector<std::pair<std::int64_t, KahlerPresentation::Generator>> KahlerPresentation::dlog_unit_expansion(
    const IntVec& u) const {
    std::vector<std::pair<std::int64_t, Generator>> out;
    if (is_zero(u)) return out;
    auto c = solve_integer(IntMatrix::from_columns(units_, M_.ambient_rank()), u);
    if (!c) throw PreconditionError("element " + vec_str(u) + " is not a unit");
    for (std::size_t i = 0; i < c->size(); ++i) {
        if ((*c)[i] == 0) continue;
        Generator g;
        g.kind = Generator::Kind::DlogUnit;
        g.index = i;
        g.ambient = units_[i];
        g.degree = IntVec(M_.ambient_rank(), 0);
        g.label = "dlog" + vec_str(units_[i]);
        out.push_back({(*c)[i], g});
    }
    return out;
}

namespace {

using GenKey = std::tuple<int, IntVec, std::size_t>;

GenKey key_of(const KahlerPresentation::Generator& g) {
    return {static_cast<int>(g.kind), g.kind == KahlerPresentation::Generator::Kind::D ? g.sharp : IntVec{}, g.index};
}

}  // namespace

KahlerPresentation::Piece KahlerPresentation::piece(const IntVec& m, std::size_t q) const {
    Piece p;
    const std::size_t d = M_.ambient_rank();
    if (m.size() != d) throw PreconditionError("degree has wrong length");
    auto sm = sharp_of(m);
    if (!sm || !sharp_.contains(*sm)) {
        p.relations = SparseMatrix(0, 0);
        return p;
    }
    const PreLogRing& A = f_.target;
    auto below = detail::elements_below(sharp_, *sm);

    std::map<GenKey, std::size_t> gid;
    for (const auto& x : below) {
        if (is_zero(x)) continue;
        Generator g = dgen(x);
        if (A.in_ideal(g.ambient)) continue;
        gid[key_of(g)] = p.gens.size();
        p.gens.push_back(g);
    }
    for (std::size_t i = 0; i < units_.size(); ++i) {
        Generator g;
        g.kind = Generator::Kind::DlogUnit;
        g.index = i;
        g.ambient = units_[i];
        g.degree = IntVec(d, 0);
        g.label = "dlog" + vec_str(units_[i]);
        gid[key_of(g)] = p.gens.size();
        p.gens.push_back(g);
    }
    for (std::size_t i = 0; i < Nbasis_.size(); ++i) {
        Generator g;
        g.kind = Generator::Kind::DlogLog;
        g.index = i;
        g.ambient = A.structure.apply(Nbasis_[i]);
        g.degree = IntVec(d, 0);
        g.label = "dlog" + vec_str(Nbasis_[i]);
        gid[key_of(g)] = p.gens.size();
        p.gens.push_back(g);
    }

    auto monomial_ok = [&](const IntVec& c) {
        auto s = sharp_of(c);
        return s && sharp_.contains(*s) && !A.in_ideal(c);
    };
    auto in_monoid = [&](const IntVec& c) {
        auto s = sharp_of(c);
        return s && sharp_.contains(*s);
    };
    auto deg_of = [&](const std::vector<std::size_t>& J) {
        IntVec s(d, 0);
        for (auto j : J) s = add(s, p.gens[j].degree);
        return s;
    };

    std::map<std::vector<std::size_t>, std::size_t> bidx;
    for_each_subset(p.gens.size(), q, [&](const std::vector<std::size_t>& J) {
        IntVec c = sub(m, deg_of(J));
        if (!monomial_ok(c)) return;
        bidx[J] = p.basis.size();
        p.basis.push_back(J);
        p.coefficient.push_back(c);
    });

    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> cols;
    // template wedge J: each term gen g becomes the basis element {g} u J
    auto instantiate = [&](const IntVec& tdeg, const std::vector<std::pair<std::int64_t, Generator>>& terms) {
        if (q == 0) return;
        for_each_subset(p.gens.size(), q - 1, [&](const std::vector<std::size_t>& J) {
            IntVec a = sub(sub(m, tdeg), deg_of(J));
            if (!in_monoid(a)) return;
            std::map<std::size_t, std::int64_t> col;
            for (const auto& [c, g] : terms) {
                auto it = gid.find(key_of(g));
                if (it == gid.end()) continue;  // generator vanishes (ideal)
                std::size_t gi = it->second;
                if (std::find(J.begin(), J.end(), gi) != J.end()) continue;
                std::vector<std::size_t> K = J;
                std::size_t pos = static_cast<std::size_t>(std::lower_bound(K.begin(), K.end(), gi) - K.begin());
                K.insert(K.begin() + static_cast<std::ptrdiff_t>(pos), gi);
                auto bt = bidx.find(K);
                if (bt == bidx.end()) continue;  // coefficient in the ideal
                std::int64_t sign = (pos % 2 == 0) ? 1 : -1;
                col[bt->second] += sign * c;
            }
            std::vector<std::pair<std::size_t, std::int64_t>> v;
            for (const auto& [r, c] : col)
                if (c != 0) v.push_back({r, c});
            if (!v.empty()) cols.push_back(std::move(v));
        });
    };

    // Leibniz: d(t^{b+c}) = t^b d(t^c) + t^c d(t^b)
    std::set<IntVec> belowset(below.begin(), below.end());
    for (std::size_t i = 0; i < below.size(); ++i) {
        if (is_zero(below[i])) continue;
        for (std::size_t j = i; j < below.size(); ++j) {
            if (is_zero(below[j])) continue;
            IntVec bc = add(below[i], below[j]);
            if (!belowset.count(bc)) continue;
            Generator gb = dgen(below[i]), gc = dgen(below[j]), gbc = dgen(bc);
            std::vector<std::pair<std::int64_t, Generator>> terms{{1, gbc}};
            if (i == j) {
                terms.push_back({-2, gb});
            } else {
                terms.push_back({-1, gc});
                terms.push_back({-1, gb});
            }
            instantiate(gbc.degree, terms);
        }
    }
    for (const auto& t : fixed_templates_) {
        std::vector<std::pair<std::int64_t, Generator>> terms;
        for (const auto& [c, mono, g] : t.terms) terms.push_back({c, g});
        instantiate(t.deg, terms);
    }

    p.relations = SparseMatrix(p.basis.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [r, c] : cols[j]) p.relations.add(r, j, c);
    p.relations.normalize();
    return p;
}

ModuleDesc KahlerPresentation::dimension(const IntVec& m, std::size_t q) const {
    auto p = piece(m, q);
    if (p.basis.empty()) return {};
    if (f_.target.coeff.is_field()) {
        std::size_t r = sparse_rank(p.relations, f_.target.coeff);
        return FgAbGroup::free(p.basis.size() - r);
    }
    auto s = sparse_divisors(p.relations);
    ModuleDesc out;
    out.free_rank = p.basis.size() - s.rank;
    out.torsion = s.torsion;
    return out;
}

IntMatrix KahlerPresentation::embedding(const Piece& p, std::size_t q) const {
    const std::size_t n = proj_.rows();
    std::vector<std::vector<std::size_t>> rows;
    for_each_subset(n, q, [&](const std::vector<std::size_t>& S) { rows.push_back(S); });
    IntMatrix E(rows.size(), p.basis.size());
    for (std::size_t b = 0; b < p.basis.size(); ++b) {
        std::vector<IntVec> vs;
        for (auto g : p.basis[b]) vs.push_back(proj_.apply(p.gens[g].ambient));
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (q == 0) {
                E(r, b) = 1;
                continue;
            }
            std::vector<std::vector<Int>> a(q, std::vector<Int>(q));
            for (std::size_t i = 0; i < q; ++i)
                for (std::size_t j = 0; j < q; ++j) a[i][j] = static_cast<long>(vs[j][rows[r][i]]);
            E(r, b) = determinant(a);
        }
    }
    return E;
}

std::vector<std::string> KahlerPresentation::generator_labels() const {
    std::vector<std::string> out;
    for (const auto& g : M_.generators()) out.push_back("d t^" + vec_str(g));
    for (const auto& n : f_.target.prelog_monoid.generators()) out.push_back("dlog " + vec_str(n));
    return out;
}

std::vector<std::string> KahlerPresentation::relation_labels() const {
    std::vector<std::string> out;
    const auto& gens = M_.generators();
    if (!gens.empty()) {
        for (const auto& c : kernel_basis(IntMatrix::from_columns(gens, M_.ambient_rank()))) {
            std::string lhs, rhs;
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (c[i] > 0) lhs += (lhs.empty() ? "" : " + ") + std::to_string(c[i]) + "*" + vec_str(gens[i]);
                if (c[i] < 0) rhs += (rhs.empty() ? "" : " + ") + std::to_string(-c[i]) + "*" + vec_str(gens[i]);
            }
            out.push_back("Leibniz expansion of " + lhs + " = " + rhs);
        }
    }
    for (const auto& n : f_.target.prelog_monoid.generators())
        out.push_back("d alpha" + vec_str(n) + " = alpha" + vec_str(n) + " dlog " + vec_str(n));
    for (const auto& p : f_.source.prelog_monoid.generators())
        out.push_back("dlog " + vec_str(f_.prelog_map.apply(p)) + " = 0");
    for (const auto& r : f_.source.ring_monoid.generators())
        out.push_back("d t^" + vec_str(f_.monoid_map.apply(r)) + " = 0");
    for (const auto& g : f_.target.ideal) out.push_back("d t^" + vec_str(g) + " = 0, t^" + vec_str(g) + " = 0");
    return out;
}

PresentedModule kahler_differentials(const PreLogMap& f, const std::vector<IntVec>& degrees) {
    KahlerPresentation kp(f);
    PresentedModule out;
    out.generators = kp.generator_labels();
    out.relations = kp.relation_labels();
    for (const auto& m : degrees) out.graded[m] = kp.dimension(m, 1);
    return out;
}

}  // namespace loghh
