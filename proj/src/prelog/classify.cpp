#include "loghh/prelog.hpp"

#include <algorithm>
#include <set>

namespace loghh {

namespace {

std::vector<IntVec> with_negatives(const std::vector<IntVec>& units) {
    std::vector<IntVec> out;
    for (const auto& u : units) {
        out.push_back(u);
        out.push_back(neg(u));
    }
    return out;
}

std::size_t span_rank(const std::vector<IntVec>& vs, std::size_t d) {
    if (vs.empty()) return 0;
    return rank_over(IntMatrix::from_columns(vs, d), Coefficients::rationals());
}

// Ring monoid split as (log part generated by the pre-log image and units) x (free variables).
struct ChartSplit {
    bool ok = false;
    std::string why;
    std::vector<IntVec> log_gens;  // ambient generators of the log part (with +-units)
    std::vector<IntVec> free_gens;  // remaining generators, ambient
};

ChartSplit split_chart(const PreLogRing& A) {
    ChartSplit s;
    const AffineMonoid& M = A.ring_monoid;
    const std::size_t d = M.ambient_rank();
    for (const auto& n : A.prelog_monoid.generators()) {
        IntVec a = A.structure.apply(n);
        if (!is_zero(a)) s.log_gens.push_back(a);
    }
    for (const auto& u : with_negatives(M.unit_basis())) s.log_gens.push_back(u);
    AffineMonoid L(d, s.log_gens);
    std::set<IntVec> seen;
    for (const auto& g : M.nonunit_generators()) {
        if (L.contains(g) || seen.count(g)) continue;
        seen.insert(g);
        s.free_gens.push_back(g);
    }
    std::size_t rl = span_rank(s.log_gens, d);
    if (rl + s.free_gens.size() != M.rank()) {
        s.why = "ring monoid is not the log part times free variables (ranks " + std::to_string(rl) + " + " +
                std::to_string(s.free_gens.size()) + " != " + std::to_string(M.rank()) + ")";
        return s;
    }
    std::vector<IntVec> all = s.log_gens;
    all.insert(all.end(), s.free_gens.begin(), s.free_gens.end());
    std::vector<IntVec> coords;
    for (const auto& v : all) coords.push_back(*M.to_group(v));
    if (!coords.empty() && !cokernel_structure(IntMatrix::from_columns(coords, M.rank())).is_zero()) {
        s.why = "log part and free variables do not span the group completion";
        return s;
    }
    s.ok = true;
    return s;
}

// Homology of a two-term complex C1 -> C0 of free abelian groups and induced maps, over a field.
struct TwoTerm {
    IntMatrix d;  // C1 -> C0
};
struct TwoTermMap {
    IntMatrix f1, f0;
};

std::size_t dim_h(const TwoTerm& c, int n, const Coefficients& k) {
    std::size_t r = rank_over(c.d, k);
    return n == 1 ? c.d.cols() - r : c.d.rows() - r;
}

std::size_t induced_rank(const TwoTerm& c, const TwoTerm& e, const TwoTermMap& f, int n, const Coefficients& k) {
    if (n == 0) return rank_over(f.f0.hstack(e.d), k) - rank_over(e.d, k);
    // top degree: rank of f1 restricted to ker d
    std::size_t null_c = c.d.cols() - rank_over(c.d, k);
    std::size_t null_both = c.d.cols() - rank_over(c.d.vstack(f.f1), k);
    return null_c - null_both;
}

bool same_shape(const AffineMonoid& a, const AffineMonoid& b) { return a == b; }

}  // namespace

std::size_t EffectiveChart::free_variables() const {
    return static_cast<std::size_t>(std::count(free_hit.begin(), free_hit.end(), false));
}

std::optional<std::pair<IntVec, IntVec>> EffectiveChart::decompose(const IntVec& m) const {
    auto y = target_monoid.to_group(m);
    if (!y) return std::nullopt;
    std::vector<IntVec> cols = log_basis;
    for (const auto& g : free_gens) cols.push_back(*target_monoid.to_group(g));
    auto x = solve_integer(IntMatrix::from_columns(cols, target_monoid.rank()), *y);
    if (!x) return std::nullopt;
    auto mid = x->begin() + static_cast<std::ptrdiff_t>(log_basis.size());
    return std::make_pair(IntVec(x->begin(), mid), IntVec(mid, x->end()));
}

EffectiveChart effective_chart(const PreLogMap& f) {
    EffectiveChart c;
    const PreLogRing& R = f.source;
    const PreLogRing& A = f.target;
    const AffineMonoid& M = A.ring_monoid;
    const AffineMonoid& Q = R.ring_monoid;
    const std::size_t d = M.ambient_rank();
    c.target_monoid = M;

    ChartSplit tgt = split_chart(A), src = split_chart(R);
    c.ring_ok = tgt.ok && src.ok && A.ideal.empty() && R.ideal.empty();
    if (!tgt.ok) c.evidence.push_back("target: " + tgt.why);
    if (!src.ok) c.evidence.push_back("source: " + src.why);
    if (!A.ideal.empty() || !R.ideal.empty()) c.evidence.push_back("monomial ideals present");

    // alpha^gp must be injective for the log part to be a chart of N
    std::vector<IntVec> alpha_img;
    for (const auto& b : A.prelog_monoid.group_basis()) alpha_img.push_back(A.structure.apply(b));
    if (span_rank(alpha_img, d) != A.prelog_monoid.rank()) {
        c.ring_ok = false;
        c.evidence.push_back("structure map is not injective on group completions");
    }

    std::vector<IntVec> src_elems;
    for (const auto& p : R.prelog_monoid.generators()) {
        c.src_log_images.push_back(A.structure.apply(f.prelog_map.apply(p)));
        src_elems.push_back(R.structure.apply(p));
    }
    for (const auto& u : Q.unit_basis()) {
        c.src_log_images.push_back(f.monoid_map.apply(u));
        src_elems.push_back(u);
    }
    c.log_gens = tgt.log_gens;
    c.free_gens = tgt.free_gens;
    c.free_hit.assign(c.free_gens.size(), false);
    if (src.ok) {
        for (const auto& r : src.free_gens) {
            IntVec img = f.monoid_map.apply(r);
            if (M.is_unit(img)) {
                c.src_log_images.push_back(img);
                src_elems.push_back(r);
                continue;
            }
            auto it = std::find(c.free_gens.begin(), c.free_gens.end(), img);
            std::size_t pos = static_cast<std::size_t>(it - c.free_gens.begin());
            if (it == c.free_gens.end() || c.free_hit[pos]) {
                c.ring_ok = false;
                c.evidence.push_back("free generator " + vec_str(r) + " maps to " + vec_str(img) +
                                     ", not to a distinct free variable of the target");
                continue;
            }
            c.free_hit[pos] = true;
        }
    }

    std::vector<IntVec> tcoords;
    for (const auto& v : c.log_gens) tcoords.push_back(*M.to_group(v));
    c.log_basis = lattice_basis(tcoords, M.rank());
    IntMatrix Tm = IntMatrix::from_columns(c.log_basis, M.rank());

    std::vector<IntVec> qcoords;
    for (const auto& v : src_elems) qcoords.push_back(*Q.to_group(v));
    std::vector<IntVec> Sbasis = lattice_basis(qcoords, Q.rank());
    c.src_log_rank = Sbasis.size();
    c.src_units_rank = Q.unit_basis().size();

    c.theta = IntMatrix(c.log_basis.size(), Sbasis.size());
    for (std::size_t j = 0; j < Sbasis.size(); ++j) {
        auto y = M.to_group(f.monoid_map.apply(Q.from_group(Sbasis[j])));
        auto x = solve_integer(Tm, *y);
        if (!x) throw PreconditionError("effective_chart: source log part does not land in the target log part");
        for (std::size_t i = 0; i < c.log_basis.size(); ++i) c.theta(i, j) = static_cast<long>((*x)[i]);
    }
    std::size_t rk = Sbasis.empty() ? 0 : rank_over(c.theta, Coefficients::rationals());
    c.kernel_rank = Sbasis.size() - rk;
    if (Sbasis.empty())
        c.cokernel = FgAbGroup::free(c.log_basis.size());
    else if (!c.log_basis.empty())
        c.cokernel = cokernel_structure(c.theta);
    return c;
}

MapClassification classify_map(const PreLogMap& f) {
    if (!f.source.ideal.empty() || !f.target.ideal.empty())
        throw PreconditionError("classify_map: chart-level classification needs empty ideals");
    MapClassification c;
    const PreLogRing& A = f.target;
    const AffineMonoid& M = A.ring_monoid;
    const std::size_t d = M.ambient_rank();

    c.integral = is_integral(f.prelog_map);
    c.exact = is_exact(f.prelog_map);

    EffectiveChart e = effective_chart(f);
    c.ring_condition = e.ring_ok;
    c.evidence = e.evidence;
    c.free_variables = e.ring_ok ? e.free_variables() : 0;
    c.kernel_rank = e.kernel_rank;
    c.cokernel = e.cokernel;
    const Coefficients& k = A.coeff;
    bool tors_inv = c.cokernel.torsion.empty() || k.invertible(c.cokernel.torsion_order());

    c.evidence.push_back("effective chart group map has kernel rank " + std::to_string(c.kernel_rank) +
                         " and cokernel " + c.cokernel.to_string());
    if (!tors_inv) c.evidence.push_back("cokernel torsion order is not invertible in " + k.name());

    c.kummer = c.kernel_rank == 0 && c.cokernel.is_finite();
    c.log_smooth = c.ring_condition && c.kernel_rank == 0 && tors_inv;
    c.log_etale = c.log_smooth && c.cokernel.is_finite() && c.free_variables == 0;
    // Group completions are lattices here, so "kernel finite of invertible order" is kernel zero and the
    // derived criterion coincides with the chart criterion; integrality only adds evidence.
    c.derived_log_smooth = c.log_smooth;
    c.derived_log_etale = c.log_etale;
    if (c.log_smooth && !c.integral.is_yes())
        c.evidence.push_back("derived flags follow from the kernel/cokernel criterion without integrality");

    // strict: the target log part is generated by the source image and units, injectively mod units
    std::vector<IntVec> gens = e.src_log_images;
    for (const auto& u : with_negatives(M.unit_basis())) gens.push_back(u);
    AffineMonoid image(d, gens);
    bool gen_ok = true;
    for (const auto& g : e.log_gens)
        if (!image.contains(g)) gen_ok = false;
    std::vector<IntVec> with_units = e.src_log_images;
    for (const auto& u : M.unit_basis()) with_units.push_back(u);
    std::size_t img_mod_units = span_rank(with_units, d) - M.unit_basis().size();
    std::size_t src_mod_units = e.src_log_rank - std::min(e.src_log_rank, e.src_units_rank);
    c.strict = gen_ok && img_mod_units == src_mod_units;
    return c;
}

json MapClassification::to_json() const {
    json j;
    j["strict"] = strict;
    j["kummer"] = kummer;
    j["integral"] = integral.str();
    j["exact"] = exact.str();
    j["log_smooth"] = log_smooth;
    j["log_etale"] = log_etale;
    j["derived_log_smooth"] = derived_log_smooth;
    j["derived_log_etale"] = derived_log_etale;
    j["kernel_rank"] = kernel_rank;
    j["cokernel"] = cokernel.to_string();
    j["ring_condition"] = ring_condition;
    j["free_variables"] = free_variables;
    j["evidence"] = evidence;
    return j;
}

namespace {

void fill_graded(CotangentPi& out, const PreLogRing& B, const std::vector<IntVec>& degrees) {
    for (const auto& m : degrees) out.graded[m] = B.has_monomial(m) ? out.fiber : ModuleDesc{};
}

}  // namespace

CotangentPi cotangent_pi(const PreLogMap& f, std::size_t n, const std::vector<IntVec>& degrees) {
    CotangentPi out;
    const Coefficients& k = f.target.coeff;
    if (f.is_canonical()) {
        out.shape = "canonical";
        const MonoidHom& theta = f.monoid_map;
        FgAbGroup coker = group_cokernel(theta);
        std::size_t ker = group_kernel_rank(theta);
        auto [tens, tor] = scalar_tensor_tor(coker, k);
        if (n == 0)
            out.fiber = tens;
        else if (n == 1)
            out.fiber = direct_sum(FgAbGroup::free(ker), tor);
        fill_graded(out, f.target, degrees);
        return out;
    }
    if (!f.source.ideal.empty() || !f.target.ideal.empty())
        throw Unsupported("cotangent_pi: no supported shape for maps with monomial ideals that are not canonical");
    MapClassification c = classify_map(f);
    if (c.derived_log_smooth || (c.strict && c.log_smooth)) {
        out.shape = c.derived_log_smooth ? "derived_log_smooth" : "strict_smooth";
        KahlerPresentation kp(f);
        if (n == 0) {
            out.fiber = FgAbGroup::free(kp.embedded_dim());
            for (const auto& m : degrees) out.graded[m] = kp.dimension(m, 1);
        } else {
            for (const auto& m : degrees) out.graded[m] = ModuleDesc{};
        }
        return out;
    }
    throw Unsupported("cotangent_pi: map is neither canonical nor derived log smooth nor strict smooth");
}

Report transitivity_check(const PreLogMap& f, const PreLogMap& g, std::size_t n_max) {
    Report r;
    r.name = "transitivity";
    if (!same_shape(f.target.ring_monoid, g.source.ring_monoid) ||
        !same_shape(f.target.prelog_monoid, g.source.prelog_monoid))
        throw PreconditionError("transitivity_check: maps are not composable");
    if (!f.is_canonical() || !g.is_canonical())
        throw Unsupported("transitivity_check: only canonical monoid-algebra maps have chain-level cotangent models");
    const Coefficients& k = g.target.coeff;
    const Coefficients kf = k.is_field() ? k : Coefficients::rationals();
    const IntMatrix& th = f.monoid_map.group_map();
    const IntMatrix& ph = g.monoid_map.group_map();
    TwoTerm Cf{th}, Cgf{ph * th}, Cg{ph};
    TwoTermMap a{IntMatrix::identity(th.cols()), ph};
    TwoTermMap b{th, IntMatrix::identity(ph.rows())};
    TwoTermMap ba{th, ph};

    json table = json::array();
    for (int n = 1; n >= 0; --n) {
        std::size_t hf = dim_h(Cf, n, kf), hgf = dim_h(Cgf, n, kf), hg = dim_h(Cg, n, kf);
        std::size_t ra = induced_rank(Cf, Cgf, a, n, kf), rb = induced_rank(Cgf, Cg, b, n, kf);
        r.check(induced_rank(Cf, Cg, ba, n, kf) == 0, "composite is nonzero on pi_" + std::to_string(n));
        r.check(hgf == ra + rb, "not exact at pi_" + std::to_string(n) + " of the composite");
        if (n == 1) {
            r.check(hf == ra, "pi_1 of the first term does not inject");
            std::size_t delta = hg - rb;
            std::size_t ra0 = induced_rank(Cf, Cgf, a, 0, kf);
            r.check(dim_h(Cf, 0, kf) == delta + ra0, "connecting map rank does not match at pi_0");
        } else {
            r.check(hg == rb, "pi_0 of the composite does not surject");
        }
        if (static_cast<std::size_t>(n) <= n_max)
            table.push_back({{"n", n}, {"first", hf}, {"composite", hgf}, {"second", hg}});
    }
    r.data["coefficients"] = kf.name();
    r.data["ranks"] = table;
    r.data["n_max"] = n_max;
    if (n_max > 1) r.notes.push_back("all terms vanish above degree 1");
    return r;
}

}  // namespace loghh
