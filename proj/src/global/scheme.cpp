#include "loghh/cone.hpp"
#include "loghh/global.hpp"

#include <algorithm>

namespace loghh {

namespace {

json monoid_json(const AffineMonoid& M) {
    json g = json::array();
    for (const auto& v : M.generators()) g.push_back(v);
    return {{"ambient_rank", M.ambient_rank()}, {"generators", g}};
}

json ring_json(const PreLogRing& A) {
    json j;
    j["ring"] = monoid_json(A.ring_monoid);
    j["prelog"] = monoid_json(A.prelog_monoid);
    json s = json::array();
    for (std::size_t i = 0; i < A.structure.matrix().rows(); ++i) s.push_back(A.structure.matrix().row(i));
    j["structure"] = s;
    if (!A.ideal.empty()) j["ideal"] = A.ideal;
    return j;
}

bool log_free(const Cone& c, const std::vector<IntVec>& log_rays) {
    return std::none_of(c.rays.begin(), c.rays.end(), [&](const IntVec& r) {
        return std::find(log_rays.begin(), log_rays.end(), r) != log_rays.end();
    });
}

// Pre-log monoid of the divisorial log structure along log_rays on the chart of tau.
AffineMonoid divisorial_face(const Cone& tau, const std::vector<IntVec>& log_rays) {
    std::vector<IntVec> ineqs;
    for (const auto& r : tau.rays) {
        ineqs.push_back(r);
        if (std::find(log_rays.begin(), log_rays.end(), r) == log_rays.end()) ineqs.push_back(neg(r));
    }
    return AffineMonoid(tau.d, cone_lattice_generators(ineqs, tau.d));
}

}  // namespace

std::size_t GluedLogScheme::depth() const {
    std::size_t d = charts.empty() ? 0 : 1;
    for (const auto& [idx, A] : overlaps) d = std::max(d, idx.size());
    return d;
}

const PreLogRing& GluedLogScheme::piece(const std::vector<std::size_t>& idx) const {
    if (idx.size() == 1) return charts.at(idx[0]);
    auto it = overlaps.find(idx);
    if (it == overlaps.end()) {
        std::string s;
        for (auto i : idx) s += std::to_string(i) + " ";
        throw PreconditionError("cover has no overlap for charts " + s);
    }
    return it->second;
}

PreLogMap GluedLogScheme::structure(const std::vector<std::size_t>& idx) const {
    return PreLogMap(base, piece(idx), base_ring_map, base_prelog_map);
}

json GluedLogScheme::to_json() const {
    json j;
    j["name"] = name;
    j["base"] = ring_json(base);
    json cs = json::array();
    for (const auto& c : charts) cs.push_back(ring_json(c));
    j["charts"] = cs;
    json os = json::array();
    for (const auto& [idx, A] : overlaps) os.push_back({{"charts", idx}, {"piece", ring_json(A)}});
    j["overlaps"] = os;
    j["depth"] = depth();
    return j;
}

std::optional<std::string> scheme_defect(const GluedLogScheme& X) {
    const std::size_t n = X.charts.size();
    if (n == 0) return "no charts";
    const std::size_t d = X.charts[0].rank(), e = X.charts[0].prelog_monoid.ambient_rank();
    std::vector<std::vector<std::size_t>> all;
    for (std::size_t s = 1; s <= n; ++s) for_each_subset(n, s, [&](const std::vector<std::size_t>& I) { all.push_back(I); });
    for (const auto& I : all) {
        if (I.size() > 1 && !X.overlaps.count(I)) return "missing overlap of size " + std::to_string(I.size());
        const PreLogRing& A = X.piece(I);
        if (A.rank() != d || A.prelog_monoid.ambient_rank() != e) return "pieces do not share one grading lattice";
        try {
            X.structure(I);
        } catch (const PreconditionError& err) {
            return std::string("base map: ") + err.what();
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (std::find(I.begin(), I.end(), j) != I.end()) continue;
            std::vector<std::size_t> J = I;
            J.push_back(j);
            std::sort(J.begin(), J.end());
            const PreLogRing& B = X.piece(J);
            for (const auto& g : A.ring_monoid.generators())
                if (!B.ring_monoid.contains(g)) return "ring generator " + vec_str(g) + " does not restrict";
            for (const auto& g : A.prelog_monoid.generators())
                if (!B.prelog_monoid.contains(g)) return "log generator " + vec_str(g) + " does not restrict";
            for (const auto& g : A.prelog_monoid.generators())
                if (A.structure.apply(g) != B.structure.apply(g)) return "structure maps disagree at " + vec_str(g);
        }
    }
    return std::nullopt;
}

GluedLogScheme toric_scheme(const Fan& f, const std::vector<IntVec>& log_rays_in, const Coefficients& k,
                            const std::string& name) {
    if (auto w = fan_defect(f)) throw PreconditionError("not a fan: " + *w);
    std::vector<IntVec> log_rays;
    for (const auto& r : log_rays_in) log_rays.push_back(primitive(r));
    for (const auto& r : log_rays) f.ray_index(r);
    GluedLogScheme X;
    X.name = name;
    X.base = PreLogRing::point(k);
    X.base_ring_map = IntMatrix(f.d, 0);
    X.base_prelog_map = IntMatrix(f.d, 0);
    const std::size_t n = f.cones.size();
    for (std::size_t s = 1; s <= n; ++s)
        for_each_subset(n, s, [&](const std::vector<std::size_t>& I) {
            Cone tau = f.intersection(I);
            AffineMonoid ring = dual_monoid(tau);
            bool trivial = std::all_of(I.begin(), I.end(), [&](std::size_t i) { return log_free(f.cones[i], log_rays); });
            AffineMonoid pre = trivial ? AffineMonoid::trivial(f.d) : divisorial_face(tau, log_rays);
            PreLogRing A(k, ring, {}, pre, IntMatrix::identity(f.d));
            if (s == 1)
                X.charts.push_back(A);
            else
                X.overlaps.emplace(I, A);
        });
    if (auto w = scheme_defect(X)) throw std::logic_error("toric scheme is not glued: " + *w);
    return X;
}

std::vector<std::string> standard_scheme_names() {
    return {"point", "A1", "A2", "A3", "A1_log", "P1", "P2", "boxbar", "blowup_A2", "A1_cover"};
}

GluedLogScheme standard_scheme(const std::string& name, const Coefficients& k) {
    if (name == "point") return toric_scheme(Fan::named("point"), {}, k, name);
    if (name == "A1") return toric_scheme(Fan::named("affine_line"), {}, k, name);
    if (name == "A2") return toric_scheme(Fan::named("affine_plane"), {}, k, name);
    if (name == "A3") return toric_scheme(Fan::named("affine_space"), {}, k, name);
    if (name == "A1_log") return toric_scheme(Fan::named("affine_line"), {{1}}, k, name);
    if (name == "P1") return toric_scheme(Fan::named("P1"), {}, k, name);
    if (name == "P2") return toric_scheme(Fan::named("P2"), {}, k, name);
    if (name == "boxbar") return toric_scheme(Fan::named("P1"), {{-1}}, k, name);
    if (name == "blowup_A2") return toric_scheme(Fan::named("blowup_affine_plane"), {{1, 1}}, k, name);
    if (name == "A1_cover") {
        GluedLogScheme X;
        X.name = name;
        X.base = PreLogRing::point(k);
        X.base_ring_map = IntMatrix(1, 0);
        X.base_prelog_map = IntMatrix(1, 0);
        AffineMonoid line(1, {{1}}), torus(1, {{1}, {-1}});
        X.charts = {PreLogRing(k, line, {}, AffineMonoid::trivial(1), IntMatrix::identity(1)),
                    PreLogRing(k, torus, {}, AffineMonoid::trivial(1), IntMatrix::identity(1))};
        X.overlaps.emplace(std::vector<std::size_t>{0, 1}, X.charts[1]);
        return X;
    }
    throw PreconditionError("unknown scheme '" + name + "'");
}

GluedLogScheme over_base(const GluedLogScheme& X, const PreLogRing& S) {
    GluedLogScheme Y;
    Y.name = X.name + " x S";
    Y.base = S;
    for (const auto& c : X.charts) Y.charts.push_back(product_over_point(c, S));
    for (const auto& [I, A] : X.overlaps) Y.overlaps.emplace(I, product_over_point(A, S));
    const std::size_t d = X.grading_rank(), e = X.charts[0].prelog_monoid.ambient_rank();
    const std::size_t ds = S.rank(), es = S.prelog_monoid.ambient_rank();
    Y.base_ring_map = IntMatrix(d + ds, ds);
    for (std::size_t i = 0; i < ds; ++i) Y.base_ring_map(d + i, i) = 1;
    Y.base_prelog_map = IntMatrix(e + es, es);
    for (std::size_t i = 0; i < es; ++i) Y.base_prelog_map(e + i, i) = 1;
    if (auto w = scheme_defect(Y)) throw PreconditionError("base change is not glued: " + *w);
    return Y;
}

}  // namespace loghh
