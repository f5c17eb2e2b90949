#include "loghh/cone.hpp"
#include "loghh/toric.hpp"

#include <algorithm>
#include <set>

namespace loghh {

namespace {

bool all_zero_on(const IntVec& u, const std::vector<IntVec>& vs) {
    return std::all_of(vs.begin(), vs.end(), [&](const IntVec& v) { return dot(u, v) == 0; });
}

bool subset_of(const std::vector<IntVec>& a, const std::vector<IntVec>& b) {
    return std::all_of(a.begin(), a.end(), [&](const IntVec& v) { return std::find(b.begin(), b.end(), v) != b.end(); });
}

json rays_json(const std::vector<IntVec>& rays) {
    json a = json::array();
    for (const auto& r : rays) a.push_back(r);
    return a;
}

}  // namespace

Cone::Cone(std::size_t d_, std::vector<IntVec> gens) : d(d_) {
    if (d > 4) throw ScaleError("cone in ambient rank " + std::to_string(d) + " exceeds 4");
    std::vector<IntVec> prim;
    for (const auto& g : gens) {
        if (g.size() != d) throw PreconditionError("cone generator " + vec_str(g) + " has the wrong length");
        if (!is_zero(g)) prim.push_back(primitive(g));
    }
    std::sort(prim.begin(), prim.end());
    prim.erase(std::unique(prim.begin(), prim.end()), prim.end());
    auto dual = cone_from_inequalities(prim, d);
    normals_ = dual.rays;
    for (const auto& u : dual.rays) ineqs_.push_back(u);
    for (const auto& l : dual.lineality) {
        ineqs_.push_back(l);
        ineqs_.push_back(neg(l));
    }
    if (prim.empty()) {
        pointed = true;
        return;
    }
    auto self = cone_from_inequalities(ineqs_, d);
    pointed = self.lineality.empty();
    if (!pointed) {
        rays = prim;
        return;
    }
    rays = self.rays;
    std::sort(rays.begin(), rays.end());
}

std::size_t Cone::dim() const { return rays.empty() ? 0 : lattice_basis(rays, d).size(); }

bool Cone::contains(const IntVec& v) const { return satisfies(ineqs_, v); }

bool Cone::contains(const Cone& c) const {
    return std::all_of(c.rays.begin(), c.rays.end(), [&](const IntVec& r) { return contains(r); });
}

std::vector<std::vector<IntVec>> Cone::facets() const {
    std::set<std::vector<IntVec>> out;
    for (const auto& u : normals_) {
        std::vector<IntVec> F;
        for (const auto& r : rays)
            if (dot(u, r) == 0) F.push_back(r);
        out.insert(F);
    }
    return {out.begin(), out.end()};
}

bool Cone::is_face(const std::vector<IntVec>& subset) const {
    if (!subset_of(subset, rays)) return false;
    std::vector<IntVec> closure;
    for (const auto& r : rays) {
        bool in = true;
        for (const auto& u : normals_)
            if (all_zero_on(u, subset) && dot(u, r) != 0) in = false;
        if (in) closure.push_back(r);
    }
    std::vector<IntVec> s = subset;
    std::sort(s.begin(), s.end());
    return closure == s;
}

std::string Cone::to_string() const {
    std::string s = "cone(";
    for (std::size_t i = 0; i < rays.size(); ++i) s += (i ? ", " : "") + vec_str(rays[i]);
    return s + ")";
}

Cone intersect(const Cone& a, const Cone& b) {
    if (a.d != b.d) throw PreconditionError("intersecting cones of different ambient rank");
    std::vector<IntVec> ineqs = a.inequalities();
    ineqs.insert(ineqs.end(), b.inequalities().begin(), b.inequalities().end());
    auto v = cone_from_inequalities(ineqs, a.d);
    if (!v.lineality.empty()) throw PreconditionError("intersection of non-pointed cones");
    return Cone(a.d, v.rays);
}

AffineMonoid dual_monoid(const Cone& c) {
    if (c.d > 4) throw ScaleError("dual_monoid: ambient rank " + std::to_string(c.d) + " exceeds 4");
    return AffineMonoid(c.d, cone_lattice_generators(c.rays, c.d));
}

Fan::Fan(std::size_t d_, std::vector<Cone> cs) : d(d_), cones(std::move(cs)) {
    if (d > 4) throw ScaleError("fan in ambient rank " + std::to_string(d) + " exceeds 4");
    for (const auto& c : cones) {
        if (c.d != d) throw PreconditionError("cone " + c.to_string() + " has the wrong ambient rank");
        if (!c.pointed) throw PreconditionError("cone " + c.to_string() + " is not pointed");
    }
    if (auto w = fan_defect(*this)) throw PreconditionError("not a fan: " + *w);
}

std::vector<IntVec> Fan::rays() const {
    std::set<IntVec> s;
    for (const auto& c : cones) s.insert(c.rays.begin(), c.rays.end());
    return {s.begin(), s.end()};
}

std::size_t Fan::ray_index(const IntVec& r) const {
    auto rs = rays();
    auto it = std::find(rs.begin(), rs.end(), primitive(r));
    if (it == rs.end()) throw PreconditionError("vector " + vec_str(r) + " is not a ray of the fan");
    return static_cast<std::size_t>(it - rs.begin());
}

bool Fan::in_support(const IntVec& v) const {
    return std::any_of(cones.begin(), cones.end(), [&](const Cone& c) { return c.contains(v); });
}

Cone Fan::intersection(const std::vector<std::size_t>& idx) const {
    if (idx.empty()) throw PreconditionError("empty intersection of cones");
    Cone c = cones.at(idx[0]);
    for (std::size_t i = 1; i < idx.size(); ++i) c = intersect(c, cones.at(idx[i]));
    return c;
}

json Fan::to_json() const {
    json j;
    j["ambient_rank"] = d;
    json cs = json::array();
    for (const auto& c : cones) cs.push_back(rays_json(c.rays));
    j["cones"] = cs;
    return j;
}

Fan Fan::named(const std::string& name) {
    auto cone = [](std::size_t d, std::vector<IntVec> r) { return Cone(d, std::move(r)); };
    if (name == "point") return Fan(0, {cone(0, {})});
    if (name == "affine_line") return Fan(1, {cone(1, {{1}})});
    if (name == "affine_plane") return Fan(2, {cone(2, {{1, 0}, {0, 1}})});
    if (name == "affine_space") return Fan(3, {cone(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})});
    if (name == "blowup_affine_plane") return Fan(2, {cone(2, {{1, 0}, {1, 1}}), cone(2, {{1, 1}, {0, 1}})});
    if (name == "P1") return Fan(1, {cone(1, {{1}}), cone(1, {{-1}})});
    if (name == "P2")
        return Fan(2, {cone(2, {{1, 0}, {0, 1}}), cone(2, {{0, 1}, {-1, -1}}), cone(2, {{-1, -1}, {1, 0}})});
    if (name == "blowup_P2") return star_subdivision(named("P2"), {1, 1}).refined;
    throw PreconditionError("unknown fan '" + name + "'");
}

std::optional<std::string> fan_defect(const Fan& f) {
    for (std::size_t i = 0; i < f.cones.size(); ++i)
        for (std::size_t j = i + 1; j < f.cones.size(); ++j) {
            const Cone &a = f.cones[i], &b = f.cones[j];
            Cone t = intersect(a, b);
            if (!a.is_face(t.rays) || !b.is_face(t.rays))
                return a.to_string() + " and " + b.to_string() + " meet in " + t.to_string() +
                       ", which is not a face of both";
        }
    return std::nullopt;
}

json Subdivision::to_json() const {
    json j;
    j["refined"] = refined.to_json();
    j["coarse"] = coarse.to_json();
    j["assignment"] = assignment;
    return j;
}

Subdivision star_subdivision(const Fan& f, const IntVec& ray) {
    if (ray.size() != f.d || is_zero(ray)) throw PreconditionError("star subdivision needs a nonzero ray of length d");
    IntVec w = primitive(ray);
    if (!f.in_support(w)) throw PreconditionError("ray " + vec_str(w) + " lies outside the support of the fan");
    Subdivision s;
    s.coarse = f;
    auto rs = f.rays();
    if (std::find(rs.begin(), rs.end(), w) != rs.end()) {
        s.refined = f;
        for (std::size_t i = 0; i < f.cones.size(); ++i) s.assignment.push_back(i);
        return s;
    }
    std::vector<Cone> out;
    for (std::size_t i = 0; i < f.cones.size(); ++i) {
        const Cone& c = f.cones[i];
        if (!c.contains(w)) {
            out.push_back(c);
            s.assignment.push_back(i);
            continue;
        }
        for (auto F : c.facets()) {
            std::vector<IntVec> g = F;
            g.push_back(w);
            Cone nc(f.d, g);
            // facets through w do not grow
            if (nc.dim() != c.dim()) continue;
            if (std::find(out.begin(), out.end(), nc) != out.end()) continue;
            out.push_back(nc);
            s.assignment.push_back(i);
        }
    }
    s.refined = Fan(f.d, out);
    return s;
}

SubdivisionCertificate is_subdivision(const Fan& refined, const Fan& coarse) {
    SubdivisionCertificate cert;
    if (refined.d != coarse.d) {
        cert.witness = "ambient ranks differ";
        return cert;
    }
    if (auto w = fan_defect(refined)) {
        cert.witness = "refined collection is not a fan: " + *w;
        return cert;
    }
    for (const auto& t : refined.cones) {
        std::size_t hit = coarse.cones.size();
        for (std::size_t i = 0; i < coarse.cones.size() && hit == coarse.cones.size(); ++i)
            if (coarse.cones[i].contains(t)) hit = i;
        if (hit == coarse.cones.size()) {
            cert.witness = "refined cone " + t.to_string() + " lies in no coarse cone";
            return cert;
        }
        cert.assignment.push_back(hit);
    }
    // coverage of each coarse cone: the full-dimensional refined cones inside it form a closed chamber
    // complex whose unshared walls all lie on the boundary of the coarse cone
    for (const auto& c : coarse.cones) {
        const std::size_t dim = c.dim();
        std::vector<const Cone*> inside;
        for (const auto& t : refined.cones)
            if (c.contains(t) && t.dim() == dim) inside.push_back(&t);
        if (inside.empty()) {
            IntVec p(coarse.d, 0);
            for (const auto& r : c.rays) p = add(p, r);
            cert.witness = "interior point " + vec_str(p) + " of " + c.to_string() + " is not covered";
            return cert;
        }
        if (dim == 0) continue;
        for (const Cone* t : inside)
            for (const auto& F : t->facets()) {
                bool boundary = false;
                for (const auto& G : c.facets()) {
                    Cone gc(coarse.d, G);
                    if (gc.dim() + 1 == dim && std::all_of(F.begin(), F.end(), [&](const IntVec& r) { return gc.contains(r); }))
                        boundary = true;
                }
                if (boundary) continue;
                std::size_t shared = 0;
                for (const Cone* u : inside)
                    if (u != t) {
                        auto fs = u->facets();
                        if (std::find(fs.begin(), fs.end(), F) != fs.end()) ++shared;
                    }
                if (shared != 1) {
                    IntVec p(coarse.d, 0);
                    for (const auto& r : F) p = add(p, r);
                    cert.witness = "wall through " + vec_str(p) + " of " + t->to_string() + " inside " + c.to_string() +
                                   " is bounded on " + std::to_string(shared + 1) + " side(s)";
                    return cert;
                }
            }
    }
    cert.holds = true;
    return cert;
}

}  // namespace loghh
