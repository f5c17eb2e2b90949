#include "loghh/prelog.hpp"

#include <sstream>

namespace loghh {

PreLogRing::PreLogRing(Coefficients k, AffineMonoid M, std::vector<IntVec> ideal_gens, AffineMonoid N, IntMatrix alpha)
    : coeff(k), ring_monoid(std::move(M)), ideal(std::move(ideal_gens)), prelog_monoid(std::move(N)) {
    for (const auto& g : ideal)
        if (!ring_monoid.contains(g)) throw PreconditionError("ideal generator " + vec_str(g) + " is not in the monoid");
    structure = MonoidHom(prelog_monoid, ring_monoid, std::move(alpha));
}

json module_json(const ModuleDesc& M) {
    json t = json::array();
    for (const auto& d : M.torsion) t.push_back(to_i64(d));
    return json{{"rank", M.free_rank}, {"torsion", t}};
}

PreLogRing PreLogRing::canonical(const AffineMonoid& M, Coefficients k) {
    return PreLogRing(k, M, {}, M, IntMatrix::identity(M.ambient_rank()));
}

PreLogRing PreLogRing::trivial_log(const AffineMonoid& M, Coefficients k) {
    return PreLogRing(k, M, {}, AffineMonoid::trivial(0), IntMatrix(M.ambient_rank(), 0));
}

bool PreLogRing::in_ideal(const IntVec& m) const {
    for (const auto& g : ideal)
        if (ring_monoid.contains(sub(m, g))) return true;
    return false;
}

bool PreLogRing::is_canonical() const {
    return ideal.empty() && prelog_monoid.ambient_rank() == ring_monoid.ambient_rank() &&
           structure.matrix() == IntMatrix::identity(ring_monoid.ambient_rank()) && prelog_monoid == ring_monoid;
}

std::string PreLogRing::to_string() const {
    std::ostringstream os;
    os << "(" << coeff.name() << "[" << ring_monoid.to_string() << "]";
    if (!ideal.empty()) {
        os << "/(";
        for (std::size_t i = 0; i < ideal.size(); ++i) os << (i ? "," : "") << "t^" << vec_str(ideal[i]);
        os << ")";
    }
    os << ", " << prelog_monoid.to_string() << ")";
    return os.str();
}

PreLogMap::PreLogMap(PreLogRing s, PreLogRing t, IntMatrix ring_matrix, IntMatrix prelog_matrix)
    : source(std::move(s)), target(std::move(t)) {
    if (!(source.coeff == target.coeff)) throw PreconditionError("pre-log map between different coefficient rings");
    monoid_map = MonoidHom(source.ring_monoid, target.ring_monoid, std::move(ring_matrix));
    prelog_map = MonoidHom(source.prelog_monoid, target.prelog_monoid, std::move(prelog_matrix));
    for (const auto& n : source.prelog_monoid.generators()) {
        IntVec a = target.structure.apply(prelog_map.apply(n));
        IntVec b = monoid_map.apply(source.structure.apply(n));
        if (a != b) throw PreconditionError("structure square does not commute at " + vec_str(n));
    }
    for (const auto& g : source.ideal)
        if (!target.in_ideal(monoid_map.apply(g)))
            throw PreconditionError("ideal generator " + vec_str(g) + " does not map into the target ideal");
}

PreLogMap PreLogMap::canonical(const MonoidHom& theta, Coefficients k) {
    return PreLogMap(PreLogRing::canonical(theta.source(), k), PreLogRing::canonical(theta.target(), k),
                     theta.matrix(), theta.matrix());
}

PreLogMap PreLogMap::over_point(const PreLogRing& A) {
    return PreLogMap(PreLogRing::point(A.coeff), A, IntMatrix(A.ring_monoid.ambient_rank(), 0),
                     IntMatrix(A.prelog_monoid.ambient_rank(), 0));
}

PreLogMap PreLogMap::identity(const PreLogRing& A) {
    return PreLogMap(A, A, IntMatrix::identity(A.ring_monoid.ambient_rank()),
                     IntMatrix::identity(A.prelog_monoid.ambient_rank()));
}

PreLogMap PreLogMap::compose_after(const PreLogMap& first) const {
    return PreLogMap(first.source, target, monoid_map.matrix() * first.monoid_map.matrix(),
                     prelog_map.matrix() * first.prelog_map.matrix());
}

bool PreLogMap::is_canonical() const {
    return source.is_canonical() && target.is_canonical() && monoid_map.matrix() == prelog_map.matrix();
}

FreePrelog free_prelog(const PreLogRing& base, const std::vector<std::string>& X, const std::vector<std::string>& Y) {
    if (!base.ideal.empty()) throw Unsupported("free_prelog: base ring has a nonempty ideal");
    const std::size_t d0 = base.ring_monoid.ambient_rank(), n0 = base.prelog_monoid.ambient_rank();
    const std::size_t x = X.size(), y = Y.size();
    const std::size_t d = d0 + x + y, n = n0 + x;
    std::vector<IntVec> mg, ng;
    for (const auto& g : base.ring_monoid.generators()) {
        IntVec v(d, 0);
        std::copy(g.begin(), g.end(), v.begin());
        mg.push_back(v);
    }
    for (std::size_t i = 0; i < x + y; ++i) {
        IntVec v(d, 0);
        v[d0 + i] = 1;
        mg.push_back(v);
    }
    for (const auto& g : base.prelog_monoid.generators()) {
        IntVec v(n, 0);
        std::copy(g.begin(), g.end(), v.begin());
        ng.push_back(v);
    }
    for (std::size_t i = 0; i < x; ++i) {
        IntVec v(n, 0);
        v[n0 + i] = 1;
        ng.push_back(v);
    }
    IntMatrix alpha(d, n);
    for (std::size_t i = 0; i < d0; ++i)
        for (std::size_t j = 0; j < n0; ++j) alpha(i, j) = base.structure.matrix()(i, j);
    for (std::size_t i = 0; i < x; ++i) alpha(d0 + i, n0 + i) = 1;
    FreePrelog out;
    out.ring = PreLogRing(base.coeff, AffineMonoid(d, mg), {}, AffineMonoid(n, ng), alpha);
    IntMatrix ring_inc(d, d0), log_inc(n, n0);
    for (std::size_t i = 0; i < d0; ++i) ring_inc(i, i) = 1;
    for (std::size_t i = 0; i < n0; ++i) log_inc(i, i) = 1;
    out.unit = PreLogMap(base, out.ring, ring_inc, log_inc);
    for (std::size_t i = 0; i < x; ++i) out.x_coords.push_back(d0 + i);
    for (std::size_t i = 0; i < y; ++i) out.y_coords.push_back(d0 + x + i);
    return out;
}

}  // namespace loghh
