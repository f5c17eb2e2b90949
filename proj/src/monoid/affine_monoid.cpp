#include "loghh/monoid.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace loghh {

std::string TriState::str() const {
    switch (value) {
        case Value::Yes:
            return "Yes";
        case Value::No:
            return "No";
        case Value::Unknown:
            return "Unknown(" + std::to_string(bound) + ")";
    }
    return "?";
}

struct AffineMonoid::Data {
    std::size_t d = 0;
    std::vector<IntVec> gens;

    std::size_t r = 0;
    std::vector<IntVec> basis;  // ambient columns of M^gp
    // to_group: y = V * ((U v)_i / e_i)
    IntMatrix U, V;
    std::vector<Int> e;
    Int index = 1;

    std::vector<IntVec> gens_int;
    std::vector<IntVec> facets;
    IntVec w;
    std::vector<IntVec> units_int, units_amb;
    LatticeQuotient modU;
    bool splits = true;
    std::vector<std::size_t> nonunit;  // indices into gens
    std::vector<IntVec> nonunit_codes;
    std::vector<std::int64_t> nonunit_deg;
};

AffineMonoid::AffineMonoid(std::size_t ambient_rank, std::vector<IntVec> generators) {
    auto D = std::make_shared<Data>();
    D->d = ambient_rank;
    std::set<IntVec> seen;
    for (auto& g : generators) {
        if (g.size() != ambient_rank) throw PreconditionError("generator length does not match ambient rank");
        if (is_zero(g) || seen.count(g)) continue;
        seen.insert(g);
        D->gens.push_back(g);
    }
    D->basis = lattice_basis(D->gens, D->d);
    D->r = D->basis.size();
    if (D->r > 0) {
        auto s = smith_normal_form(IntMatrix::from_columns(D->basis, D->d));
        D->U = s.U;
        D->V = s.V;
        for (std::size_t i = 0; i < D->r; ++i) {
            D->e.push_back(s.D(i, i));
            D->index *= s.D(i, i);
        }
    }
    std::shared_ptr<const Data> cd = D;
    d_ = cd;  // allow to_group during construction
    for (const auto& g : D->gens) D->gens_int.push_back(*to_group(g));
    D->facets = cone_facets(D->gens_int, D->r);
    D->w = IntVec(D->r, 0);
    for (const auto& f : D->facets) D->w = add(D->w, f);
    std::vector<IntVec> unit_gens;
    for (std::size_t i = 0; i < D->gens.size(); ++i) {
        bool unit = true;
        for (const auto& f : D->facets)
            if (dot(f, D->gens_int[i]) != 0) unit = false;
        if (unit)
            unit_gens.push_back(D->gens_int[i]);
        else
            D->nonunit.push_back(i);
    }
    D->units_int = lattice_basis(unit_gens, D->r);
    for (const auto& u : D->units_int) D->units_amb.push_back(from_group(u));
    D->modU = LatticeQuotient(D->units_int, D->r);
    D->splits = D->modU.group().torsion.empty();
    for (auto i : D->nonunit) {
        D->nonunit_codes.push_back(D->modU.reduce(D->gens_int[i]));
        auto deg = dot(D->w, D->gens_int[i]);
        if (deg <= 0) throw Unsupported("sharp part admits no positive grading");
        D->nonunit_deg.push_back(deg);
    }
}

AffineMonoid AffineMonoid::free_monoid(std::size_t n) {
    std::vector<IntVec> g;
    for (std::size_t i = 0; i < n; ++i) {
        IntVec e(n, 0);
        e[i] = 1;
        g.push_back(e);
    }
    return AffineMonoid(n, g);
}

AffineMonoid AffineMonoid::lattice(std::size_t n) {
    std::vector<IntVec> g;
    for (std::size_t i = 0; i < n; ++i) {
        IntVec e(n, 0);
        e[i] = 1;
        g.push_back(e);
        g.push_back(neg(e));
    }
    return AffineMonoid(n, g);
}

std::size_t AffineMonoid::ambient_rank() const { return d_->d; }
const std::vector<IntVec>& AffineMonoid::generators() const { return d_->gens; }
std::size_t AffineMonoid::rank() const { return d_->r; }
const std::vector<IntVec>& AffineMonoid::group_basis() const { return d_->basis; }
Int AffineMonoid::index_in_saturation() const { return d_->index; }
const std::vector<IntVec>& AffineMonoid::facets() const { return d_->facets; }
const IntVec& AffineMonoid::grading() const { return d_->w; }
const std::vector<IntVec>& AffineMonoid::unit_basis() const { return d_->units_amb; }
bool AffineMonoid::splits() const { return d_->splits; }

std::optional<IntVec> AffineMonoid::to_group(const IntVec& v) const {
    const Data& D = *d_;
    if (v.size() != D.d) throw PreconditionError("element length does not match ambient rank");
    if (D.r == 0) {
        if (is_zero(v)) return IntVec{};
        return std::nullopt;
    }
    std::vector<Int> y(D.d);
    for (std::size_t i = 0; i < D.d; ++i)
        for (std::size_t j = 0; j < D.d; ++j)
            if (v[j] != 0) y[i] += D.U(i, j) * static_cast<long>(v[j]);
    for (std::size_t i = D.r; i < D.d; ++i)
        if (y[i] != 0) return std::nullopt;
    std::vector<Int> z(D.r);
    for (std::size_t i = 0; i < D.r; ++i) {
        if (!mpz_divisible_p(y[i].get_mpz_t(), D.e[i].get_mpz_t())) return std::nullopt;
        z[i] = y[i] / D.e[i];
    }
    IntVec out(D.r);
    for (std::size_t i = 0; i < D.r; ++i) {
        Int s = 0;
        for (std::size_t j = 0; j < D.r; ++j) s += D.V(i, j) * z[j];
        out[i] = to_i64(s);
    }
    return out;
}

IntVec AffineMonoid::from_group(const IntVec& y) const {
    IntVec v(d_->d, 0);
    for (std::size_t j = 0; j < d_->r; ++j)
        if (y[j] != 0)
            for (std::size_t i = 0; i < d_->d; ++i) v[i] += d_->basis[j][i] * y[j];
    return v;
}

std::int64_t AffineMonoid::degree(const IntVec& v) const {
    auto y = to_group(v);
    if (!y) throw PreconditionError("degree of an element outside the group completion");
    return dot(d_->w, *y);
}

bool AffineMonoid::in_cone(const IntVec& v) const {
    auto y = to_group(v);
    return y && satisfies(d_->facets, *y);
}

bool AffineMonoid::is_unit(const IntVec& v) const {
    auto y = to_group(v);
    if (!y) return false;
    if (d_->units_int.empty()) return is_zero(v);
    return d_->modU.is_zero(*y);
}

std::vector<IntVec> AffineMonoid::nonunit_generators() const {
    std::vector<IntVec> out;
    for (auto i : d_->nonunit) out.push_back(d_->gens[i]);
    return out;
}

namespace {

struct MembershipSearch {
    const std::vector<IntVec>& codes;
    const std::vector<std::int64_t>& deg;
    const LatticeQuotient& q;
    std::set<std::pair<std::size_t, IntVec>> failed;

    bool run(std::size_t i, const IntVec& code, std::int64_t remaining) {
        if (remaining == 0) return is_zero(code);
        if (i == codes.size()) return false;
        auto key = std::make_pair(i, code);
        if (failed.count(key)) return false;
        IntVec c = code;
        std::int64_t rem = remaining;
        for (std::int64_t mult = 0;; ++mult) {
            if (run(i + 1, c, rem)) return true;
            rem -= deg[i];
            if (rem < 0) break;
            c = q.normalize_code(sub(c, codes[i]));
        }
        failed.insert(key);
        return false;
    }
};

}  // namespace

bool AffineMonoid::contains(const IntVec& v, std::int64_t grading_bound) const {
    const Data& D = *d_;
    auto y = to_group(v);
    if (!y) return false;
    if (!satisfies(D.facets, *y)) return false;
    std::int64_t deg = dot(D.w, *y);
    if (deg > grading_bound)
        throw Inconclusive("membership search exceeds grading bound at " + vec_str(v), grading_bound);
    IntVec code = D.modU.reduce(*y);
    MembershipSearch s{D.nonunit_codes, D.nonunit_deg, D.modU, {}};
    return s.run(0, code, deg);
}

IntVec AffineMonoid::sharp_coords(const IntVec& v) const {
    auto y = to_group(v);
    if (!y) throw PreconditionError("sharp_coords: element outside the group completion");
    if (!d_->splits) throw Unsupported("unit quotient has torsion; no lattice splitting");
    return d_->modU.reduce(*y);
}

AffineMonoid AffineMonoid::sharp_part() const {
    if (!d_->splits) throw Unsupported("unit quotient has torsion; no lattice splitting");
    return AffineMonoid(d_->modU.group().free_rank, d_->nonunit_codes);
}

bool AffineMonoid::operator==(const AffineMonoid& o) const {
    if (d_->d != o.d_->d) return false;
    std::set<IntVec> a(d_->gens.begin(), d_->gens.end()), b(o.d_->gens.begin(), o.d_->gens.end());
    if (a == b) return true;
    for (const auto& g : a)
        if (!o.contains(g)) return false;
    for (const auto& g : b)
        if (!contains(g)) return false;
    return true;
}

std::string AffineMonoid::to_string() const {
    std::ostringstream os;
    os << "<";
    for (std::size_t i = 0; i < d_->gens.size(); ++i) os << (i ? ", " : "") << vec_str(d_->gens[i]);
    os << "> in Z^" << d_->d;
    return os.str();
}

MonoidHom::MonoidHom(AffineMonoid source, AffineMonoid target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_.ambient_rank() || matrix_.cols() != source_.ambient_rank())
        throw PreconditionError("monoid map matrix has shape " + std::to_string(matrix_.rows()) + "x" +
                                std::to_string(matrix_.cols()) + ", expected " +
                                std::to_string(target_.ambient_rank()) + "x" + std::to_string(source_.ambient_rank()));
    for (const auto& g : source_.generators()) {
        IntVec img = matrix_.apply(g);
        if (!target_.contains(img))
            throw PreconditionError("generator " + vec_str(g) + " maps to " + vec_str(img) + " outside the target");
    }
    group_map_ = IntMatrix(target_.rank(), source_.rank());
    for (std::size_t j = 0; j < source_.rank(); ++j) {
        auto y = target_.to_group(matrix_.apply(source_.group_basis()[j]));
        for (std::size_t i = 0; i < target_.rank(); ++i) group_map_(i, j) = static_cast<long>((*y)[i]);
    }
}

MonoidHom MonoidHom::identity(const AffineMonoid& M) {
    return MonoidHom(M, M, IntMatrix::identity(M.ambient_rank()));
}

MonoidHom MonoidHom::zero(const AffineMonoid& source, const AffineMonoid& target) {
    return MonoidHom(source, target, IntMatrix(target.ambient_rank(), source.ambient_rank()));
}

MonoidHom MonoidHom::compose_after(const MonoidHom& first) const {
    return MonoidHom(first.source(), target_, matrix_ * first.matrix());
}

}  // namespace loghh
