#include "loghh/lattice.hpp"

#include <numeric>
#include <sstream>

namespace loghh {

IntVec add(const IntVec& a, const IntVec& b) {
    IntVec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

IntVec sub(const IntVec& a, const IntVec& b) {
    IntVec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

IntVec scale(const IntVec& a, std::int64_t s) {
    IntVec r(a);
    for (auto& x : r) x *= s;
    return r;
}

IntVec neg(const IntVec& a) { return scale(a, -1); }

std::int64_t dot(const IntVec& a, const IntVec& b) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool is_zero(const IntVec& v) {
    for (auto x : v)
        if (x != 0) return false;
    return true;
}

IntVec primitive(const IntVec& v) {
    std::int64_t g = 0;
    for (auto x : v) g = std::gcd(g, x);
    if (g <= 1) return v;
    IntVec r(v);
    for (auto& x : r) x /= g;
    return r;
}

IntVec concat(const IntVec& a, const IntVec& b) {
    IntVec r(a);
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

std::string vec_str(const IntVec& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

std::vector<IntVec> lattice_basis(const std::vector<IntVec>& gens, std::size_t d) {
    if (gens.empty() || d == 0) return {};
    auto s = smith_normal_form(IntMatrix::from_columns(gens, d));
    std::vector<IntVec> out;
    for (std::size_t i = 0; i < s.rank(); ++i) {
        IntVec c = s.Uinv.column(i);
        out.push_back(scale(c, to_i64(s.D(i, i))));
    }
    return out;
}

std::vector<IntVec> saturation_basis(const std::vector<IntVec>& gens, std::size_t d) {
    if (gens.empty() || d == 0) return {};
    auto s = smith_normal_form(IntMatrix::from_columns(gens, d));
    std::vector<IntVec> out;
    for (std::size_t i = 0; i < s.rank(); ++i) out.push_back(s.Uinv.column(i));
    return out;
}

std::vector<IntVec> kernel_basis(const IntMatrix& A) {
    std::vector<IntVec> out;
    if (A.cols() == 0) return out;
    if (A.rows() == 0) {
        for (std::size_t j = 0; j < A.cols(); ++j) {
            IntVec e(A.cols(), 0);
            e[j] = 1;
            out.push_back(e);
        }
        return out;
    }
    auto s = smith_normal_form(A);
    for (std::size_t j = s.rank(); j < A.cols(); ++j) out.push_back(s.V.column(j));
    return out;
}

std::optional<IntVec> solve_integer(const IntMatrix& A, const IntVec& b) {
    if (b.size() != A.rows()) throw PreconditionError("solve_integer: length mismatch");
    if (A.cols() == 0) {
        if (is_zero(b)) return IntVec{};
        return std::nullopt;
    }
    if (A.rows() == 0) return IntVec(A.cols(), 0);
    auto s = smith_normal_form(A);
    std::vector<Int> bb(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) bb[i] = static_cast<long>(b[i]);
    auto y = s.U.apply(bb);
    std::vector<Int> z(A.cols());
    std::size_t r = s.rank();
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i < r) {
            if (!mpz_divisible_p(y[i].get_mpz_t(), s.D(i, i).get_mpz_t())) return std::nullopt;
            z[i] = y[i] / s.D(i, i);
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    auto x = s.V.apply(z);
    IntVec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = to_i64(x[i]);
    return out;
}

IntMatrix complete_basis(const std::vector<IntVec>& sub, std::size_t d) {
    if (sub.empty()) return IntMatrix::identity(d);
    IntMatrix S = IntMatrix::from_columns(sub, d);
    auto s = smith_normal_form(S);
    if (s.rank() != sub.size()) throw PreconditionError("complete_basis: vectors are dependent");
    for (std::size_t i = 0; i < s.rank(); ++i)
        if (s.D(i, i) != 1) throw PreconditionError("complete_basis: sublattice is not saturated");
    IntMatrix B(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < sub.size(); ++j) B(i, j) = S(i, j);
        for (std::size_t j = sub.size(); j < d; ++j) B(i, j) = s.Uinv(i, j);
    }
    return B;
}

IntMatrix unimodular_inverse(const IntMatrix& M) {
    auto s = smith_normal_form(M);
    if (M.rows() != M.cols() || s.rank() != M.rows()) throw PreconditionError("matrix is not unimodular");
    for (std::size_t i = 0; i < M.rows(); ++i)
        if (s.D(i, i) != 1) throw PreconditionError("matrix is not unimodular");
    return s.V * s.U;
}

LatticeQuotient::LatticeQuotient(const std::vector<IntVec>& gens, std::size_t d) : d_(d) {
    std::vector<Int> orders;
    if (gens.empty() || d == 0) {
        U_ = IntMatrix::identity(d);
        Uinv_ = U_;
        for (std::size_t i = 0; i < d; ++i) coords_.push_back({i, 0});
        group_ = FgAbGroup::free(d);
        return;
    }
    auto s = smith_normal_form(IntMatrix::from_columns(gens, d));
    U_ = s.U;
    Uinv_ = s.Uinv;
    std::size_t r = s.rank();
    for (std::size_t i = r; i < d; ++i) coords_.push_back({i, 0});
    for (std::size_t i = 0; i < r; ++i)
        if (s.D(i, i) > 1) {
            coords_.push_back({i, to_i64(s.D(i, i))});
            orders.push_back(s.D(i, i));
        }
    group_ = FgAbGroup::from_orders(d - r, orders);
}

IntVec LatticeQuotient::normalize_code(IntVec c) const {
    for (std::size_t k = 0; k < coords_.size(); ++k) {
        std::int64_t m = coords_[k].second;
        if (m > 0) {
            c[k] %= m;
            if (c[k] < 0) c[k] += m;
        }
    }
    return c;
}

IntVec LatticeQuotient::reduce(const IntVec& v) const {
    if (v.size() != d_) throw PreconditionError("LatticeQuotient::reduce: length mismatch");
    IntVec c(coords_.size());
    for (std::size_t k = 0; k < coords_.size(); ++k) {
        std::size_t i = coords_[k].first;
        Int s = 0;
        for (std::size_t j = 0; j < d_; ++j)
            if (v[j] != 0) s += U_(i, j) * static_cast<long>(v[j]);
        std::int64_t m = coords_[k].second;
        if (m > 0) {
            Int r;
            mpz_fdiv_r_ui(r.get_mpz_t(), s.get_mpz_t(), static_cast<unsigned long>(m));
            c[k] = r.get_si();
        } else {
            c[k] = to_i64(s);
        }
    }
    return c;
}

IntVec LatticeQuotient::lift(const IntVec& code) const {
    std::vector<Int> y(d_);
    for (std::size_t k = 0; k < coords_.size(); ++k) y[coords_[k].first] = static_cast<long>(code[k]);
    auto x = Uinv_.apply(y);
    IntVec out(d_);
    for (std::size_t i = 0; i < d_; ++i) out[i] = to_i64(x[i]);
    return out;
}

bool LatticeQuotient::is_zero(const IntVec& v) const { return loghh::is_zero(reduce(v)); }

IntVec LatticeQuotient::add_codes(const IntVec& a, const IntVec& b) const { return normalize_code(add(a, b)); }

Int determinant(std::vector<std::vector<Int>> a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    Int det = 1;
    // Bareiss fraction-free elimination
    Int prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            std::swap(a[p], a[k]);
            det = -det;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return det * a[n - 1][n - 1];
}

}  // namespace loghh
