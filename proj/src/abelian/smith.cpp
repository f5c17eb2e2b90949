#include "loghh/abelian.hpp"
#include "loghh/detail/smith_core.hpp"

#include <algorithm>

namespace loghh {

namespace {

struct Tracker {
    IntMatrix* U = nullptr;
    IntMatrix* Uinv = nullptr;
    IntMatrix* V = nullptr;
    IntMatrix* Vinv = nullptr;
    bool on() const { return U != nullptr; }
};

void swap_rows(IntMatrix& M, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < M.cols(); ++j) std::swap(M(a, j), M(b, j));
}
void swap_cols(IntMatrix& M, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < M.rows(); ++i) std::swap(M(i, a), M(i, b));
}
// row_i += q * row_t
void add_row(IntMatrix& M, std::size_t i, std::size_t t, const Int& q) {
    for (std::size_t j = 0; j < M.cols(); ++j)
        if (M(t, j) != 0) M(i, j) += q * M(t, j);
}
// col_j += q * col_t
void add_col(IntMatrix& M, std::size_t j, std::size_t t, const Int& q) {
    for (std::size_t i = 0; i < M.rows(); ++i)
        if (M(i, t) != 0) M(i, j) += q * M(i, t);
}

struct Ops {
    IntMatrix& D;
    Tracker tr;

    void row_swap(std::size_t a, std::size_t b) {
        swap_rows(D, a, b);
        if (tr.on()) {
            swap_rows(*tr.U, a, b);
            swap_cols(*tr.Uinv, a, b);
        }
    }
    void col_swap(std::size_t a, std::size_t b) {
        swap_cols(D, a, b);
        if (tr.on()) {
            swap_cols(*tr.V, a, b);
            swap_rows(*tr.Vinv, a, b);
        }
    }
    // row_i += q row_t
    void row_add(std::size_t i, std::size_t t, const Int& q) {
        add_row(D, i, t, q);
        if (tr.on()) {
            add_row(*tr.U, i, t, q);
            Int mq = -q;
            add_col(*tr.Uinv, t, i, mq);
        }
    }
    // col_j += q col_t
    void col_add(std::size_t j, std::size_t t, const Int& q) {
        add_col(D, j, t, q);
        if (tr.on()) {
            add_col(*tr.V, j, t, q);
            Int mq = -q;
            add_row(*tr.Vinv, t, j, mq);
        }
    }
    void row_negate(std::size_t i) {
        for (std::size_t j = 0; j < D.cols(); ++j) D(i, j) = -D(i, j);
        if (tr.on()) {
            for (std::size_t j = 0; j < tr.U->cols(); ++j) (*tr.U)(i, j) = -(*tr.U)(i, j);
            for (std::size_t r = 0; r < tr.Uinv->rows(); ++r) (*tr.Uinv)(r, i) = -(*tr.Uinv)(r, i);
        }
    }
};

void snf_core(IntMatrix& D, Tracker tr) {
    Ops ops{D, tr};
    const std::size_t m = D.rows(), n = D.cols();
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        // pivot: minimal |entry|, ties broken by (row, col)
        bool found = false;
        std::size_t pi = 0, pj = 0;
        Int best;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                if (D(i, j) == 0) continue;
                Int a = abs(D(i, j));
                if (!found || a < best) {
                    found = true;
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        ops.row_swap(t, pi);
        ops.col_swap(t, pj);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
                if (q != 0) ops.row_add(i, t, -q);
            }
            std::size_t bi = t;
            for (std::size_t i = t + 1; i < m; ++i)
                if (D(i, t) != 0 && abs(D(i, t)) < abs(D(bi, t))) bi = i;
            if (bi != t) {
                ops.row_swap(t, bi);
                clean = false;
                continue;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
                if (q != 0) ops.col_add(j, t, -q);
            }
            std::size_t bj = t;
            for (std::size_t j = t + 1; j < n; ++j)
                if (D(t, j) != 0 && abs(D(t, j)) < abs(D(t, bj))) bj = j;
            if (bj != t) {
                ops.col_swap(t, bj);
                clean = false;
                continue;
            }
            bool col_zero = true;
            for (std::size_t i = t + 1; i < m && col_zero; ++i) col_zero = D(i, t) == 0;
            if (!col_zero) continue;
            if (!clean) continue;
            // divisibility of the remaining block by the pivot
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D(i, j) != 0 && !mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
                        ops.row_add(t, i, Int(1));
                        fixed = true;
                        break;
                    }
            if (!fixed) break;
        }
        if (D(t, t) < 0) ops.row_negate(t);
    }
}

}  // namespace

std::size_t SmithForm::rank() const {
    std::size_t r = 0;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
        if (D(i, i) != 0) ++r;
    return r;
}

std::vector<Int> SmithForm::diagonal() const {
    std::vector<Int> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
}

SmithForm smith_normal_form(const IntMatrix& A) {
    SmithForm s;
    s.D = A;
    s.U = IntMatrix::identity(A.rows());
    s.Uinv = s.U;
    s.V = IntMatrix::identity(A.cols());
    s.Vinv = s.V;
    snf_core(s.D, Tracker{&s.U, &s.Uinv, &s.V, &s.Vinv});
    return s;
}

namespace detail {

std::vector<Int> invariant_factors(IntMatrix A) {
    snf_core(A, Tracker{});
    std::vector<Int> d;
    for (std::size_t i = 0; i < std::min(A.rows(), A.cols()); ++i)
        if (A(i, i) != 0) d.push_back(A(i, i));
    return d;
}

}  // namespace detail

FgAbGroup cokernel_structure(const IntMatrix& A) {
    auto d = detail::invariant_factors(A);
    FgAbGroup g;
    g.free_rank = A.rows() - d.size();
    for (const auto& x : d)
        if (x > 1) g.torsion.push_back(x);
    return g;
}

}  // namespace loghh
