#include "loghh/sparse.hpp"
#include "loghh/detail/smith_core.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <unordered_map>

namespace loghh {

void SparseMatrix::normalize() {
    for (auto& col : columns) {
        std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
        std::vector<Entry> merged;
        for (const auto& e : col) {
            if (!merged.empty() && merged.back().first == e.first)
                merged.back().second += e.second;
            else
                merged.push_back(e);
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Entry& e) { return e.second == 0; }),
                     merged.end());
        col = std::move(merged);
    }
}

std::size_t SparseMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns) n += c.size();
    return n;
}

SparseMatrix SparseMatrix::from_dense(const IntMatrix& A) {
    SparseMatrix s(A.rows(), A.cols());
    for (std::size_t j = 0; j < A.cols(); ++j)
        for (std::size_t i = 0; i < A.rows(); ++i)
            if (A(i, j) != 0) s.columns[j].push_back({static_cast<std::uint32_t>(i), to_i64(A(i, j))});
    return s;
}

IntMatrix SparseMatrix::to_dense() const {
    IntMatrix A(rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
        for (const auto& [i, v] : columns[j]) A(i, j) += static_cast<long>(v);
    return A;
}

bool composite_is_zero(const SparseMatrix& d_low, const SparseMatrix& d_high) {
    if (d_low.cols != d_high.rows) return false;
    std::unordered_map<std::uint32_t, __int128> acc;
    for (const auto& col : d_high.columns) {
        acc.clear();
        for (const auto& [k, v] : col)
            for (const auto& [i, w] : d_low.columns[k]) acc[i] += static_cast<__int128>(v) * w;
        for (const auto& [i, s] : acc)
            if (s != 0) return false;
    }
    return true;
}

namespace {

std::int64_t mod_p(std::int64_t v, std::int64_t p) {
    v %= p;
    return v < 0 ? v + p : v;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    std::int64_t r = 1, b = a, e = p - 2;
    while (e > 0) {
        if (e & 1) r = static_cast<std::int64_t>(static_cast<__int128>(r) * b % p);
        b = static_cast<std::int64_t>(static_cast<__int128>(b) * b % p);
        e >>= 1;
    }
    return r;
}

// Fraction-free elimination over the integers; rank over the rationals.
std::size_t rank_rational_big(const SparseMatrix& A) {
    std::unordered_map<std::uint32_t, std::map<std::uint32_t, Int>> pivots;
    std::size_t rank = 0;
    for (const auto& col : A.columns) {
        std::map<std::uint32_t, Int> w;
        for (const auto& [i, v] : col) w[i] = static_cast<long>(v);
        while (!w.empty()) {
            std::uint32_t lead = w.begin()->first;
            auto it = pivots.find(lead);
            if (it == pivots.end()) {
                pivots.emplace(lead, std::move(w));
                ++rank;
                break;
            }
            const auto& prow = it->second;
            Int a = prow.begin()->second;
            Int b = w.begin()->second;
            Int g = gcd(a, b);
            Int fa = a / g, fb = b / g;
            for (auto& [i, v] : w) v *= fa;
            for (const auto& [i, v] : prow) w[i] -= fb * v;
            Int content = 0;
            for (auto wi = w.begin(); wi != w.end();) {
                if (wi->second == 0) {
                    wi = w.erase(wi);
                } else {
                    content = gcd(content, wi->second);
                    ++wi;
                }
            }
            if (content > 1)
                for (auto& [i, v] : w) v /= content;
        }
    }
    return rank;
}

DivisorSummary divisors_big(const SparseMatrix& A) {
    std::vector<std::map<std::uint32_t, Int>> rows(A.rows);
    std::vector<std::set<std::uint32_t>> cols(A.cols);
    for (std::size_t j = 0; j < A.cols; ++j)
        for (const auto& [i, v] : A.columns[j]) {
            if (v == 0) continue;
            rows[i][static_cast<std::uint32_t>(j)] += static_cast<long>(v);
            cols[j].insert(i);
        }
    std::vector<char> row_alive(A.rows, 1), col_alive(A.cols, 1);
    DivisorSummary out;

    for (;;) {
        // unit pivot with the smallest fill estimate, ties by (column, row)
        bool found = false;
        std::size_t best_cost = 0;
        std::uint32_t pr = 0, pc = 0;
        for (std::size_t j = 0; j < A.cols; ++j) {
            if (!col_alive[j] || cols[j].empty()) continue;
            for (auto i : cols[j]) {
                const Int& v = rows[i].at(static_cast<std::uint32_t>(j));
                if (v != 1 && v != -1) continue;
                std::size_t cost = (cols[j].size() - 1) * (rows[i].size() - 1);
                if (!found || cost < best_cost) {
                    found = true;
                    best_cost = cost;
                    pr = i;
                    pc = static_cast<std::uint32_t>(j);
                }
            }
            if (found && best_cost == 0) break;
        }
        if (!found) break;
        Int u = rows[pr].at(pc);
        std::vector<std::uint32_t> targets(cols[pc].begin(), cols[pc].end());
        for (auto i : targets) {
            if (i == pr) continue;
            Int f = rows[i].at(pc) * u;
            for (const auto& [j, v] : rows[pr]) {
                Int& x = rows[i][j];
                x -= f * v;
                if (x == 0) {
                    rows[i].erase(j);
                    cols[j].erase(i);
                } else {
                    cols[j].insert(i);
                }
            }
        }
        for (const auto& [j, v] : rows[pr]) cols[j].erase(pr);
        rows[pr].clear();
        row_alive[pr] = 0;
        col_alive[pc] = 0;
        ++out.rank;
    }

    std::vector<std::uint32_t> rr, cc;
    for (std::size_t i = 0; i < A.rows; ++i)
        if (row_alive[i] && !rows[i].empty()) rr.push_back(static_cast<std::uint32_t>(i));
    for (std::size_t j = 0; j < A.cols; ++j)
        if (col_alive[j] && !cols[j].empty()) cc.push_back(static_cast<std::uint32_t>(j));
    if (!rr.empty()) {
        std::unordered_map<std::uint32_t, std::size_t> cidx;
        for (std::size_t j = 0; j < cc.size(); ++j) cidx[cc[j]] = j;
        IntMatrix D(rr.size(), cc.size());
        for (std::size_t a = 0; a < rr.size(); ++a)
            for (const auto& [j, v] : rows[rr[a]]) D(a, cidx.at(j)) = v;
        for (const auto& d : detail::invariant_factors(std::move(D))) {
            ++out.rank;
            if (d > 1) out.torsion.push_back(d);
        }
    }
    return out;
}

struct Overflow {};

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
}

enum class Ring { Integers, Rationals, ModP };

// Sparse elimination with pivots chosen by smallest live column, then shortest row. Over the integers only unit
// pivots are taken and the rest is left as a residual block; over the rationals rows are combined fraction-free.
class Eliminator {
public:
    using Row = std::vector<std::pair<std::uint32_t, std::int64_t>>;

    Eliminator(const SparseMatrix& A, Ring ring, std::int64_t p) : ring_(ring), p_(p), rows_(A.rows), cols_(A.cols) {
        for (std::size_t j = 0; j < A.cols; ++j)
            for (const auto& [i, v] : A.columns[j]) {
                std::int64_t x = ring == Ring::ModP ? mod_p(v, p) : v;
                if (x == 0) continue;
                rows_[i].push_back({static_cast<std::uint32_t>(j), x});
                cols_[j].push_back(i);
            }
        for (auto& r : rows_) std::sort(r.begin(), r.end());
    }

    void run() {
        using Key = std::pair<std::size_t, std::uint32_t>;
        std::priority_queue<Key, std::vector<Key>, std::greater<>> heap;
        std::vector<char> col_done(cols_.size(), 0);
        for (std::size_t j = 0; j < cols_.size(); ++j) heap.push({cols_[j].size(), static_cast<std::uint32_t>(j)});
        std::vector<char> row_dead(rows_.size(), 0);
        while (!heap.empty()) {
            auto [cnt, j] = heap.top();
            heap.pop();
            if (col_done[j]) continue;
            auto& live = cols_[j];
            std::sort(live.begin(), live.end());
            live.erase(std::unique(live.begin(), live.end()), live.end());
            live.erase(std::remove_if(live.begin(), live.end(),
                                      [&](std::uint32_t i) { return row_dead[i] || !entry(i, j); }),
                       live.end());
            if (live.empty()) {
                col_done[j] = 1;
                continue;
            }
            if (live.size() != cnt) {
                heap.push({live.size(), j});
                continue;
            }
            std::uint32_t pr = 0;
            bool found = false;
            for (auto i : live) {
                std::int64_t v = *entry(i, j);
                if (ring_ == Ring::Integers && v != 1 && v != -1) continue;
                if (!found || rows_[i].size() < rows_[pr].size()) {
                    pr = i;
                    found = true;
                }
            }
            col_done[j] = 1;
            if (!found) {
                deferred_.push_back(j);
                continue;
            }
            const std::vector<std::uint32_t> targets = live;
            for (auto i : targets)
                if (i != pr) reduce(i, pr, j);
            row_dead[pr] = 1;
            rows_[pr].clear();
            ++rank_;
        }
        if (ring_ == Ring::Integers) {
            std::sort(deferred_.begin(), deferred_.end());
            for (std::size_t i = 0; i < rows_.size(); ++i)
                if (!row_dead[i] && !rows_[i].empty()) residual_rows_.push_back(static_cast<std::uint32_t>(i));
        }
    }

    std::size_t rank() const { return rank_; }

    // Remaining block over the integers: live rows restricted to columns that never got a unit pivot.
    IntMatrix residual() const {
        std::unordered_map<std::uint32_t, std::size_t> cidx;
        for (std::size_t a = 0; a < deferred_.size(); ++a) cidx[deferred_[a]] = a;
        IntMatrix D(residual_rows_.size(), deferred_.size());
        for (std::size_t a = 0; a < residual_rows_.size(); ++a)
            for (const auto& [j, v] : rows_[residual_rows_[a]]) {
                auto it = cidx.find(j);
                if (it == cidx.end()) throw std::logic_error("residual entry outside deferred columns");
                D(a, it->second) = static_cast<long>(v);
            }
        return D;
    }

private:
    Ring ring_;
    std::int64_t p_;
    std::vector<Row> rows_;
    std::vector<std::vector<std::uint32_t>> cols_;
    std::vector<std::uint32_t> deferred_, residual_rows_;
    std::size_t rank_ = 0;

    std::optional<std::int64_t> entry(std::uint32_t i, std::uint32_t j) const {
        const Row& r = rows_[i];
        auto it = std::lower_bound(r.begin(), r.end(), std::make_pair(j, std::numeric_limits<std::int64_t>::min()));
        if (it == r.end() || it->first != j) return std::nullopt;
        return it->second;
    }

    // row_i <- a row_i - b row_pr, clearing column j
    void reduce(std::uint32_t i, std::uint32_t pr, std::uint32_t j) {
        const std::int64_t pv = *entry(pr, j), tv = *entry(i, j);
        std::int64_t a = 1, b = 0;
        if (ring_ == Ring::ModP) {
            b = static_cast<std::int64_t>(static_cast<__int128>(tv) * inv_mod(pv, p_) % p_);
        } else if (ring_ == Ring::Integers) {
            b = tv * pv;  // pv = +-1
        } else {
            std::int64_t g = std::gcd(pv, tv);
            a = pv / g;
            b = tv / g;
        }
        const Row& src = rows_[pr];
        Row& dst = rows_[i];
        Row out;
        out.reserve(dst.size() + src.size());
        std::size_t x = 0, y = 0;
        while (x < dst.size() || y < src.size()) {
            std::uint32_t k;
            std::int64_t v;
            bool fresh = false;
            if (y == src.size() || (x < dst.size() && dst[x].first < src[y].first)) {
                k = dst[x].first;
                v = combine(dst[x].second, a, 0, 0);
                ++x;
            } else if (x == dst.size() || src[y].first < dst[x].first) {
                k = src[y].first;
                v = combine(0, a, src[y].second, b);
                fresh = true;
                ++y;
            } else {
                k = dst[x].first;
                v = combine(dst[x].second, a, src[y].second, b);
                ++x;
                ++y;
            }
            if (v == 0) continue;
            out.push_back({k, v});
            if (fresh) cols_[k].push_back(i);
        }
        if (ring_ == Ring::Rationals) {
            std::int64_t c = 0;
            for (const auto& e : out) c = std::gcd(c, e.second);
            if (c > 1)
                for (auto& e : out) e.second /= c;
        }
        dst = std::move(out);
    }

    std::int64_t combine(std::int64_t u, std::int64_t a, std::int64_t w, std::int64_t b) const {
        if (ring_ == Ring::ModP) {
            __int128 r = (static_cast<__int128>(u) * a - static_cast<__int128>(w) * b) % p_;
            return static_cast<std::int64_t>(r < 0 ? r + p_ : r);
        }
        return checked_sub(checked_mul(u, a), checked_mul(w, b));
    }
};

}  // namespace

std::size_t sparse_rank(const SparseMatrix& A, const Coefficients& k) {
    if (k.kind == Coefficients::Kind::PrimeField) {
        Eliminator e(A, Ring::ModP, static_cast<std::int64_t>(k.p));
        e.run();
        return e.rank();
    }
    try {
        Eliminator e(A, Ring::Rationals, 0);
        e.run();
        return e.rank();
    } catch (const Overflow&) {
        return rank_rational_big(A);
    }
}

DivisorSummary sparse_divisors(const SparseMatrix& A) {
    try {
        Eliminator e(A, Ring::Integers, 0);
        e.run();
        DivisorSummary out;
        out.rank = e.rank();
        for (const auto& d : detail::invariant_factors(e.residual())) {
            ++out.rank;
            if (d > 1) out.torsion.push_back(d);
        }
        return out;
    } catch (const Overflow&) {
        return divisors_big(A);
    }
}

ModuleDesc sparse_homology(const SparseComplex& c, std::size_t n, const Coefficients& k) {
    if (c.d.size() + 1 != c.dims.size() && !(c.d.empty() && c.dims.size() <= 1))
        throw MalformedComplex("complex has inconsistent number of boundaries");
    for (std::size_t i = 0; i < c.d.size(); ++i)
        if (c.d[i].rows != c.dims[i] || c.d[i].cols != c.dims[i + 1])
            throw MalformedComplex("boundary " + std::to_string(i + 1) + " has wrong shape");
    if (n >= c.dims.size()) return {};
    if (n >= 1 && n < c.d.size() && !composite_is_zero(c.d[n - 1], c.d[n]))
        throw MalformedComplex("boundaries do not compose to zero at degree " + std::to_string(n));
    std::size_t r_in = 0;
    std::vector<Int> torsion;
    if (n < c.d.size()) {
        if (k.is_field()) {
            r_in = sparse_rank(c.d[n], k);
        } else {
            auto s = sparse_divisors(c.d[n]);
            r_in = s.rank;
            torsion = s.torsion;
        }
    }
    std::size_t r_out = n >= 1 ? sparse_rank(c.d[n - 1], k.is_field() ? k : Coefficients::rationals()) : 0;
    ModuleDesc h;
    h.free_rank = c.dims[n] - r_out - r_in;
    h.torsion = torsion;
    return h;
}

}  // namespace loghh
