#include "loghh/detail/enumerate.hpp"

#include <algorithm>
#include <set>

namespace loghh::detail {

bool BelowCache::contains(const IntVec& v) {
    auto it = member_.find(v);
    if (it != member_.end()) return it->second;
    bool r = S_.contains(v);
    member_.emplace(v, r);
    return r;
}

const std::vector<IntVec>& BelowCache::below(const IntVec& top) {
    auto it = below_.find(top);
    if (it != below_.end()) return it->second;
    std::vector<IntVec> out;
    if (contains(top)) {
        std::set<IntVec> seen;
        std::vector<IntVec> frontier{IntVec(S_.ambient_rank(), 0)};
        seen.insert(frontier[0]);
        while (!frontier.empty()) {
            std::vector<IntVec> next;
            for (const auto& x : frontier) {
                out.push_back(x);
                for (const auto& g : S_.generators()) {
                    IntVec y = add(x, g);
                    if (!seen.insert(y).second) continue;
                    if (contains(sub(top, y))) next.push_back(y);
                }
            }
            frontier = std::move(next);
        }
        std::sort(out.begin(), out.end());
    }
    return below_.emplace(top, std::move(out)).first->second;
}

std::vector<IntVec> elements_below(const AffineMonoid& S, const IntVec& top) {
    BelowCache c(S);
    return c.below(top);
}

namespace {

void compose_rec(BelowCache& c, const IntVec& rest, std::size_t parts, IntVec& prefix, std::vector<IntVec>& out) {
    if (parts == 1) {
        if (!c.contains(rest)) return;
        IntVec full = prefix;
        full.insert(full.end(), rest.begin(), rest.end());
        out.push_back(std::move(full));
        return;
    }
    const std::vector<IntVec>& xs = c.below(rest);  // map nodes are stable
    for (const auto& x : xs) {
        std::size_t n = prefix.size();
        prefix.insert(prefix.end(), x.begin(), x.end());
        compose_rec(c, sub(rest, x), parts - 1, prefix, out);
        prefix.resize(n);
    }
}

}  // namespace

std::vector<IntVec> compositions(BelowCache& c, const IntVec& m, std::size_t parts) {
    std::vector<IntVec> out;
    if (parts == 0) return out;
    IntVec prefix;
    compose_rec(c, m, parts, prefix, out);
    return out;
}

bool within_diameter(const IntVec& h, std::size_t r, std::int64_t radius) {
    if (r == 0) return true;
    const std::size_t len = h.size() / r;
    for (std::size_t c = 0; c < r; ++c) {
        std::int64_t lo = 0, hi = 0;
        for (std::size_t j = 0; j < len; ++j) {
            lo = std::min(lo, h[j * r + c]);
            hi = std::max(hi, h[j * r + c]);
        }
        if (hi - lo > radius) return false;
    }
    return true;
}

std::vector<IntVec> rips_sequences(std::size_t r, std::size_t len, std::int64_t radius) {
    std::vector<IntVec> out;
    if (r == 0) {
        out.push_back({});
        return out;
    }
    // each coordinate independently: sequences in [-radius, radius] with range <= radius
    std::vector<IntVec> per;
    IntVec cur(len, -radius);
    if (len == 0) {
        per.push_back({});
    } else {
        for (;;) {
            std::int64_t lo = 0, hi = 0;
            for (auto v : cur) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            if (hi - lo <= radius) per.push_back(cur);
            std::size_t i = 0;
            while (i < len && cur[i] == radius) cur[i++] = -radius;
            if (i == len) break;
            ++cur[i];
        }
    }
    std::vector<std::size_t> pick(r, 0);
    for (;;) {
        IntVec h(len * r);
        for (std::size_t j = 0; j < len; ++j)
            for (std::size_t c = 0; c < r; ++c) h[j * r + c] = per[pick[c]][j];
        out.push_back(std::move(h));
        std::size_t c = 0;
        while (c < r && pick[c] + 1 == per.size()) pick[c++] = 0;
        if (c == r) break;
        ++pick[c];
    }
    std::sort(out.begin(), out.end());
    return out;
}

SparseComplex assemble(const Levels& L, const FaceFn& face) {
    SparseComplex c;
    const std::size_t top = L.simplices.size();
    for (std::size_t q = 0; q < top; ++q) c.dims.push_back(L.simplices[q].size());
    for (std::size_t q = 1; q < top; ++q) {
        SparseMatrix d(L.simplices[q - 1].size(), L.simplices[q].size());
        for (std::size_t j = 0; j < L.simplices[q].size(); ++j) {
            for (std::size_t i = 0; i <= q; ++i) {
                auto f = face(q, L.simplices[q][j], i);
                if (!f) continue;
                auto it = L.index[q - 1].find(*f);
                if (it == L.index[q - 1].end())
                    throw std::logic_error("face of a simplex is missing from the level below: " + vec_str(*f));
                d.add(it->second, j, (i % 2 == 0) ? 1 : -1);
            }
        }
        d.normalize();
        c.d.push_back(std::move(d));
    }
    return c;
}

void for_each_index(std::size_t n, bool parallel, const std::function<void(std::size_t)>& body) {
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::size_t i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace loghh::detail
