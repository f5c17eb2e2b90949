#include "models.hpp"

#include <deque>
#include <limits>
#include <set>

namespace loghh {

namespace detail {

std::vector<IntVec> elements_over(const AffineMonoid& N, const IntMatrix& alpha, BelowCache& M, const IntVec& m) {
    std::vector<IntVec> out;
    if (!M.contains(m)) return out;
    IntVec zero(N.ambient_rank(), 0);
    std::set<IntVec> seen{zero};
    std::vector<IntVec> frontier{zero};
    while (!frontier.empty()) {
        std::vector<IntVec> next;
        for (const auto& s : frontier) {
            out.push_back(s);
            for (const auto& g : N.generators()) {
                IntVec t = add(s, g);
                if (seen.insert(t).second && M.contains(sub(m, alpha.apply(t)))) next.push_back(std::move(t));
            }
        }
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

IntVec cyclic_face(const IntVec& x, std::size_t d, std::size_t q, std::size_t i) {
    IntVec out;
    out.reserve(q * d);
    auto part = [&](std::size_t j) { return x.begin() + static_cast<std::ptrdiff_t>(j * d); };
    if (i < q) {
        out.insert(out.end(), part(0), part(i));
        for (std::size_t c = 0; c < d; ++c) out.push_back(x[i * d + c] + x[(i + 1) * d + c]);
        out.insert(out.end(), part(i + 2), part(q + 1));
    } else {
        for (std::size_t c = 0; c < d; ++c) out.push_back(x[q * d + c] + x[c]);
        out.insert(out.end(), part(1), part(q));
    }
    return out;
}

namespace {

// Face d_i of homogeneous coordinates (h_1..h_q), h_0 = 0 implicit.
IntVec homogeneous_face(const IntVec& h, std::size_t r, std::size_t q, std::size_t i) {
    IntVec out;
    out.reserve((q - 1) * r);
    for (std::size_t j = 1; j <= q; ++j) {
        if (j == i || (i == 0 && j == 1)) continue;
        for (std::size_t c = 0; c < r; ++c) out.push_back(h[(j - 1) * r + c] - (i == 0 ? h[c] : 0));
    }
    return out;
}

IntVec slice(const IntVec& v, std::size_t from, std::size_t len) {
    return IntVec(v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(from + len));
}

}  // namespace

Retraction group_retraction(const AffineMonoid& M, const AffineMonoid& N, const IntMatrix& alpha) {
    Retraction r;
    r.rank = N.rank();
    r.M = M;
    if (r.rank == 0) return r;
    // least-squares left inverse (A^T A)^{-1} A^T, with U G V = diag(g) for G = A^T A
    std::vector<IntVec> cols;
    for (const auto& b : N.group_basis()) cols.push_back(*M.to_group(alpha.apply(b)));
    IntMatrix A = IntMatrix::from_columns(cols, M.rank()), At = A.transpose();
    SmithForm sf = smith_normal_form(At * A);
    auto diag = sf.diagonal();
    if (sf.rank() != r.rank) throw Unsupported("structure map is not injective on group completions");
    Int D = 1;
    for (const auto& x : diag) D = lcm(D, x);
    IntMatrix S = sf.U * At;
    for (std::size_t i = 0; i < r.rank; ++i)
        for (std::size_t j = 0; j < M.rank(); ++j) S(i, j) *= D / diag[i];
    IntMatrix B = sf.V * S;
    Int g = D;
    for (std::size_t i = 0; i < r.rank; ++i)
        for (std::size_t j = 0; j < M.rank(); ++j) g = gcd(g, B(i, j));
    for (std::size_t i = 0; i < r.rank; ++i)
        for (std::size_t j = 0; j < M.rank(); ++j) B(i, j) /= g;
    r.scale = to_i64(D / g);
    r.B = std::move(B);
    return r;
}

IntVec Retraction::phi(const IntVec& x, std::size_t d, std::size_t q) const {
    IntVec out(q * rank, 0), run(rank, 0);
    if (rank == 0) return out;
    for (std::size_t j = 1; j <= q; ++j) {
        run = add(run, B.apply(*M->to_group(slice(x, j * d, d))));
        std::copy(run.begin(), run.end(), out.begin() + static_cast<std::ptrdiff_t>((j - 1) * rank));
    }
    return out;
}

IntVec Retraction::invariant(const IntVec& x, std::size_t d, std::size_t q, const IntVec& h) const {
    return add(loghh::scale(h, this->scale), phi(x, d, q));
}

PushoutBarDegree::PushoutBarDegree(const AffineMonoid& M, const std::vector<IntVec>& ideal, const AffineMonoid& N,
                                   const IntMatrix& alpha, const IntVec& m, std::size_t top, bool replete,
                                   std::int64_t radius)
    : d_(M.ambient_rank()), dN_(N.ambient_rank()), rN_(replete ? N.rank() : 0), m_(m), lv_(top + 1),
      levels_(top + 1) {
    if (m.size() != d_) throw PreconditionError("degree " + vec_str(m) + " has the wrong length");
    if (rN_) ret_ = group_retraction(M, N, alpha);
    const std::int64_t D = ret_.scale;
    BelowCache Mc(M), Nc(N);
    auto svals = elements_over(N, alpha, Mc, m);
    for (std::size_t q = 0; q <= top; ++q) {
        build_level(q, ideal, N, alpha, Mc, Nc, svals);
        auto seqs = rips_sequences(rN_, q, D * radius);
        std::set<IntVec> keys;
        // the coset of H mod D is constant on a component
        for (std::size_t t : lv_[q].root) {
            const IntVec& phi = lv_[q].phi[t];
            for (const auto& H : seqs) {
                bool coset = true;
                for (std::size_t e = 0; e < H.size() && coset; ++e) coset = (H[e] - phi[e]) % D == 0;
                if (!coset) continue;
                if (auto k = class_key(q, lv_[q].states[t], H)) keys.insert(std::move(*k));
            }
        }
        for (const auto& k : keys) levels_.add(q, k);
    }
    complex_ = assemble(levels_, [&](std::size_t q, const IntVec& key, std::size_t i) {
        const std::size_t xl = (q + 1) * d_;
        IntVec x = slice(key, 0, xl), s = slice(key, xl, dN_), H = slice(key, xl + dN_, q * rN_);
        IntVec H2 = rN_ ? homogeneous_face(H, rN_, q, i) : IntVec{};
        return class_key(q - 1, concat(cyclic_face(x, d_, q, i), s), H2);
    });
}

void PushoutBarDegree::build_level(std::size_t q, const std::vector<IntVec>& ideal, const AffineMonoid& N,
                                   const IntMatrix& alpha, BelowCache& Mc, BelowCache& Nc,
                                   const std::vector<IntVec>& svals) {
    Level& L = lv_[q];
    for (const auto& s : svals)
        for (auto& x : compositions(Mc, sub(m_, alpha.apply(s)), q + 1)) L.states.push_back(concat(x, s));
    std::sort(L.states.begin(), L.states.end());
    for (std::size_t t = 0; t < L.states.size(); ++t) L.index.emplace(L.states[t], t);

    struct Move {
        IntVec image, gen;
    };
    std::vector<Move> moves;
    for (const auto& g : N.generators()) moves.push_back({alpha.apply(g), g});
    auto in_ideal = [&](const IntVec& x) {
        for (const auto& g : ideal)
            if (Mc.contains(sub(x, g))) return true;
        return false;
    };

    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    const std::size_t n = L.states.size(), xl = (q + 1) * d_;
    L.phi.resize(n);
    for (std::size_t t = 0; t < n; ++t) L.phi[t] = ret_.phi(L.states[t], d_, q);
    L.comp.assign(n, none);
    for (std::size_t t0 = 0; t0 < n; ++t0) {
        if (L.comp[t0] != none) continue;
        const std::size_t c = L.root.size();
        L.root.push_back(t0);
        L.zero.push_back(false);
        L.unit_slot.emplace_back(q + 1, 0);
        L.comp[t0] = c;
        std::deque<std::size_t> queue{t0};
        auto visit = [&](const IntVec& key) {
            auto it = L.index.find(key);
            if (it == L.index.end()) throw std::logic_error("pushout move leaves the state space: " + vec_str(key));
            if (L.comp[it->second] == none) {
                L.comp[it->second] = c;
                queue.push_back(it->second);
            }
        };
        while (!queue.empty()) {
            const std::size_t t = queue.front();
            queue.pop_front();
            const IntVec& st = L.states[t];
            const IntVec s = slice(st, xl, dN_);
            for (std::size_t i = 0; i <= q; ++i) {
                IntVec xi = slice(st, i * d_, d_);
                if (!L.zero[c] && in_ideal(xi)) L.zero[c] = true;
                if (i >= 1 && is_zero(xi)) L.unit_slot[c][i] = 1;
            }
            for (const auto& mv : moves) {
                for (std::size_t i = 0; i <= q; ++i) {
                    if (Nc.contains(sub(s, mv.gen))) {
                        IntVec key = st;
                        for (std::size_t r = 0; r < d_; ++r) key[i * d_ + r] += mv.image[r];
                        for (std::size_t r = 0; r < dN_; ++r) key[xl + r] -= mv.gen[r];
                        visit(key);
                    }
                    if (Mc.contains(sub(slice(st, i * d_, d_), mv.image))) {
                        IntVec key = st;
                        for (std::size_t r = 0; r < d_; ++r) key[i * d_ + r] -= mv.image[r];
                        for (std::size_t r = 0; r < dN_; ++r) key[xl + r] += mv.gen[r];
                        visit(key);
                    }
                }
            }
        }
    }
}

bool PushoutBarDegree::good(std::size_t q, std::size_t c, const IntVec& H) const {
    const Level& L = lv_[q];
    if (L.zero[c]) return false;
    // an empty slot leaves the partial sums of beta(x) unchanged, so degeneracy there reads H_j = H_{j-1}
    for (std::size_t j = 1; j <= q; ++j) {
        if (!L.unit_slot[c][j]) continue;
        bool same = true;
        for (std::size_t r = 0; r < rN_ && same; ++r)
            same = H[(j - 1) * rN_ + r] == (j == 1 ? 0 : H[(j - 2) * rN_ + r]);
        if (same) return false;
    }
    return true;
}

std::optional<IntVec> PushoutBarDegree::class_key(std::size_t q, const IntVec& state, const IntVec& H) const {
    const Level& L = lv_[q];
    auto it = L.index.find(state);
    if (it == L.index.end()) throw std::logic_error("unknown bar state " + vec_str(state));
    const std::size_t c = L.comp[it->second];
    if (!good(q, c, H)) return std::nullopt;
    return concat(L.states[L.root[c]], H);
}

std::optional<std::size_t> PushoutBarDegree::basis_index(std::size_t q, const IntVec& x, const IntVec& s,
                                                         const IntVec& h) const {
    auto st = lv_[q].index.find(concat(x, s));
    if (st == lv_[q].index.end()) throw std::logic_error("unknown bar state " + vec_str(concat(x, s)));
    auto key = class_key(q, st->first, add(scale(h, ret_.scale), lv_[q].phi[st->second]));
    if (!key) return std::nullopt;
    auto it = levels_.index[q].find(*key);
    if (it == levels_.index[q].end()) throw std::logic_error("bar class outside the truncation: " + vec_str(*key));
    return it->second;
}

void require_enumerable_log(const PreLogMap& f) {
    const PreLogRing& R = f.source;
    const PreLogRing& A = f.target;
    if (!R.ring_monoid.generators().empty() || !R.prelog_monoid.generators().empty() || !R.ideal.empty())
        throw Unsupported("enumerated log bar model needs the base to be the point");
    if (!A.ring_monoid.is_sharp()) throw Unsupported("enumerated log bar model needs a sharp ring monoid");
    for (const auto& n : A.prelog_monoid.generators())
        if (is_zero(A.structure.apply(n)))
            throw Unsupported("enumerated log bar model needs the structure map nonzero on generators");
    std::vector<IntVec> img;
    for (const auto& b : A.prelog_monoid.group_basis()) img.push_back(A.structure.apply(b));
    if (lattice_basis(img, A.rank()).size() != A.prelog_monoid.rank())
        throw Unsupported("enumerated log bar model needs the structure map injective on group completions");
}

}  // namespace detail

GradedComplex cyclic_bar_complex(const MonoidHom& theta, const std::vector<IntVec>& ideal, const Coefficients& k,
                                 std::size_t top, const std::vector<IntVec>& degrees, const BarOptions& opt) {
    const AffineMonoid& M = theta.target();
    if (!M.is_sharp()) throw Unsupported("cyclic bar enumeration needs a sharp target monoid");
    for (const auto& g : theta.source().generators())
        if (is_zero(theta.apply(g))) throw Unsupported("cyclic bar enumeration needs theta nonzero on generators");
    GradedComplex gc{k, degrees, std::vector<SparseComplex>(degrees.size())};
    detail::for_each_index(degrees.size(), opt.parallel, [&](std::size_t i) {
        gc.pieces[i] =
            detail::PushoutBarDegree(M, ideal, theta.source(), theta.matrix(), degrees[i], top, false, 0).complex();
    });
    return gc;
}

GradedComplex loghh_complex(const PreLogMap& f, std::size_t top, const std::vector<IntVec>& degrees,
                            const BarOptions& opt) {
    detail::require_enumerable_log(f);
    const PreLogRing& A = f.target;
    GradedComplex gc{A.coeff, degrees, std::vector<SparseComplex>(degrees.size())};
    detail::for_each_index(degrees.size(), opt.parallel, [&](std::size_t i) {
        gc.pieces[i] = detail::PushoutBarDegree(A.ring_monoid, A.ideal, A.prelog_monoid, A.structure.matrix(),
                                                degrees[i], top, true, opt.rips_radius)
                           .complex();
    });
    return gc;
}

SparseComplex group_bar_complex(const FgAbGroup& G, std::size_t top, std::int64_t radius) {
    const std::size_t f = G.free_rank, t = G.torsion.size(), w = f + t;
    std::vector<std::int64_t> orders;
    for (const auto& o : G.torsion) orders.push_back(to_i64(o));
    auto reduce = [&](IntVec e) {
        for (std::size_t c = 0; c < t; ++c) e[f + c] = ((e[f + c] % orders[c]) + orders[c]) % orders[c];
        return e;
    };
    // homogeneous coordinates (h_1..h_q), h_0 = 0; nondegenerate when consecutive entries differ
    auto nondegenerate = [&](const IntVec& h, std::size_t q) {
        for (std::size_t j = 0; j < q; ++j) {
            bool same = true;
            for (std::size_t c = 0; c < w && same; ++c) same = h[j * w + c] == (j == 0 ? 0 : h[(j - 1) * w + c]);
            if (same) return false;
        }
        return true;
    };
    detail::Levels L(top + 1);
    for (std::size_t q = 0; q <= top; ++q) {
        std::vector<IntVec> torsion_parts{IntVec{}};
        for (std::size_t j = 0; j < q; ++j) {
            std::vector<IntVec> next;
            for (const auto& p : torsion_parts) {
                IntVec code(t, 0);
                for (;;) {
                    next.push_back(concat(p, code));
                    std::size_t c = 0;
                    while (c < t && code[c] + 1 == orders[c]) code[c++] = 0;
                    if (c == t) break;
                    ++code[c];
                }
            }
            torsion_parts = std::move(next);
        }
        std::vector<IntVec> keys;
        for (const auto& fr : detail::rips_sequences(f, q, radius)) {
            for (const auto& tp : torsion_parts) {
                IntVec h;
                for (std::size_t j = 0; j < q; ++j) {
                    h.insert(h.end(), fr.begin() + static_cast<std::ptrdiff_t>(j * f),
                             fr.begin() + static_cast<std::ptrdiff_t>((j + 1) * f));
                    h.insert(h.end(), tp.begin() + static_cast<std::ptrdiff_t>(j * t),
                             tp.begin() + static_cast<std::ptrdiff_t>((j + 1) * t));
                }
                if (nondegenerate(h, q)) keys.push_back(std::move(h));
            }
        }
        std::sort(keys.begin(), keys.end());
        for (const auto& k : keys) L.add(q, k);
    }
    return detail::assemble(L, [&](std::size_t q, const IntVec& h, std::size_t i) -> std::optional<IntVec> {
        IntVec out;
        for (std::size_t j = 1; j <= q; ++j) {
            if (j == i || (i == 0 && j == 1)) continue;
            IntVec e(h.begin() + static_cast<std::ptrdiff_t>((j - 1) * w), h.begin() + static_cast<std::ptrdiff_t>(j * w));
            if (i == 0)
                for (std::size_t c = 0; c < w; ++c) e[c] -= h[c];
            e = reduce(std::move(e));
            out.insert(out.end(), e.begin(), e.end());
        }
        if (!nondegenerate(out, q - 1)) return std::nullopt;
        return out;
    });
}

}  // namespace loghh
