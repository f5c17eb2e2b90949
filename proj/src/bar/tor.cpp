#include "models.hpp"

namespace loghh {

namespace {

void tuples_rec(detail::BelowCache& Mc, const MonoidHom& theta, const std::vector<IntVec>& E, std::size_t left,
                const IntVec& rem, IntVec& prefix, std::vector<IntVec>& out) {
    if (left == 0) {
        out.push_back(prefix);
        return;
    }
    for (const auto& p : E) {
        IntVec next = sub(rem, theta.apply(p));
        if (!Mc.contains(next)) continue;
        const std::size_t n = prefix.size();
        prefix.insert(prefix.end(), p.begin(), p.end());
        tuples_rec(Mc, theta, E, left - 1, next, prefix, out);
        prefix.resize(n);
    }
}

}  // namespace

HomotopyTable graded_tor(const MonoidHom& theta, const std::vector<IntVec>& ideal, const Coefficients& k,
                         std::size_t qmax, const std::vector<IntVec>& degrees, const BarOptions& opt) {
    const AffineMonoid& P = theta.source();
    const AffineMonoid& M = theta.target();
    if (!P.is_sharp() || !M.is_sharp()) throw Unsupported("graded Tor needs sharp monoids");
    for (const auto& g : P.generators())
        if (is_zero(theta.apply(g))) throw Unsupported("graded Tor needs theta nonzero on generators");
    const std::size_t dP = P.ambient_rank();

    GradedComplex gc{k, degrees, std::vector<SparseComplex>(degrees.size())};
    detail::for_each_index(degrees.size(), opt.parallel, [&](std::size_t i) {
        const IntVec& m = degrees[i];
        detail::BelowCache Mc(M);
        auto in_ideal = [&](const IntVec& x) {
            for (const auto& g : ideal)
                if (Mc.contains(sub(x, g))) return true;
            return false;
        };
        // x determined by the tuple: x = m - theta(p_1 + ... + p_q)
        auto rest = [&](const IntVec& key) {
            IntVec x = m;
            for (std::size_t j = 0; j * dP < key.size(); ++j)
                x = sub(x, theta.apply(IntVec(key.begin() + static_cast<std::ptrdiff_t>(j * dP),
                                              key.begin() + static_cast<std::ptrdiff_t>((j + 1) * dP))));
            return x;
        };
        std::vector<IntVec> E;
        for (auto& s : detail::elements_over(P, theta.matrix(), Mc, m))
            if (!is_zero(s)) E.push_back(std::move(s));
        detail::Levels L(qmax + 2);
        for (std::size_t q = 0; q <= qmax + 1; ++q) {
            std::vector<IntVec> tuples;
            IntVec prefix;
            if (Mc.contains(m)) tuples_rec(Mc, theta, E, q, m, prefix, tuples);
            std::sort(tuples.begin(), tuples.end());
            for (const auto& t : tuples)
                if (!in_ideal(rest(t))) L.add(q, t);
        }
        gc.pieces[i] = detail::assemble(L, [&](std::size_t q, const IntVec& key, std::size_t f) -> std::optional<IntVec> {
            if (f == 0) return std::nullopt;  // augmentation kills a positive-degree p_1
            IntVec out;
            if (f < q) {
                out.assign(key.begin(), key.begin() + static_cast<std::ptrdiff_t>((f - 1) * dP));
                for (std::size_t c = 0; c < dP; ++c) out.push_back(key[(f - 1) * dP + c] + key[f * dP + c]);
                out.insert(out.end(), key.begin() + static_cast<std::ptrdiff_t>((f + 1) * dP), key.end());
            } else {
                out.assign(key.begin(), key.begin() + static_cast<std::ptrdiff_t>((q - 1) * dP));
                if (in_ideal(rest(out))) return std::nullopt;
            }
            return out;
        });
    });
    auto t = homology_table(gc, qmax, opt);
    t.shape = "normalized bar resolution";
    return t;
}

}  // namespace loghh
