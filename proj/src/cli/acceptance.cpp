#include "loghh/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <random>

namespace loghh {

namespace {

const Coefficients kZ = Coefficients::integers(), kQ = Coefficients::rationals();

AffineMonoid mono(std::size_t d, std::vector<IntVec> gens) { return AffineMonoid(d, std::move(gens)); }
MonoidHom hom(const AffineMonoid& P, const AffineMonoid& M, const std::vector<IntVec>& rows) {
    return MonoidHom(P, M, rows.empty() ? IntMatrix(M.ambient_rank(), P.ambient_rank()) : IntMatrix::from_rows(rows, P.ambient_rank()));
}

AffineMonoid index_two() { return mono(2, {{2, 0}, {1, 1}, {0, 2}}); }
AffineMonoid cusp() { return mono(1, {{2}, {3}}); }

std::vector<IntVec> range1(std::int64_t lo, std::int64_t hi) {
    std::vector<IntVec> out;
    for (std::int64_t j = lo; j <= hi; ++j) out.push_back({j});
    return out;
}

// ---- 1: repletion ----

struct Pair {
    std::string label;
    MonoidHom theta, eta;
};

// N = M x K with the projection and the first inclusion, then a unimodular relabeling of N's ambient lattice.
Pair product_pair(const std::string& label, const AffineMonoid& M, const AffineMonoid& K, std::mt19937_64& rng, bool relabel) {
    const std::size_t a = M.ambient_rank(), b = K.ambient_rank(), n = a + b;
    std::vector<IntVec> gens;
    for (const auto& g : M.generators()) gens.push_back(concat(g, IntVec(b, 0)));
    for (const auto& g : K.generators()) gens.push_back(concat(IntVec(a, 0), g));
    IntMatrix U = IntMatrix::identity(n);
    if (relabel) {
        std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1), coef(-2, 2);
        for (int s = 0; s < 4; ++s) {
            const int i = pick(rng), j = pick(rng);
            if (i == j) continue;
            IntMatrix E = IntMatrix::identity(n);
            E(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = coef(rng);
            U = E * U;
        }
    }
    IntMatrix Uinv = unimodular_inverse(U);
    std::vector<IntVec> ugens;
    for (const auto& g : gens) ugens.push_back(U.apply(g));
    AffineMonoid N(n, ugens);
    IntMatrix proj(a, n), incl(n, a);
    for (std::size_t i = 0; i < a; ++i) proj(i, i) = incl(i, i) = 1;
    return {label, MonoidHom(N, M, proj * Uinv), MonoidHom(M, N, U * incl)};
}

Pair fold_pair(const std::string& label, const AffineMonoid& M) {
    const std::size_t a = M.ambient_rank();
    std::vector<IntVec> gens;
    for (const auto& g : M.generators()) gens.push_back(concat(g, IntVec(a, 0)));
    for (const auto& g : M.generators()) gens.push_back(concat(IntVec(a, 0), g));
    AffineMonoid N(2 * a, gens);
    IntMatrix fold(a, 2 * a), first(2 * a, a);
    for (std::size_t i = 0; i < a; ++i) fold(i, i) = fold(i, a + i) = first(i, i) = 1;
    return {label, MonoidHom(N, M, fold), MonoidHom(M, N, first)};
}

Report repletion_criterion(std::uint64_t seed) {
    Report r;
    r.name = "REPLETION";
    std::mt19937_64 rng(seed);
    const AffineMonoid N1 = AffineMonoid::free_monoid(1), N2 = AffineMonoid::free_monoid(2), Z1 = AffineMonoid::lattice(1);
    std::vector<Pair> pairs;
    pairs.push_back({"addition N^2 -> N, first inclusion", hom(N2, N1, {{1, 1}}), hom(N1, N2, {{1}, {0}})});
    const std::vector<std::pair<std::string, AffineMonoid>> bases = {
        {"N", N1}, {"N^2", N2}, {"Z", Z1}, {"cone A1", mono(2, {{1, 0}, {1, 1}, {1, 2}})}, {"index-2", index_two()},
        {"N+Z", mono(2, {{1, 0}, {0, 1}, {0, -1}})}};
    // targets are saturated (exactify decides membership by the preimage cone); fibers need not be
    for (const auto& [name, M] : bases) pairs.push_back(fold_pair("fold over " + name, M));
    const std::vector<std::pair<std::string, AffineMonoid>> fibers = {{"N", N1}, {"Z", Z1}, {"N^2", N2}, {"cusp", cusp()}};
    for (const auto& [mn, M] : bases)
        for (const auto& [kn, K] : fibers) {
            if (M.ambient_rank() + K.ambient_rank() > 4) continue;
            pairs.push_back(product_pair(mn + " x " + kn + " relabeled", M, K, rng, true));
        }
    pairs.push_back({"trivial target", hom(N2, AffineMonoid::trivial(0), {}), hom(AffineMonoid::trivial(0), N2, {{}, {}})});

    json rows = json::array();
    std::size_t checked = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const Pair& p = pairs[i];
        Report s = split_check(p.theta, p.eta, 40, seed + i);
        s.name = p.label;
        r.absorb(s);
        checked += s.data.value("checked", std::size_t{0});
        rows.push_back({{"pair", p.label}, {"verdict", verdict_name(s.verdict)}});
    }
    // the addition map: N^2 -> N^rep = N + Z sends (m, n) to (m + n, n)
    RepleteSplit sp = replete_split(pairs[0].theta, pairs[0].eta);
    bool verbatim = true;
    for (std::int64_t m = 0; m <= 4; ++m)
        for (std::int64_t n = 0; n <= 4; ++n) {
            auto [mm, code] = sp.forward(sp.repletion.unit({m, n}));
            verbatim = verbatim && mm == IntVec{m + n} && code == IntVec{n};
        }
    r.check(verbatim, "addition map: unit is not (m, n) -> (m + n, n)");
    r.check(pairs.size() >= 20, "fewer than 20 generated pairs");
    r.data = {{"pairs", pairs.size()}, {"elements_checked", checked}, {"addition_map", "(m, n) -> (m + n, n)"}, {"rows", rows}};
    return r;
}

// ---- 2: replete bar ----

Report replete_bar_criterion(std::uint64_t seed) {
    Report r;
    r.name = "REPLETE_BAR";
    const AffineMonoid N1 = AffineMonoid::free_monoid(1), N2 = AffineMonoid::free_monoid(2);
    std::vector<std::pair<std::string, MonoidHom>> maps = {
        {"trivial -> N", hom(AffineMonoid::trivial(0), N1, {{}})},
        {"index-2 -> N^2", hom(index_two(), N2, {{1, 0}, {0, 1}})},
        {"N -(2)-> N", hom(N1, N1, {{2}})},
        {"diagonal N -> N^2", hom(N1, N2, {{1}, {1}})},
        {"trivial -> cusp", hom(AffineMonoid::trivial(0), cusp(), {{}})}};
    json rows = json::array();
    for (std::size_t i = 0; i < maps.size(); ++i) {
        const auto& [label, theta] = maps[i];
        Report v = verify_bar_iso(theta, 3, 12, seed + i);
        v.name = label;
        r.absorb(v);
        auto degrees = degree_box(theta.target(), 3);
        HomotopyTable moore = replete_bar_moore(theta, kZ, 3, degrees);
        HomotopyTable closed = replete_bar_homology(theta, kZ, 3, degrees);
        r.check(moore.pi == closed.pi, label + ": Moore truncation and closed form differ");
        const FgAbGroup G = group_cokernel(theta);
        for (const auto& m : degrees) {
            r.check(moore.at(0, m) == FgAbGroup::free(1), label + ": pi_0 is not k[M] at " + vec_str(m));
            r.check(moore.at(1, m) == change_coefficients(G, kZ), label + ": pi_1 is not k[M] (x) G at " + vec_str(m));
        }
        rows.push_back({{"map", label}, {"G", G.to_string()}, {"bar_iso", verdict_name(v.verdict)},
                        {"checked", v.data.value("checked", 0)}, {"degrees", degrees.size()}});
    }
    r.data = {{"qmax", 3}, {"maps", rows}};
    return r;
}

// ---- 3: free-case HKR ----

Report hkr_criterion(std::uint64_t) {
    Report r;
    r.name = "HKR";
    AffineMonoid N1 = AffineMonoid::free_monoid(1);
    auto degrees = range1(0, 6);
    HomotopyTable t = loghh_homology(PreLogMap::over_point(PreLogRing::canonical(N1, kZ)), 3, degrees);
    for (const auto& m : degrees)
        for (std::size_t q = 0; q <= 3; ++q)
            r.check(t.at(q, m) == FgAbGroup::free(q <= 1 ? 1 : 0),
                    "logHH_" + std::to_string(q) + "(Z[x], <x>) at " + vec_str(m) + " is " + t.at(q, m).to_string());
    json rows = json::array();
    const std::vector<std::vector<std::string>> labels = {{}, {"a"}, {"a", "b"}};
    for (std::size_t x = 0; x <= 2; ++x)
        for (std::size_t y = 0; y <= 2; ++y) {
            std::vector<std::string> X, Y;
            for (const auto& s : labels[x]) X.push_back("x" + s);
            for (const auto& s : labels[y]) Y.push_back("y" + s);
            FreePrelog F = free_prelog(PreLogRing::point(kZ), X, Y);
            Report h = hkr_check(F.unit, 2, degree_box(F.ring.ring_monoid, x + y >= 3 ? 1 : 2));
            h.name = "F(" + std::to_string(x) + "," + std::to_string(y) + ")";
            r.absorb(h);
            rows.push_back({{"X", x}, {"Y", y}, {"verdict", verdict_name(h.verdict)}});
        }
    r.data = {{"free_line", t.to_json()}, {"free_algebras", rows}};
    return r;
}

// ---- 4: pi_1 identification ----

Report pi1_criterion(std::uint64_t) {
    Report r;
    r.name = "PI1";
    AffineMonoid N2 = AffineMonoid::free_monoid(2);
    std::vector<std::pair<std::string, PreLogMap>> maps = {
        {"cusp, canonical log", PreLogMap::over_point(PreLogRing::canonical(cusp(), kZ))},
        {"cusp, trivial log", PreLogMap::over_point(PreLogRing::trivial_log(cusp(), kZ))},
        {"index-2 cone, canonical log", PreLogMap::over_point(PreLogRing::canonical(index_two(), kZ))},
        {"index-2 cone -> N^2, canonical", PreLogMap::canonical(hom(index_two(), N2, {{1, 0}, {0, 1}}), kZ)},
        {"cusp with log on t^2", PreLogMap::over_point(PreLogRing(kZ, cusp(), {}, AffineMonoid::free_monoid(1), IntMatrix::from_rows({{2}}, 1)))}};
    json rows = json::array();
    for (const auto& [label, f] : maps) {
        auto degrees = degree_box(f.target.ring_monoid, f.target.rank() == 1 ? 8 : 3);
        PresentedModule omega = kahler_differentials(f, degrees);
        HomotopyTable t = loghh_homology(f, 1, degrees);
        std::size_t nonzero = 0;
        for (const auto& m : degrees) {
            r.check(omega.graded.at(m) == t.at(1, m), label + ": Omega^1 " + omega.graded.at(m).to_string() + " vs pi_1 " +
                                                          t.at(1, m).to_string() + " at " + vec_str(m));
            nonzero += !t.at(1, m).is_zero();
        }
        rows.push_back({{"map", label}, {"degrees", degrees.size()}, {"nonzero_pieces", nonzero}});
    }
    r.data = {{"maps", rows}};
    return r;
}

// ---- 5: derived log etale collapse ----

Report etale_criterion(std::uint64_t) {
    Report r;
    r.name = "ETALE";
    AffineMonoid N1 = AffineMonoid::free_monoid(1), N2 = AffineMonoid::free_monoid(2);
    MonoidHom incl = hom(index_two(), N2, {{1, 0}, {0, 1}});
    PreLogMap f = PreLogMap::canonical(incl, kQ);
    auto degrees = degree_box(N2, 3);
    for (std::size_t n = 0; n <= 1; ++n) {
        CotangentPi c = cotangent_pi(f, n, degrees);
        r.check(c.fiber.is_zero(), "cotangent pi_" + std::to_string(n) + " is " + c.fiber.to_string() + " over QQ");
        for (const auto& [m, M] : c.graded) r.check(M.is_zero(), "cotangent pi_" + std::to_string(n) + " nonzero at " + vec_str(m));
    }
    HomotopyTable t = loghh_homology(f, 2, degrees);
    for (const auto& m : degrees)
        for (std::size_t q = 0; q <= 2; ++q)
            r.check(t.at(q, m) == FgAbGroup::free(q == 0 ? 1 : 0), "unit map is not an isomorphism in degree " +
                                                                       std::to_string(q) + " at " + vec_str(m));
    json bc = json::array();
    for (std::int64_t n : {2, 3}) {
        PreLogMap g = PreLogMap::over_point(PreLogRing::canonical(N1, kQ));
        PreLogMap kummer = PreLogMap::canonical(hom(N1, N1, {{n}}), kQ);
        Report b = base_change_check(g, kummer, 2, range1(0, 8));
        b.name = "Kummer index " + std::to_string(n);
        r.absorb(b);
        r.check(b.data.value("equivalence", false), b.name + ": base change is not an equivalence");
        bc.push_back({{"index", n}, {"verdict", verdict_name(b.verdict)}});
    }
    const Coefficients F2 = Coefficients::prime_field(2);
    PreLogMap f2 = PreLogMap::canonical(incl, F2);
    MapClassification cls = classify_map(f2);
    r.check(!cls.derived_log_etale, "index-2 inclusion is classified derived log etale over GF(2)");
    CotangentPi c1 = cotangent_pi(f2, 1, degrees);
    r.check(!c1.fiber.is_zero(), "cotangent pi_1 vanishes over GF(2)");
    r.data = {{"QQ", {{"derived_log_etale", classify_map(f).derived_log_etale}, {"loghh", t.shape}}},
              {"base_change", bc},
              {"GF(2)", {{"derived_log_etale", cls.derived_log_etale}, {"cotangent_pi1", module_json(c1.fiber)}}}};
    return r;
}

// ---- 6: non-integrality witness ----

Report integrality_criterion(std::uint64_t) {
    Report r;
    r.name = "INTEGRALITY";
    AffineMonoid N2 = AffineMonoid::free_monoid(2);
    MonoidHom incl = hom(index_two(), N2, {{1, 0}, {0, 1}});
    auto degrees = degree_box(N2, 3);
    HomotopyTable tor = graded_tor(incl, {}, kQ, 1, degrees);
    json nz = json::array();
    for (const auto& m : degrees)
        if (!tor.at(1, m).is_zero()) nz.push_back({{"degree", m}, {"module", module_json(tor.at(1, m))}});
    for (IntVec m : {IntVec{2, 1}, IntVec{1, 2}})
        r.check(tor.at(1, m) == FgAbGroup::free(1), "Tor_1 at " + vec_str(m) + " is " + tor.at(1, m).to_string());
    r.check(tor.at(0, {0, 0}) == FgAbGroup::free(1) && tor.at(0, {1, 0}) == FgAbGroup::free(1) &&
                tor.at(0, {0, 1}) == FgAbGroup::free(1) && tor.at(0, {1, 1}).is_zero(),
            "Tor_0 is not spanned by the monomials 1, x, y");
    TriState t = is_integral(incl);
    r.check(t.is_no(), "is_integral returned " + t.str());
    r.check(t.evidence.find("(2,1)") != std::string::npos || t.evidence.find("(1,2)") != std::string::npos,
            "integrality witness does not name degree (2,1) or (1,2): " + t.evidence);
    r.data = {{"tor1_nonzero", nz}, {"is_integral", t.str()}, {"evidence", t.evidence}};
    return r;
}

// ---- 7: toric subdivision invariance ----

Report toric_criterion(std::uint64_t) {
    Report r;
    r.name = "TORIC";
    auto degrees = lattice_box(2, 6);
    json rows = json::array();
    for (const auto& [label, fan] : {std::pair{"A^2", Fan::named("affine_plane")}, std::pair{"P^2", Fan::named("P2")}}) {
        Subdivision s = star_subdivision(fan, {1, 1});
        Report inv = invariance_check(s, kQ, degrees);
        inv.name = label;
        r.absorb(inv);
        rows.push_back({{"fan", label}, {"refined_cones", s.refined.cones.size()}, {"verdict", verdict_name(inv.verdict)}});
    }
    SubdivisionCertificate cert = is_subdivision(Fan::named("blowup_P2"), Fan::named("P2"));
    r.check(cert.holds, "blowup_P2 is not recognized as a subdivision of P2: " + cert.witness);
    r.data = {{"degree_box", 6}, {"degrees", degrees.size()}, {"checks", rows}};
    return r;
}

// ---- 8: projective space ----

Report projective_criterion(std::uint64_t) {
    Report r;
    r.name = "PROJECTIVE";
    auto degrees = lattice_box(1, 4);
    TotalizedTable T = cech_totalize(standard_scheme("P1", kQ), Theory::LogHH, 3, degrees);
    for (const auto& [n, per] : T.pi) {
        if (T.flagged.count(n)) continue;
        for (const auto& m : degrees)
            r.check(T.at(n, m) == FgAbGroup::free(n == 0 && is_zero(m) ? 2 : 0),
                    "pi_" + std::to_string(n) + " logHH(P^1) at " + vec_str(m) + " is " + T.at(n, m).to_string());
    }
    r.check(T.total(0) == FgAbGroup::free(2), "pi_0 logHH(P^1) is not k^2");
    json pb = json::array();
    AffineMonoid N1 = AffineMonoid::free_monoid(1);
    for (const auto& [label, S] : {std::pair{"point", PreLogRing::point(kQ)}, std::pair{"k[u]", PreLogRing::trivial_log(N1, kQ)},
                                   std::pair{"(k[u], <u>)", PreLogRing::canonical(N1, kQ)}}) {
        Report p = projective_bundle_check(1, S, 2, 2);
        p.name = std::string("P^1 over ") + label;
        r.absorb(p);
        pb.push_back({{"base", label}, {"verdict", verdict_name(p.verdict)}});
    }
    // Hodge input: O and Omega^1 = O(-2) on P^1
    Fan P1 = Fan::named("P1");
    auto box = lattice_box(1, 6);
    json hodge = json::array();
    for (std::size_t q = 0; q <= 1; ++q) {
        ToricDivisor D = q == 0 ? ToricDivisor::zero(P1) : ToricDivisor{{-1, -1}};
        ToricCohomology h = cohomology(P1, kQ, D, 0, box);
        for (std::size_t p = 0; p <= 1; ++p) {
            ModuleDesc total;
            for (const auto& m : box) total = direct_sum(total, h.H.at(m)[p]);
            r.check(total == FgAbGroup::free(p == q ? 1 : 0),
                    "H^" + std::to_string(p) + "(P^1, Omega^" + std::to_string(q) + ") is " + total.to_string());
            hodge.push_back({{"p", p}, {"q", q}, {"dim", total.free_rank}});
        }
    }
    // the same numbers through the glued log-form totalization
    for (std::size_t q = 0; q <= 1; ++q) {
        TotalizedTable O = cech_totalize(standard_scheme("P1", kQ), Theory::Omega, 1, box, q);
        for (std::int64_t p = 0; p <= 1; ++p)
            r.check(O.total(p) == FgAbGroup::free(static_cast<std::size_t>(p) == q ? 1 : 0),
                    "glued H^" + std::to_string(p) + "(Omega^" + std::to_string(q) + ") is " + O.total(p).to_string());
    }
    r.data = {{"pi", T.to_json()}, {"projective_bundle", pb}, {"hodge", hodge}};
    return r;
}

// ---- 9: box invariance ----

Report box_criterion(std::uint64_t) {
    Report r;
    r.name = "BOX";
    Report p = pone_bar_check(kQ, 6);
    r.absorb(p);
    auto degrees = lattice_box(1, 4);
    TotalizedTable T = cech_totalize(standard_scheme("boxbar", kQ), Theory::LogHH, 3, degrees);
    TotalizedTable pt = cech_totalize(standard_scheme("point", kQ), Theory::LogHH, 3, {IntVec{}});
    std::size_t compared = 0;
    for (const auto& [n, per] : T.pi) {
        if (T.flagged.count(n)) continue;
        for (const auto& m : degrees) {
            const ModuleDesc expect = is_zero(m) ? pt.at(n, {}) : ModuleDesc{};
            r.check(T.at(n, m) == expect, "pi_" + std::to_string(n) + " logHH(box) at " + vec_str(m) + " is " +
                                              T.at(n, m).to_string() + ", point gives " + expect.to_string());
            ++compared;
        }
    }
    r.data = {{"pone_bar", p.data}, {"compared", compared}, {"box", T.to_json()}};
    return r;
}

// ---- 10: residue sequences ----

Report residue_criterion(std::uint64_t) {
    Report r;
    r.name = "RESIDUE";
    Report a = residue_check("affine", 1, kQ, 4);
    a.name = "affine";
    r.absorb(a);
    bool dt = false;
    for (const auto& m : a.data.value("maps", json::array())) dt = dt || m.value("coefficient", 0) == 1;
    r.check(dt, "dt -> t dlog t not recorded");
    Report b = residue_check("blowup", 1, kQ, 3);
    b.name = "blowup";
    r.absorb(b);
    r.data = {{"affine", a.data}, {"blowup", b.data}};
    return r;
}

json criterion_json(const Criterion& c, const Report& r) {
    return {{"key", c.key}, {"number", c.number}, {"title", c.title}, {"verdict", verdict_name(r.verdict)},
            {"notes", r.notes}, {"budget_seconds", c.budget_seconds}, {"data", r.data}};
}

struct Timed {
    Report report;
    double seconds = 0;
};

Timed run_one(const Criterion& c, std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    Timed t;
    try {
        t.report = c.run(seed);
    } catch (const Unsupported& e) {
        t.report.verdict = Verdict::Unsupported;
        t.report.notes.push_back(e.what());
    } catch (const std::exception& e) {
        t.report.fail(std::string("exception: ") + e.what());
    }
    t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (t.seconds > c.budget_seconds) t.report.fail("over the time budget");
    return t;
}

}  // namespace

std::vector<Criterion> acceptance_criteria() {
    return {
        {"REPLETION", 1, "repletion formula for maps with a section", 5, repletion_criterion},
        {"REPLETE_BAR", 2, "replete bar splitting and low-degree homotopy", 10, replete_bar_criterion},
        {"HKR", 3, "free-case HKR", 20, hkr_criterion},
        {"PI1", 4, "pi_1 of logHH is the log Kahler module", 30, pi1_criterion},
        {"ETALE", 5, "derived log etale collapse", 30, etale_criterion},
        {"INTEGRALITY", 6, "non-integrality witness", 10, integrality_criterion},
        {"TORIC", 7, "toric subdivision invariance", 20, toric_criterion},
        {"PROJECTIVE", 8, "projective line and projective bundle", 30, projective_criterion},
        {"BOX", 9, "box invariance", 10, box_criterion},
        {"RESIDUE", 10, "residue sequences", 60, residue_criterion},
    };
}

RunResult acceptance(const RunFlags& flags) {
    const auto all = acceptance_criteria();
    auto selected = [&](const std::string& key, int number) {
        if (flags.only.empty()) return true;
        std::string p = flags.only;
        std::transform(p.begin(), p.end(), p.begin(), [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
        return key.find(p) != std::string::npos || std::to_string(number) == p;
    };
    std::vector<Criterion> chosen;
    for (const auto& c : all)
        if (selected(c.key, c.number)) chosen.push_back(c);
    const bool determinism = selected("DETERMINISM", 11);
    const auto t0 = std::chrono::steady_clock::now();

    auto run_all = [&](const std::vector<Criterion>& cs, std::vector<double>* secs) {
        json rows = json::array();
        std::vector<Verdict> v;
        for (const auto& c : cs) {
            Timed t = run_one(c, flags.seed);
            rows.push_back(criterion_json(c, t.report));
            v.push_back(t.report.verdict);
            if (secs) secs->push_back(t.seconds);
        }
        return std::pair{rows, v};
    };

    RunResult res;
    const int threads = std::max(2, omp_get_num_procs());
    omp_set_num_threads(threads);
    auto [rows, verdicts] = run_all(chosen, &res.seconds);
    if (determinism) {
        Report d;
        d.name = "DETERMINISM";
        const std::vector<Criterion>& base = chosen.empty() ? all : chosen;
        json multi = chosen.empty() ? run_all(base, nullptr).first : rows;
        omp_set_num_threads(1);
        json single = run_all(base, nullptr).first;
        omp_set_num_threads(threads);
        d.check(single.dump() == multi.dump(), "JSON reports differ between 1 and " + std::to_string(threads) + " threads");
        const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (total > 180) d.fail("whole suite exceeded the 180 s budget");
        d.data = {{"threads", {1, threads}}, {"criteria", base.size()}, {"bytes", single.dump().size()}};
        Criterion c{"DETERMINISM", 11, "1-thread and N-thread reports are byte-identical", 180, nullptr};
        rows.push_back(criterion_json(c, d));
        verdicts.push_back(d.verdict);
        res.seconds.push_back(total);
    }
    json summary = {{"pass", 0}, {"fail", 0}, {"unsupported", 0}, {"unknown", 0}};
    for (auto v : verdicts) summary[verdict_name(v)] = summary[verdict_name(v)].get<int>() + 1;
    res.exit_code = exit_code(verdicts, false, flags.allow_inconclusive);
    if (flags.timing)
        for (std::size_t i = 0; i < rows.size(); ++i) rows[i]["seconds"] = res.seconds[i];
    res.report = {{"kind", "acceptance"}, {"seed", flags.seed}, {"only", flags.only}, {"criteria", rows},
                  {"summary", summary}, {"exit_code", res.exit_code}};
    return res;
}

}  // namespace loghh
