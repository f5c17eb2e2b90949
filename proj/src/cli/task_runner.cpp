#include "loghh/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <sstream>

namespace loghh {

namespace {

constexpr std::int64_t kCliRadius = 3;

struct Ctx {
    const Declarations& d;
    const Task& task;
    std::size_t qmax;
    std::int64_t radius, bounds;
    std::uint64_t seed;
    std::size_t samples;
    std::optional<Coefficients> k;
    bool acknowledged;
    BarOptions opt;
    json provenance = json::object();

    const json& arg(const char* key) const {
        if (!task.args.contains(key)) throw InputError(std::string("missing argument '") + key + "'");
        return task.args.at(key);
    }
    bool has(const char* key) const { return task.args.contains(key); }
    template <class T>
    T get(const char* key, T fallback) const {
        return has(key) ? task.args.at(key).get<T>() : fallback;
    }
    Coefficients coeff(const Coefficients& fallback) const { return k.value_or(fallback); }

    std::vector<IntVec> degrees_in(const AffineMonoid& M) {
        std::vector<IntVec> out = task.options.degrees ? *task.options.degrees : degree_box(M, radius);
        note_degrees(out, M.ambient_rank());
        return out;
    }
    std::vector<IntVec> lattice_degrees(std::size_t dim) {
        std::vector<IntVec> out = task.options.degrees ? *task.options.degrees : lattice_box(dim, radius);
        note_degrees(out, dim);
        return out;
    }
    void note_degrees(const std::vector<IntVec>& out, std::size_t dim) {
        for (const auto& m : out)
            if (m.size() != dim) throw InputError("degree " + vec_str(m) + " does not have length " + std::to_string(dim));
        provenance["degrees"] = out.size();
        if (!task.options.degrees) provenance["degree_box"] = radius;
    }

    MonoidHom monoid_map(const char* key) const { return parse_monoid_map(arg(key), d); }
    PreLogRing ring(const char* key) const {
        PreLogRing A = parse_ring(arg(key), d);
        return k ? with_k(A) : A;
    }
    PreLogMap prelog_map(const char* key) const {
        PreLogMap f = parse_prelog_map(arg(key), d);
        if (k) f = PreLogMap(with_k(f.source), with_k(f.target), f.monoid_map.matrix(), f.prelog_map.matrix());
        return f;
    }
    PreLogRing with_k(PreLogRing A) const {
        A.coeff = *k;
        return A;
    }
};

using Op = std::function<Report(Ctx&)>;

Report computed(const std::string& name, json data) {
    Report r;
    r.name = name;
    r.data = std::move(data);
    return r;
}

Report tristate(const std::string& name, const TriState& t) {
    Report r = computed(name, {{"value", t.str()}, {"evidence", t.evidence}});
    if (t.value == TriState::Value::Unknown) {
        r.verdict = Verdict::Unknown;
        r.notes.push_back("search bound " + std::to_string(t.bound) + " exhausted");
    }
    return r;
}

json group_json(const FgAbGroup& G) { return {{"group", G.to_string()}, {"module", module_json(G)}}; }

FgAbGroup parse_group(const json& j) {
    std::vector<Int> t;
    for (const auto& v : j.value("torsion", std::vector<std::int64_t>{})) t.push_back(Int(static_cast<long>(v)));
    return FgAbGroup::from_orders(j.value("rank", std::size_t{0}), t);
}

json matrix_json(const IntMatrix& A) {
    json r = json::array();
    for (std::size_t i = 0; i < A.rows(); ++i) r.push_back(A.row(i));
    return r;
}

std::map<std::string, Op> registry() {
    std::map<std::string, Op> ops;

    ops["smith_normal_form"] = [](Ctx& c) {
        IntMatrix A = parse_matrix(c.arg("matrix"));
        SmithForm s = smith_normal_form(A);
        std::vector<std::int64_t> diag;
        for (const auto& x : s.diagonal()) diag.push_back(to_i64(x));
        Report r = computed("smith_normal_form", {{"U", matrix_json(s.U)}, {"D", matrix_json(s.D)}, {"V", matrix_json(s.V)},
                                                  {"diagonal", diag}, {"rank", s.rank()}});
        r.check(s.U * A * s.V == s.D, "U A V differs from D");
        return r;
    };
    ops["cokernel_structure"] = [](Ctx& c) {
        return computed("cokernel_structure", group_json(cokernel_structure(parse_matrix(c.arg("matrix")))));
    };
    ops["complex_homology"] = [](Ctx& c) {
        std::vector<IntMatrix> b;
        for (const auto& m : c.arg("boundaries")) b.push_back(parse_matrix(m));
        const Coefficients k = c.coeff(Coefficients::integers());
        return computed("complex_homology",
                        {{"n", c.arg("n")}, {"coefficients", k.name()},
                         {"homology", module_json(complex_homology(b, c.arg("n").get<std::size_t>(), k))}});
    };
    ops["group_homology"] = [](Ctx& c) {
        const Coefficients k = c.coeff(Coefficients::integers());
        const FgAbGroup G = parse_group(c.arg("group"));
        return computed("group_homology", {{"group", G.to_string()}, {"n", c.arg("n")}, {"coefficients", k.name()},
                                           {"homology", module_json(group_homology(G, c.arg("n").get<std::size_t>(), k))}});
    };
    ops["scalar_tensor_tor"] = [](Ctx& c) {
        const Coefficients k = c.coeff(Coefficients::integers());
        auto [t, tor] = scalar_tensor_tor(parse_group(c.arg("group")), k);
        return computed("scalar_tensor_tor", {{"coefficients", k.name()}, {"tensor", module_json(t)}, {"tor1", module_json(tor)}});
    };

    ops["contains"] = [](Ctx& c) {
        AffineMonoid M = parse_monoid(c.arg("monoid"), c.d);
        IntVec v = c.arg("element").get<IntVec>();
        if (v.size() != M.ambient_rank()) throw InputError("element has the wrong length");
        return computed("contains", {{"element", v}, {"contains", M.contains(v, c.bounds * 8)}});
    };
    ops["group_completion"] = [](Ctx& c) {
        GroupCompletion g = group_completion(parse_monoid(c.arg("monoid"), c.d));
        return computed("group_completion", {{"group", g.group.to_string()}, {"basis", g.basis},
                                             {"index_in_saturation", to_i64(g.index_in_saturation)}, {"units", g.units},
                                             {"sharp", serialize(g.sharp)}, {"splits", g.splits}});
    };
    ops["hilbert_basis"] = [](Ctx& c) {
        auto rays = c.arg("rays").get<std::vector<IntVec>>();
        if (rays.empty()) throw InputError("hilbert_basis needs at least one ray");
        return computed("hilbert_basis", {{"basis", hilbert_basis(rays, rays[0].size())}});
    };
    ops["is_saturated"] = [](Ctx& c) {
        return computed("is_saturated", {{"saturated", is_saturated(parse_monoid(c.arg("monoid"), c.d))}});
    };
    ops["is_exact"] = [](Ctx& c) { return tristate("is_exact", is_exact(c.monoid_map("map"), c.bounds)); };
    ops["is_integral"] = [](Ctx& c) { return tristate("is_integral", is_integral(c.monoid_map("map"), c.bounds)); };
    ops["amalgamated_sum"] = [](Ctx& c) {
        AmalgamatedSum s = amalgamated_sum(c.monoid_map("theta"), c.monoid_map("phi"));
        return computed("amalgamated_sum", {{"monoid", serialize(s.monoid)}, {"pushout_group", s.pushout_group.to_string()},
                                            {"caveat", s.caveat}});
    };

    ops["exactify"] = [](Ctx& c) { return computed("exactify", exactify(c.monoid_map("map")).to_json()); };
    ops["replete_split"] = [](Ctx& c) {
        return computed("replete_split", replete_split(c.monoid_map("map"), c.monoid_map("section")).to_json());
    };
    ops["replete_diagonal"] = [](Ctx& c) { return computed("replete_diagonal", replete_diagonal(c.monoid_map("map")).to_json()); };
    ops["replete_bar_level"] = [](Ctx& c) {
        return computed("replete_bar_level", replete_bar_level(c.monoid_map("map"), c.get<std::size_t>("q", 1)).to_json());
    };
    ops["verify_bar_iso"] = [](Ctx& c) { return verify_bar_iso(c.monoid_map("map"), c.qmax, c.samples, c.seed); };
    ops["split_check"] = [](Ctx& c) { return split_check(c.monoid_map("map"), c.monoid_map("section"), c.samples, c.seed); };

    ops["free_prelog"] = [](Ctx& c) {
        PreLogRing base = c.has("base") ? c.ring("base") : PreLogRing::point(c.coeff(Coefficients::integers()));
        FreePrelog f = free_prelog(base, c.get("X", std::vector<std::string>{}), c.get("Y", std::vector<std::string>{}));
        return computed("free_prelog", {{"ring", serialize(f.ring)}, {"unit", serialize(f.unit)}});
    };
    ops["kahler_differentials"] = [](Ctx& c) {
        PreLogMap f = c.prelog_map("map");
        PresentedModule P = kahler_differentials(f, c.degrees_in(f.target.ring_monoid));
        json g = json::object();
        for (const auto& [m, M] : P.graded) g[vec_str(m)] = module_json(M);
        return computed("kahler_differentials", {{"generators", P.generators}, {"relations", P.relations}, {"graded", g}});
    };
    ops["cotangent_pi"] = [](Ctx& c) {
        PreLogMap f = c.prelog_map("map");
        const std::size_t n = c.get<std::size_t>("n", 0);
        CotangentPi p = cotangent_pi(f, n, c.degrees_in(f.target.ring_monoid));
        json g = json::object();
        for (const auto& [m, M] : p.graded) g[vec_str(m)] = module_json(M);
        return computed("cotangent_pi", {{"n", n}, {"shape", p.shape}, {"fiber", module_json(p.fiber)}, {"graded", g}});
    };
    ops["classify_map"] = [](Ctx& c) {
        MapClassification m = classify_map(c.prelog_map("map"));
        Report r = computed("classify_map", m.to_json());
        if (m.integral.value == TriState::Value::Unknown) r.notes.push_back("integrality undecided: " + m.integral.str());
        return r;
    };
    ops["transitivity_check"] = [](Ctx& c) {
        return transitivity_check(c.prelog_map("f"), c.prelog_map("g"), c.get<std::size_t>("nmax", c.qmax));
    };

    auto theta_table = [](const char* name, auto fn) {
        return [name, fn](Ctx& c) {
            MonoidHom theta = c.monoid_map("map");
            HomotopyTable t = fn(theta, c.coeff(Coefficients::rationals()), c.qmax, c.degrees_in(theta.target()), c.opt);
            return computed(name, t.to_json());
        };
    };
    ops["cyclic_bar_homology"] = theta_table("cyclic_bar_homology", [](auto&&... a) { return cyclic_bar_homology(a...); });
    ops["replete_bar_homology"] = theta_table("replete_bar_homology", [](auto&&... a) { return replete_bar_homology(a...); });
    ops["hochschild_homology"] = [](Ctx& c) {
        PreLogMap f = c.prelog_map("map");
        return computed("hochschild_homology", hochschild_homology(f, c.qmax, c.degrees_in(f.target.ring_monoid), c.opt).to_json());
    };
    ops["loghh_homology"] = [](Ctx& c) {
        PreLogMap f = c.prelog_map("map");
        return computed("loghh_homology", loghh_homology(f, c.qmax, c.degrees_in(f.target.ring_monoid), c.opt).to_json());
    };
    ops["hkr_check"] = [](Ctx& c) {
        PreLogMap f = c.prelog_map("map");
        return hkr_check(f, c.qmax, c.degrees_in(f.target.ring_monoid), c.opt);
    };
    ops["graded_tor"] = [](Ctx& c) {
        MonoidHom theta = c.monoid_map("map");
        auto ideal = c.get("ideal", std::vector<IntVec>{});
        return computed("graded_tor", graded_tor(theta, ideal, c.coeff(Coefficients::rationals()), c.qmax,
                                                 c.degrees_in(theta.target()), c.opt)
                                          .to_json());
    };
    ops["base_change_check"] = [](Ctx& c) {
        PreLogMap g = c.prelog_map("g"), f = c.prelog_map("f");
        return base_change_check(g, f, c.qmax, c.degrees_in(f.target.ring_monoid), c.opt);
    };
    ops["kunneth_check"] = [](Ctx& c) {
        PreLogRing X = c.ring("X"), Y = c.ring("Y");
        auto xd = degree_box(X.ring_monoid, c.radius), yd = degree_box(Y.ring_monoid, c.radius);
        c.provenance["degree_box"] = c.radius;
        return kunneth_check(X, Y, c.qmax, xd, yd, c.opt);
    };

    ops["dual_monoid"] = [](Ctx& c) {
        auto rays = c.arg("rays").get<std::vector<IntVec>>();
        const std::size_t dim = c.get<std::size_t>("dim", rays.empty() ? 0 : rays[0].size());
        Cone cone(dim, rays);
        return computed("dual_monoid", {{"cone", cone.to_string()}, {"dual", serialize(dual_monoid(cone))}});
    };
    ops["star_subdivision"] = [](Ctx& c) {
        return computed("star_subdivision", star_subdivision(parse_fan(c.arg("fan"), c.d), c.arg("ray").get<IntVec>()).to_json());
    };
    ops["is_subdivision"] = [](Ctx& c) {
        SubdivisionCertificate s = is_subdivision(parse_fan(c.arg("refined"), c.d), parse_fan(c.arg("coarse"), c.d));
        return computed("is_subdivision", {{"holds", s.holds}, {"assignment", s.assignment}, {"witness", s.witness}});
    };
    ops["cohomology"] = [](Ctx& c) {
        Fan f = parse_fan(c.arg("fan"), c.d);
        ToricDivisor D = c.has("divisor") ? ToricDivisor{c.arg("divisor").get<std::vector<std::int64_t>>()} : ToricDivisor::zero(f);
        if (D.coeff.size() != f.rays().size()) throw InputError("divisor needs one coefficient per ray");
        ToricCohomology h = cohomology(f, c.coeff(Coefficients::rationals()), D, c.get<std::size_t>("q_log", 0),
                                       c.lattice_degrees(f.d), c.opt.parallel);
        return computed("cohomology", h.to_json());
    };
    ops["invariance_check"] = [](Ctx& c) {
        Subdivision s;
        if (c.has("ray")) {
            s = star_subdivision(parse_fan(c.arg("fan"), c.d), c.arg("ray").get<IntVec>());
        } else {
            s.refined = parse_fan(c.arg("refined"), c.d);
            s.coarse = parse_fan(c.arg("coarse"), c.d);
            SubdivisionCertificate cert = is_subdivision(s.refined, s.coarse);
            if (!cert.holds) throw PreconditionError("not a subdivision: " + cert.witness);
            s.assignment = cert.assignment;
        }
        return invariance_check(s, c.coeff(Coefficients::rationals()), c.lattice_degrees(s.coarse.d));
    };
    ops["pone_bar_check"] = [](Ctx& c) {
        c.provenance["degree_box"] = c.radius;
        return pone_bar_check(c.coeff(Coefficients::rationals()), c.radius);
    };

    ops["standard_scheme"] = [](Ctx& c) {
        GluedLogScheme X = standard_scheme(c.arg("name").get<std::string>(), c.coeff(Coefficients::rationals()));
        return computed("standard_scheme", X.to_json());
    };
    ops["cech_totalize"] = [](Ctx& c) {
        GluedLogScheme X = parse_scheme(c.arg("scheme"), c.d);
        if (c.k) {
            X.base = c.with_k(X.base);
            for (auto& ch : X.charts) ch = c.with_k(ch);
            for (auto& [i, A] : X.overlaps) A = c.with_k(A);
        }
        const std::string th = c.get<std::string>("theory", "logHH");
        Theory t = th == "HH" ? Theory::HH : th == "logHH" ? Theory::LogHH : th == "Omega" ? Theory::Omega
                                                                                         : throw InputError("unknown theory '" + th + "'");
        TotalizedTable T = cech_totalize(X, t, c.qmax, c.lattice_degrees(X.grading_rank()), c.get<std::size_t>("omega_q", 0), c.opt);
        Report r = computed("cech_totalize", T.to_json());
        if (!T.flagged.empty() && !c.acknowledged) {
            r.verdict = Verdict::Unknown;
            r.notes.push_back("window guard: degrees outside the trusted window are present (acknowledge_window or "
                              "--allow-inconclusive to accept)");
        }
        return r;
    };
    ops["residue_check"] = [](Ctx& c) {
        c.provenance["degree_box"] = c.radius;
        return residue_check(c.arg("config").get<std::string>(), c.get<std::size_t>("nmax", 1),
                             c.coeff(Coefficients::rationals()), c.radius, c.get<std::int64_t>("exponent", 1));
    };
    ops["projective_bundle_check"] = [](Ctx& c) {
        PreLogRing S = c.has("base") ? c.ring("base") : PreLogRing::point(c.coeff(Coefficients::rationals()));
        c.provenance["degree_box"] = c.radius;
        return projective_bundle_check(c.get<std::size_t>("n", 1), S, c.qmax, c.radius, c.opt);
    };
    ops["descent_check"] = [](Ctx& c) {
        if (c.has("kummer")) {
            MonoidHom theta = c.monoid_map("kummer");
            return descent_check(kummer_cover(theta, c.coeff(Coefficients::rationals())), c.qmax, c.degrees_in(theta.target()), c.opt);
        }
        GluedLogScheme X = parse_scheme(c.arg("cover"), c.d);
        PreLogRing A = c.ring("target");
        return descent_check(zariski_cover(X, A), c.qmax, c.lattice_degrees(X.grading_rank()), c.opt);
    };
    return ops;
}

const std::map<std::string, Op>& ops() {
    static const std::map<std::string, Op> table = registry();
    return table;
}

bool matches(const std::string& pattern, const std::string& s) {
    if (pattern.empty()) return true;
    auto lower = [](std::string x) {
        std::transform(x.begin(), x.end(), x.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
        return x;
    };
    return lower(s).find(lower(pattern)) != std::string::npos;
}

}  // namespace

std::vector<std::string> operation_names() {
    std::vector<std::string> out;
    for (const auto& [name, op] : ops()) out.push_back(name);
    return out;
}

int exit_code(const std::vector<Verdict>& verdicts, bool invalid_input, bool allow_inconclusive) {
    if (invalid_input) return 2;
    if (std::any_of(verdicts.begin(), verdicts.end(), [](Verdict v) { return v == Verdict::Fail; })) return 1;
    if (!allow_inconclusive &&
        std::any_of(verdicts.begin(), verdicts.end(), [](Verdict v) { return v == Verdict::Unknown || v == Verdict::Unsupported; }))
        return 3;
    return 0;
}

void apply_thread_env() {
    if (const char* s = std::getenv("LOGHH_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(s, &end, 10);
        if (end != s && *end == '\0' && n > 0) omp_set_num_threads(static_cast<int>(n));
    }
}

RunResult run_tasks(const TaskFile& file, const RunFlags& flags) {
    std::vector<std::size_t> selected;
    for (std::size_t i = 0; i < file.tasks.size(); ++i)
        if (matches(flags.only, file.tasks[i].op) || matches(flags.only, file.tasks[i].id)) selected.push_back(i);
    const std::size_t n = selected.size();
    std::vector<json> out(n);
    std::vector<Verdict> verdicts(n, Verdict::Pass);
    std::vector<char> invalid(n, 0);
    omp_set_max_active_levels(1);
#pragma omp parallel for schedule(dynamic) if (n > 1)
    for (long s = 0; s < static_cast<long>(n); ++s) {
        const Task& t = file.tasks[selected[static_cast<std::size_t>(s)]];
        Ctx c{file.decl, t, t.options.qmax.value_or(flags.qmax.value_or(kDefaultQmax)),
              t.options.degree_box.value_or(flags.degree_box.value_or(kCliRadius)),
              t.options.bounds.value_or(flags.bounds.value_or(3)), t.options.seed.value_or(flags.seed),
              t.options.samples.value_or(200), t.options.coefficients,
              t.options.acknowledge_window || flags.allow_inconclusive, BarOptions{}};
        c.provenance = {{"qmax", c.qmax}, {"bounds", c.bounds}, {"seed", c.seed}};
        if (c.k) c.provenance["coefficients"] = c.k->name();
        Report r;
        r.name = t.op;
        const auto t0 = std::chrono::steady_clock::now();
        std::string error;
        try {
            r = ops().at(t.op)(c);
        } catch (const InputError& e) {
            error = std::string("invalid input: ") + e.what();
        } catch (const PreconditionError& e) {
            error = std::string("invalid input: ") + e.what();
        } catch (const MalformedComplex& e) {
            error = std::string("invalid input: ") + e.what();
        } catch (const nlohmann::json::exception& e) {
            error = std::string("invalid input: ") + e.what();
        } catch (const Unsupported& e) {
            r.verdict = Verdict::Unsupported;
            r.notes.push_back(e.what());
        } catch (const ScaleError& e) {
            r.verdict = Verdict::Unsupported;
            r.notes.push_back(std::string("scale guard: ") + e.what());
        } catch (const Inconclusive& e) {
            r.verdict = Verdict::Unknown;
            r.notes.push_back(std::string(e.what()) + " (bound " + std::to_string(e.bound) + ")");
            c.provenance["exhausted_bound"] = e.bound;
        } catch (const std::exception& e) {
            r.verdict = Verdict::Fail;
            r.notes.push_back(std::string("internal error: ") + e.what());
        }
        if (!error.empty()) {
            r.verdict = Verdict::Fail;
            r.notes.push_back(error);
            invalid[static_cast<std::size_t>(s)] = 1;
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        json j = {{"index", selected[static_cast<std::size_t>(s)] + 1}, {"op", t.op}, {"id", t.id}, {"verdict", verdict_name(r.verdict)},
                  {"notes", r.notes}, {"provenance", c.provenance}, {"result", r.data}};
        j["seconds"] = secs;
        out[static_cast<std::size_t>(s)] = j;
        verdicts[static_cast<std::size_t>(s)] = r.verdict;
    }
    RunResult res;
    const bool bad = std::any_of(invalid.begin(), invalid.end(), [](char b) { return b != 0; });
    res.exit_code = exit_code(verdicts, bad, flags.allow_inconclusive);
    json summary = {{"pass", 0}, {"fail", 0}, {"unsupported", 0}, {"unknown", 0}};
    for (auto v : verdicts) summary[verdict_name(v)] = summary[verdict_name(v)].get<int>() + 1;
    json tasks = json::array();
    for (auto& j : out) {
        res.seconds.push_back(j.at("seconds").get<double>());
        if (!flags.timing) j.erase("seconds");
        tasks.push_back(j);
    }
    res.report = {{"kind", "run"}, {"seed", flags.seed}, {"only", flags.only}, {"allow_inconclusive", flags.allow_inconclusive},
                  {"tasks", tasks}, {"summary", summary}, {"exit_code", res.exit_code}};
    return res;
}

namespace {

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out, std::size_t limit) {
    if (out.size() >= limit) return;
    if (j.is_object() && !j.empty()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out, limit);
    } else if (j.is_array() && !j.empty() && (j[0].is_object() || j.dump().size() > 100)) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out, limit);
    } else {
        out.push_back({prefix, j.is_string() ? j.get<std::string>() : j.dump()});
    }
}

}  // namespace

std::string render_text(const RunResult& res) {
    const json& report = res.report;
    std::ostringstream os;
    const std::string kind = report.value("kind", "run");
    os << (kind == "acceptance" ? "acceptance suite" : "task run") << "  seed " << report.value("seed", 0) << "\n";
    const json& rows = kind == "acceptance" ? report.at("criteria") : report.at("tasks");
    const std::vector<double>& secs = res.seconds;
    std::size_t w = 4;
    for (const auto& r : rows) w = std::max(w, r.value("id", r.value("key", std::string())).size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const json& r = rows[i];
        const std::string id = r.value("id", r.value("key", std::string()));
        const double s = i < secs.size() ? secs[i] : 0.0;
        os << "  " << std::left << std::setw(14) << ("[" + r.value("verdict", std::string()) + "]") << std::setw(static_cast<int>(w) + 2)
           << id << std::right << std::fixed << std::setprecision(2) << std::setw(8) << s << " s";
        if (r.contains("budget_seconds")) os << "  (budget " << r.at("budget_seconds").get<double>() << " s)";
        os << "\n";
        for (const auto& n : r.value("notes", std::vector<std::string>{})) os << "      ! " << n << "\n";
        if (kind != "acceptance") {
            std::vector<std::pair<std::string, std::string>> kv;
            flatten(r.value("result", json::object()), "", kv, 24);
            std::size_t kw = 0;
            for (const auto& [k, v] : kv) kw = std::max(kw, k.size());
            for (const auto& [k, v] : kv) os << "      " << std::left << std::setw(static_cast<int>(kw)) << k << "  " << v << "\n";
        }
    }
    os << "summary: " << report.at("summary").dump() << "  exit " << report.value("exit_code", 0) << "\n";
    return os.str();
}

}  // namespace loghh
