#include "loghh/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace loghh {

namespace {

json rows_json(const IntMatrix& A) {
    json r = json::array();
    for (std::size_t i = 0; i < A.rows(); ++i) r.push_back(A.row(i));
    return r;
}

std::vector<IntVec> vectors(const json& j, const std::string& what) {
    if (!j.is_array()) throw InputError(what + " must be a list of integer vectors");
    std::vector<IntVec> out;
    for (const auto& v : j) out.push_back(v.get<IntVec>());
    return out;
}

const json& field(const json& j, const char* key, const std::string& what) {
    if (!j.is_object() || !j.contains(key)) throw InputError(what + ": missing field '" + key + "'");
    return j.at(key);
}

template <class T>
const T& lookup(const std::map<std::string, T>& table, const std::string& name, const char* section) {
    auto it = table.find(name);
    if (it == table.end()) throw InputError(std::string("unresolved reference '") + name + "' (" + section + ")");
    return it->second;
}

Coefficients coefficients_of(const json& j) {
    return j.contains("coefficients") ? parse_coefficients(j.at("coefficients").get<std::string>()) : Coefficients::rationals();
}

}  // namespace

Coefficients parse_coefficients(const std::string& s) {
    if (s == "ZZ" || s == "Z") return Coefficients::integers();
    if (s == "QQ" || s == "Q") return Coefficients::rationals();
    std::string digits;
    if (s.rfind("GF(", 0) == 0 && s.back() == ')') digits = s.substr(3, s.size() - 4);
    else if (s.rfind("F", 0) == 0) digits = s.substr(1);
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos) {
        const std::uint64_t p = std::stoull(digits);
        if (!is_prime(p)) throw InputError("coefficients '" + s + "': " + digits + " is not prime");
        return Coefficients::prime_field(p);
    }
    throw InputError("unknown coefficients '" + s + "' (expected ZZ, QQ or GF(p))");
}

std::string coefficients_name(const Coefficients& k) { return k.name(); }

IntMatrix parse_matrix(const json& rows, std::size_t cols_if_empty) {
    if (!rows.is_array()) throw InputError("matrix must be a list of rows");
    auto r = vectors(rows, "matrix");
    const std::size_t cols = r.empty() ? cols_if_empty : r[0].size();
    for (const auto& row : r)
        if (row.size() != cols) throw InputError("matrix rows have different lengths");
    return IntMatrix::from_rows(r, cols);
}

json serialize(const AffineMonoid& M) { return {{"ambient", M.ambient_rank()}, {"generators", M.generators()}}; }

json serialize(const MonoidHom& theta) {
    return {{"source", serialize(theta.source())}, {"target", serialize(theta.target())}, {"matrix", rows_json(theta.matrix())}};
}

json serialize(const PreLogRing& A) {
    json j = {{"coefficients", A.coeff.name()},
              {"monoid", serialize(A.ring_monoid)},
              {"prelog", serialize(A.prelog_monoid)},
              {"structure", rows_json(A.structure.matrix())}};
    if (!A.ideal.empty()) j["ideal"] = A.ideal;
    return j;
}

json serialize(const PreLogMap& f) {
    return {{"source", serialize(f.source)},
            {"target", serialize(f.target)},
            {"ring_matrix", rows_json(f.monoid_map.matrix())},
            {"prelog_matrix", rows_json(f.prelog_map.matrix())}};
}

json serialize(const Fan& f) {
    json cones = json::array();
    for (const auto& c : f.cones) cones.push_back(c.rays);
    return {{"dim", f.d}, {"cones", cones}};
}

json serialize(const GluedLogScheme& X) {
    json charts = json::array(), overlaps = json::array();
    for (const auto& c : X.charts) charts.push_back(serialize(c));
    for (const auto& [idx, A] : X.overlaps) overlaps.push_back({{"charts", idx}, {"piece", serialize(A)}});
    return {{"name", X.name},
            {"base", serialize(X.base)},
            {"charts", charts},
            {"overlaps", overlaps},
            {"base_ring_map", rows_json(X.base_ring_map)},
            {"base_prelog_map", rows_json(X.base_prelog_map)}};
}

AffineMonoid parse_monoid(const json& j, const Declarations& d) {
    if (j.is_string()) return lookup(d.monoids, j.get<std::string>(), "monoids");
    if (j.contains("free")) return AffineMonoid::free_monoid(j.at("free").get<std::size_t>());
    if (j.contains("lattice")) return AffineMonoid::lattice(j.at("lattice").get<std::size_t>());
    if (j.contains("trivial")) return AffineMonoid::trivial(j.at("trivial").get<std::size_t>());
    const std::size_t amb = field(j, "ambient", "monoid").get<std::size_t>();
    auto gens = vectors(field(j, "generators", "monoid"), "monoid generators");
    for (const auto& g : gens)
        if (g.size() != amb) throw InputError("monoid generator " + vec_str(g) + " does not have length " + std::to_string(amb));
    return AffineMonoid(amb, gens);
}

MonoidHom parse_monoid_map(const json& j, const Declarations& d) {
    if (j.is_string()) return lookup(d.monoid_maps, j.get<std::string>(), "monoid_maps");
    AffineMonoid P = parse_monoid(field(j, "source", "monoid map"), d);
    AffineMonoid M = parse_monoid(field(j, "target", "monoid map"), d);
    IntMatrix A = parse_matrix(field(j, "matrix", "monoid map"), P.ambient_rank());
    if (A.rows() == 0 && M.ambient_rank() > 0) A = IntMatrix(M.ambient_rank(), P.ambient_rank());
    return MonoidHom(P, M, A);
}

PreLogRing parse_ring(const json& j, const Declarations& d) {
    if (j.is_string()) return lookup(d.rings, j.get<std::string>(), "rings");
    const Coefficients k = coefficients_of(j);
    if (j.contains("point")) return PreLogRing::point(k);
    if (j.contains("canonical")) return PreLogRing::canonical(parse_monoid(j.at("canonical"), d), k);
    if (j.contains("trivial_log")) return PreLogRing::trivial_log(parse_monoid(j.at("trivial_log"), d), k);
    if (j.contains("free_prelog")) {
        const json& f = j.at("free_prelog");
        PreLogRing base = f.contains("base") ? parse_ring(f.at("base"), d) : PreLogRing::point(k);
        return free_prelog(base, f.value("X", std::vector<std::string>{}), f.value("Y", std::vector<std::string>{})).ring;
    }
    if (j.contains("product")) {
        const json& p = j.at("product");
        if (!p.is_array() || p.size() != 2) throw InputError("product needs exactly two rings");
        return product_over_point(parse_ring(p[0], d), parse_ring(p[1], d));
    }
    AffineMonoid M = parse_monoid(field(j, "monoid", "ring"), d);
    AffineMonoid N = j.contains("prelog") ? parse_monoid(j.at("prelog"), d) : AffineMonoid::trivial(0);
    std::vector<IntVec> ideal = j.contains("ideal") ? vectors(j.at("ideal"), "ideal") : std::vector<IntVec>{};
    IntMatrix alpha = j.contains("structure") ? parse_matrix(j.at("structure"), N.ambient_rank())
                                              : IntMatrix(M.ambient_rank(), N.ambient_rank());
    if (alpha.rows() == 0 && M.ambient_rank() > 0) alpha = IntMatrix(M.ambient_rank(), N.ambient_rank());
    return PreLogRing(k, M, ideal, N, alpha);
}

PreLogMap parse_prelog_map(const json& j, const Declarations& d) {
    if (j.is_string()) return lookup(d.prelog_maps, j.get<std::string>(), "prelog_maps");
    if (j.contains("canonical")) return PreLogMap::canonical(parse_monoid_map(j.at("canonical"), d), coefficients_of(j));
    if (j.contains("over_point")) return PreLogMap::over_point(parse_ring(j.at("over_point"), d));
    if (j.contains("identity")) return PreLogMap::identity(parse_ring(j.at("identity"), d));
    if (j.contains("free_prelog")) {
        const json& f = j.at("free_prelog");
        PreLogRing base = f.contains("base") ? parse_ring(f.at("base"), d) : PreLogRing::point(coefficients_of(j));
        return free_prelog(base, f.value("X", std::vector<std::string>{}), f.value("Y", std::vector<std::string>{})).unit;
    }
    if (j.contains("compose")) {
        const json& c = j.at("compose");
        if (!c.is_array() || c.size() != 2) throw InputError("compose needs [second, first]");
        return parse_prelog_map(c[0], d).compose_after(parse_prelog_map(c[1], d));
    }
    PreLogRing A = parse_ring(field(j, "source", "pre-log map"), d);
    PreLogRing B = parse_ring(field(j, "target", "pre-log map"), d);
    IntMatrix R = parse_matrix(field(j, "ring_matrix", "pre-log map"), A.rank());
    if (R.rows() == 0 && B.rank() > 0) R = IntMatrix(B.rank(), A.rank());
    const std::size_t ea = A.prelog_monoid.ambient_rank(), eb = B.prelog_monoid.ambient_rank();
    IntMatrix L = j.contains("prelog_matrix") ? parse_matrix(j.at("prelog_matrix"), ea) : IntMatrix(eb, ea);
    if (L.rows() == 0 && eb > 0) L = IntMatrix(eb, ea);
    return PreLogMap(A, B, R, L);
}

Fan parse_fan(const json& j, const Declarations& d) {
    if (j.is_string()) return lookup(d.fans, j.get<std::string>(), "fans");
    if (j.contains("catalog")) return Fan::named(j.at("catalog").get<std::string>());
    if (j.contains("star")) {
        const json& s = j.at("star");
        return star_subdivision(parse_fan(field(s, "fan", "star"), d), field(s, "ray", "star").get<IntVec>()).refined;
    }
    const std::size_t dim = field(j, "dim", "fan").get<std::size_t>();
    std::vector<Cone> cones;
    for (const auto& c : field(j, "cones", "fan")) cones.emplace_back(dim, vectors(c, "cone rays"));
    return Fan(dim, cones);
}

GluedLogScheme parse_scheme(const json& j, const Declarations& d) {
    if (j.is_string()) return lookup(d.schemes, j.get<std::string>(), "schemes");
    if (j.contains("catalog")) return standard_scheme(j.at("catalog").get<std::string>(), coefficients_of(j));
    if (j.contains("fan")) {
        std::vector<IntVec> log_rays = j.contains("log_rays") ? vectors(j.at("log_rays"), "log_rays") : std::vector<IntVec>{};
        return toric_scheme(parse_fan(j.at("fan"), d), log_rays, coefficients_of(j), j.value("name", std::string("toric")));
    }
    if (j.contains("over_base")) {
        const json& o = j.at("over_base");
        return over_base(parse_scheme(field(o, "scheme", "over_base"), d), parse_ring(field(o, "base", "over_base"), d));
    }
    GluedLogScheme X;
    X.name = j.value("name", std::string("glued"));
    X.base = parse_ring(field(j, "base", "scheme"), d);
    for (const auto& c : field(j, "charts", "scheme")) X.charts.push_back(parse_ring(c, d));
    if (X.charts.empty()) throw InputError("scheme has no charts");
    if (j.contains("overlaps"))
        for (const auto& o : j.at("overlaps"))
            X.overlaps.emplace(field(o, "charts", "overlap").get<std::vector<std::size_t>>(), parse_ring(field(o, "piece", "overlap"), d));
    const std::size_t amb = X.charts[0].rank(), eamb = X.charts[0].prelog_monoid.ambient_rank();
    X.base_ring_map = j.contains("base_ring_map") ? parse_matrix(j.at("base_ring_map"), X.base.rank()) : IntMatrix(amb, X.base.rank());
    if (X.base_ring_map.rows() == 0 && amb > 0) X.base_ring_map = IntMatrix(amb, X.base.rank());
    const std::size_t be = X.base.prelog_monoid.ambient_rank();
    X.base_prelog_map = j.contains("base_prelog_map") ? parse_matrix(j.at("base_prelog_map"), be) : IntMatrix(eamb, be);
    if (X.base_prelog_map.rows() == 0 && eamb > 0) X.base_prelog_map = IntMatrix(eamb, be);
    if (auto w = scheme_defect(X)) throw InputError("scheme '" + X.name + "' is not glued: " + *w);
    return X;
}

namespace {

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

const char* const kSections[] = {"monoids", "monoid_maps", "rings", "prelog_maps", "fans", "schemes"};

void declare(Declarations& d, const std::string& section, const std::string& name, const json& j) {
    if (section == "monoids") d.monoids.emplace(name, parse_monoid(j, d));
    else if (section == "monoid_maps") d.monoid_maps.emplace(name, parse_monoid_map(j, d));
    else if (section == "rings") d.rings.emplace(name, parse_ring(j, d));
    else if (section == "prelog_maps") d.prelog_maps.emplace(name, parse_prelog_map(j, d));
    else if (section == "fans") d.fans.emplace(name, parse_fan(j, d));
    else d.schemes.emplace(name, parse_scheme(j, d));
    d.source[section + "/" + name] = j;
}

std::size_t bounded(const json& j, const char* key, std::int64_t lo, std::int64_t hi) {
    const std::int64_t v = j.at(key).get<std::int64_t>();
    if (v < lo || v > hi)
        throw InputError(std::string("option '") + key + "' = " + std::to_string(v) + " is outside [" + std::to_string(lo) +
                         ", " + std::to_string(hi) + "]");
    return static_cast<std::size_t>(v);
}

TaskOptions parse_options(const json& j) {
    TaskOptions o;
    if (!j.is_object()) throw InputError("options must be an object");
    static const std::vector<std::string> known = {"qmax", "degree_box", "bounds", "degrees", "coefficients",
                                                   "seed", "samples", "acknowledge_window"};
    for (const auto& [k, v] : j.items())
        if (std::find(known.begin(), known.end(), k) == known.end()) throw InputError("unknown option '" + k + "'");
    if (j.contains("qmax")) o.qmax = bounded(j, "qmax", 0, 8);
    if (j.contains("degree_box")) o.degree_box = static_cast<std::int64_t>(bounded(j, "degree_box", 0, 12));
    if (j.contains("bounds")) o.bounds = static_cast<std::int64_t>(bounded(j, "bounds", 1, 64));
    if (j.contains("samples")) o.samples = bounded(j, "samples", 1, 100000);
    if (j.contains("seed")) o.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("degrees")) o.degrees = vectors(j.at("degrees"), "degrees");
    if (j.contains("coefficients")) o.coefficients = parse_coefficients(j.at("coefficients").get<std::string>());
    if (j.contains("acknowledge_window")) o.acknowledge_window = j.at("acknowledge_window").get<bool>();
    return o;
}

}  // namespace

TaskFile parse_task_file(const std::string& text) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte);
        std::string msg = e.what();
        const auto cut = msg.find(": ", msg.find("parse error"));
        throw InputError("parse error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                         (cut == std::string::npos ? "" : ": " + msg.substr(cut + 2)));
    }
    if (!doc.is_object()) throw InputError("task file must be a JSON object with 'declarations' and 'tasks'");
    for (const auto& [k, v] : doc.items())
        if (k != "declarations" && k != "tasks") throw InputError("unknown top-level section '" + k + "'");
    TaskFile f;
    if (doc.contains("declarations")) {
        const auto& decl = doc.at("declarations");
        if (!decl.is_object()) throw InputError("'declarations' must be an object");
        for (const auto& [sec, body] : decl.items())
            if (std::find(std::begin(kSections), std::end(kSections), sec) == std::end(kSections))
                throw InputError("unknown declaration section '" + sec + "'");
        for (const char* sec : kSections) {
            if (!decl.contains(sec)) continue;
            for (const auto& [name, body] : decl.at(sec).items()) {
                try {
                    declare(f.decl, sec, name, json::parse(body.dump()));
                } catch (const InputError& e) {
                    throw InputError(std::string(sec) + "/" + name + ": " + e.what());
                } catch (const nlohmann::json::exception& e) {
                    throw InputError(std::string(sec) + "/" + name + ": " + e.what());
                } catch (const Error& e) {
                    throw InputError(std::string(sec) + "/" + name + ": " + e.what());
                }
            }
        }
    }
    if (doc.contains("tasks")) {
        const auto& tasks = doc.at("tasks");
        if (!tasks.is_array()) throw InputError("'tasks' must be a list");
        const auto ops = operation_names();
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            const json t = json::parse(tasks[i].dump());
            const std::string where = "task " + std::to_string(i + 1);
            try {
                Task task;
                task.op = field(t, "op", where).get<std::string>();
                if (std::find(ops.begin(), ops.end(), task.op) == ops.end())
                    throw InputError("unknown operation '" + task.op + "'");
                task.id = t.value("id", task.op);
                if (t.contains("args")) task.args = t.at("args");
                if (!task.args.is_object()) throw InputError("'args' must be an object");
                if (t.contains("options")) task.options = parse_options(t.at("options"));
                f.tasks.push_back(std::move(task));
            } catch (const InputError& e) {
                throw InputError(where + ": " + e.what());
            } catch (const nlohmann::json::exception& e) {
                throw InputError(where + ": " + e.what());
            }
        }
    }
    return f;
}

TaskFile load_task_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open task file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_task_file(ss.str());
}

}  // namespace loghh
