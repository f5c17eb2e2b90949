#pragma once

#include "loghh/global.hpp"
#include "loghh/repletion.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace loghh {

// Malformed task file or unresolved reference; maps to exit code 2.
struct InputError : Error {
    using Error::Error;
};

// Declarations of a task file, resolved and immutable once parsed.
struct Declarations {
    std::map<std::string, AffineMonoid> monoids;
    std::map<std::string, MonoidHom> monoid_maps;
    std::map<std::string, PreLogRing> rings;
    std::map<std::string, PreLogMap> prelog_maps;
    std::map<std::string, Fan> fans;
    std::map<std::string, GluedLogScheme> schemes;
    std::map<std::string, json> source;  // "section/name" -> declaration as written
};

struct TaskOptions {
    std::optional<std::size_t> qmax;
    std::optional<std::int64_t> degree_box, bounds;
    std::optional<std::vector<IntVec>> degrees;
    std::optional<Coefficients> coefficients;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    bool acknowledge_window = false;
};

struct Task {
    std::string op, id;
    json args = json::object();
    TaskOptions options;
};

struct TaskFile {
    Declarations decl;
    std::vector<Task> tasks;
};

struct RunFlags {
    std::string format = "text";
    std::optional<std::size_t> qmax;
    std::optional<std::int64_t> degree_box, bounds;
    std::uint64_t seed = 1;
    std::string only;
    bool allow_inconclusive = false;
    bool timing = false;  // wall-clock times in the JSON report (always shown in text)
};

struct RunResult {
    json report;
    int exit_code = 0;
    std::vector<double> seconds;  // per row, for the text renderer
};

// Serialization of declared objects; parse_* accepts what serialize_* emits.
Coefficients parse_coefficients(const std::string& s);
std::string coefficients_name(const Coefficients& k);
json serialize(const AffineMonoid& M);
json serialize(const MonoidHom& theta);
json serialize(const PreLogRing& A);
json serialize(const PreLogMap& f);
json serialize(const Fan& f);
json serialize(const GluedLogScheme& X);
AffineMonoid parse_monoid(const json& j, const Declarations& d);
MonoidHom parse_monoid_map(const json& j, const Declarations& d);
PreLogRing parse_ring(const json& j, const Declarations& d);
PreLogMap parse_prelog_map(const json& j, const Declarations& d);
Fan parse_fan(const json& j, const Declarations& d);
GluedLogScheme parse_scheme(const json& j, const Declarations& d);
IntMatrix parse_matrix(const json& rows, std::size_t cols_if_empty = 0);

// Parse errors carry line and column.
TaskFile parse_task_file(const std::string& text);
TaskFile load_task_file(const std::string& path);

std::vector<std::string> operation_names();
RunResult run_tasks(const TaskFile& file, const RunFlags& flags);

// Exit code from per-task verdicts and input errors: 2 invalid input, 1 failure, 3 inconclusive, 0 otherwise.
int exit_code(const std::vector<Verdict>& verdicts, bool invalid_input, bool allow_inconclusive);

std::string render_text(const RunResult& r);

struct Criterion {
    std::string key;  // e.g. "HKR"
    int number = 0;
    std::string title;
    double budget_seconds = 0;
    std::function<Report(std::uint64_t seed)> run;
};

// Criteria 1-10; the determinism criterion is driven by acceptance() itself.
std::vector<Criterion> acceptance_criteria();
RunResult acceptance(const RunFlags& flags);

// Thread count from LOGHH_THREADS (unset or invalid: OpenMP default).
void apply_thread_env();

}  // namespace loghh
