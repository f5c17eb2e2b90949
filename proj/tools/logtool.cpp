#include "loghh/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace loghh;

namespace {

void add_common(CLI::App* app, RunFlags& f, std::size_t& qmax, std::int64_t& box, std::int64_t& bounds) {
    app->add_option("--format", f.format, "Report format")->check(CLI::IsMember({"json", "text"}));
    app->add_option("--qmax", qmax, "Default truncation bound")->check(CLI::Range(0, 8));
    app->add_option("--degree-box", box, "Default degree box radius")->check(CLI::Range(0, 12));
    app->add_option("--bounds", bounds, "Default search bound")->check(CLI::Range(1, 64));
    app->add_option("--seed", f.seed, "Seed for sampling verifiers");
    app->add_option("--only", f.only, "Run only tasks or criteria matching PATTERN");
    app->add_flag("--allow-inconclusive", f.allow_inconclusive, "Exit 0 on unknown/unsupported verdicts");
    app->add_flag("--timing", f.timing, "Include wall-clock times in JSON output");
}

void emit(const RunResult& r, const RunFlags& f) {
    if (f.format == "json")
        std::cout << r.report.dump(2) << '\n';
    else
        std::cout << render_text(r);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Logarithmic Hochschild homology toolkit"};
    app.require_subcommand(1);

    RunFlags flags;
    std::size_t qmax = 0;
    std::int64_t box = 0, bounds = 0;
    std::string path;

    auto* run = app.add_subcommand("run", "Execute a task file");
    run->add_option("file", path, "Task file (JSON)")->required();
    add_common(run, flags, qmax, box, bounds);

    auto* acc = app.add_subcommand("acceptance", "Run the acceptance suite");
    add_common(acc, flags, qmax, box, bounds);

    app.add_subcommand("ops", "List task operations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    auto sub = app.get_subcommands().front();
    auto set = [&](const char* name) { return sub->count(name) > 0; };
    if (sub->get_name() != "ops") {
        if (set("--qmax")) flags.qmax = qmax;
        if (set("--degree-box")) flags.degree_box = box;
        if (set("--bounds")) flags.bounds = bounds;
    }
    apply_thread_env();

    try {
        if (sub->get_name() == "ops") {
            for (const auto& op : operation_names()) std::cout << op << '\n';
            return 0;
        }
        RunResult r;
        if (sub->get_name() == "run")
            r = run_tasks(load_task_file(path), flags);
        else
            r = acceptance(flags);
        emit(r, flags);
        return r.exit_code;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
