#include "loghh/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

using namespace loghh;

// One line per criterion; exit status 0 iff every criterion passes.
int main(int argc, char** argv) {
    RunFlags flags;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a.rfind("--only=", 0) == 0)
            flags.only = a.substr(7);
        else if (a.rfind("--seed=", 0) == 0)
            flags.seed = std::strtoull(a.c_str() + 7, nullptr, 10);
    }
    apply_thread_env();
    auto r = acceptance(flags);
    bool ok = true;
    const auto& rows = r.report["criteria"];
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& c = rows[i];
        std::string verdict = c["verdict"];
        bool pass = verdict == "pass";
        ok = ok && pass;
        double s = i < r.seconds.size() ? r.seconds[i] : 0.0;
        std::printf("%s  %2d %-12s %-60s %8.3fs\n", pass ? "PASS" : "FAIL", c["number"].get<int>(),
                    c["key"].get<std::string>().c_str(), c["title"].get<std::string>().c_str(), s);
        if (!pass)
            for (const auto& n : c["notes"]) std::printf("        %s\n", n.get<std::string>().c_str());
    }
    return ok && !rows.empty() ? 0 : 1;
}
