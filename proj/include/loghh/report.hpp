#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace loghh {

using json = nlohmann::json;

enum class Verdict { Pass, Fail, Unsupported, Unknown };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass:
            return "pass";
        case Verdict::Fail:
            return "fail";
        case Verdict::Unsupported:
            return "unsupported";
        case Verdict::Unknown:
            return "unknown";
    }
    return "?";
}

struct Report {
    std::string name;
    Verdict verdict = Verdict::Pass;
    std::vector<std::string> notes;
    json data = json::object();

    bool passed() const { return verdict == Verdict::Pass; }
    // Downgrade to fail with a message; never upgrades.
    void fail(const std::string& why) {
        verdict = Verdict::Fail;
        notes.push_back(why);
    }
    void check(bool ok, const std::string& what) {
        if (!ok) fail(what);
    }
    void absorb(const Report& sub) {
        if (sub.verdict == Verdict::Fail)
            verdict = Verdict::Fail;
        else if (verdict == Verdict::Pass && sub.verdict != Verdict::Pass)
            verdict = sub.verdict;
        for (const auto& n : sub.notes) notes.push_back(sub.name + ": " + n);
    }
    json to_json() const {
        json j;
        j["name"] = name;
        j["verdict"] = verdict_name(verdict);
        j["notes"] = notes;
        j["data"] = data;
        return j;
    }
};

}  // namespace loghh
