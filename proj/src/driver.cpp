#include "driver.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

namespace driver {

using nlohmann::json;

uint64_t mix_seed(uint64_t seed, uint64_t index) {
    // splitmix64 step over seed + golden-ratio stride
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<std::string> scenario_names() {
    return {"example-a",   "radical-oracle",       "random-covers", "covers-battery",
            "ttf-properties", "ext-shadow", "lemma-smallness-brute"};
}

bool known_scenario(const std::string& name) {
    for (const auto& n : scenario_names())
        if (n == name) return true;
    return false;
}

std::vector<std::pair<std::string, alg::Algebra>> algebra_battery() {
    std::vector<std::pair<std::string, alg::Algebra>> base;
    base.emplace_back("F2", alg::matrix_algebra(2, 1));
    base.emplace_back("F2[x]/(x^2)", alg::truncated_polynomial_algebra(2, 2));
    base.emplace_back("F2[x]/(x^3)", alg::truncated_polynomial_algebra(2, 3));
    base.emplace_back("UT2(F2)", alg::upper_triangular(2, 2).algebra);
    base.emplace_back("UT3(F2)", alg::upper_triangular(2, 3).algebra);
    base.emplace_back("M2(F2)", alg::matrix_algebra(2, 2));
    base.emplace_back("UT2(F3)", alg::upper_triangular(3, 2).algebra);

    std::vector<std::pair<std::string, alg::Algebra>> out = base;
    for (size_t i = 0; i < base.size(); ++i)
        for (size_t j = i; j < base.size(); ++j) {
            if (base[i].second.p() != base[j].second.p()) continue;
            out.emplace_back(base[i].first + " x " + base[j].first,
                             alg::direct_product(base[i].second, base[j].second).algebra);
        }
    return out;
}

std::string to_json(const Report& r) {
    json records = json::array();
    for (const auto& rec : r.records)
        records.push_back(json{{"name", rec.name},
                               {"status", rec.status},
                               {"mode", rec.mode},
                               {"details", rec.details}});
    json j{{"schema_version", kSchemaVersion},
           {"tool_version", kToolVersion},
           {"scenario",
            json{{"name", r.scenario.name},
                 {"seed", r.scenario.seed},
                 {"trials", r.scenario.trials},
                 {"depth", r.scenario.depth}}},
           {"records", records},
           {"summary",
            json{{"checks", static_cast<int>(r.records.size())},
                 {"passed", r.passed},
                 {"failed", r.failed},
                 {"skipped", r.skipped},
                 {"all_pass", r.all_pass}}}};
    return j.dump(2) + "\n";
}

std::string to_text(const Report& r) {
    std::ostringstream os;
    os << "scenario " << r.scenario.name << " seed=" << r.scenario.seed << " trials=" << r.scenario.trials
       << " depth=" << r.scenario.depth << "\n";
    for (const auto& rec : r.records) {
        os << "  [" << (rec.status == "pass" ? "PASS" : rec.status == "fail" ? "FAIL" : "SKIP") << "] "
           << rec.name << " (" << rec.mode << ", " << static_cast<long long>(rec.duration_ms) << " ms): "
           << rec.details << "\n";
    }
    os << "summary: " << r.passed << " passed, " << r.failed << " failed, " << r.skipped << " skipped -> "
       << (r.all_pass ? "OK" : "FAILURE") << "\n";
    return os.str();
}

void emit(const Report& r, const std::string& format, const std::string& path) {
    std::string body;
    if (format == "json")
        body = to_json(r);
    else if (format == "text")
        body = to_text(r);
    else
        throw std::invalid_argument("emit: format must be json or text");
    if (path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit: cannot write " + path);
    out << body;
    if (!out) throw std::runtime_error("emit: write failed for " + path);
}

}  // namespace driver
