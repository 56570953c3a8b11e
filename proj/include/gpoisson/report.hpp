#pragma once

// Run reports in a human text layout or a single machine-readable JSON
// document. Timings are left out unless requested so that equal inputs give
// byte-identical output.

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gpoisson/checks.hpp"
#include "json.hpp"

namespace gpoisson {

enum class ReportFormat { text, machine };

struct Report {
    std::string command;
    std::string source;
    std::string digest;
    std::vector<CheckResult> checks;
    std::vector<std::pair<std::string, std::string>> tensors;
    std::vector<std::pair<std::string, std::string>> multipliers;
    std::vector<std::string> notes;

    /// Overall verdict: every required check passed.
    bool passed() const {
        for (const auto& c : checks)
            if (c.required && !c.passed)
                return false;
        return true;
    }

    void add_checks(const std::vector<CheckResult>& cs, const std::string& prefix = "") {
        for (auto c : cs) {
            c.name = prefix + c.name;
            checks.push_back(std::move(c));
        }
    }
};

inline double milliseconds(const CheckResult& c) { return static_cast<double>(c.elapsed.count()) / 1e6; }

inline void write_text(std::ostream& os, const Report& r, bool timings) {
    os << "command: " << r.command << '\n';
    if (!r.source.empty())
        os << "manifest: " << r.source << (r.digest.empty() ? "" : " (fnv1a64 " + r.digest + ")") << '\n';
    for (const auto& c : r.checks) {
        const char* tag = c.passed ? "PASS" : (c.required ? "FAIL" : "WARN");
        os << tag << "  " << c.name;
        if (timings)
            os << "  [" << std::fixed << std::setprecision(3) << milliseconds(c) << " ms]";
        os << '\n';
        if (c.witness)
            os << "      witness " << c.witness->to_string() << '\n';
        if (!c.note.empty())
            os << "      note " << c.note << '\n';
    }
    for (const auto& [name, literal] : r.tensors)
        os << "tensor " << name << " = " << literal << '\n';
    for (const auto& [name, literal] : r.multipliers)
        os << "multiplier " << name << " = " << literal << '\n';
    for (const auto& n : r.notes)
        os << "note: " << n << '\n';
    os << "result: " << (r.passed() ? "PASS" : "FAIL") << '\n';
}

inline nlohmann::ordered_json to_json(const Report& r, bool timings) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["command"] = r.command;
    doc["manifest"] = {{"source", r.source}, {"digest", r.digest}};
    ordered_json checks = ordered_json::array();
    for (const auto& c : r.checks) {
        ordered_json j;
        j["name"] = c.name;
        j["passed"] = c.passed;
        j["required"] = c.required;
        j["witness"] = c.witness ? ordered_json(c.witness->to_string()) : ordered_json(nullptr);
        j["ms"] = timings ? ordered_json(milliseconds(c)) : ordered_json(nullptr);
        if (!c.note.empty())
            j["note"] = c.note;
        checks.push_back(std::move(j));
    }
    doc["checks"] = std::move(checks);
    auto pairs = [](const std::vector<std::pair<std::string, std::string>>& v) {
        ordered_json a = ordered_json::array();
        for (const auto& [name, literal] : v)
            a.push_back({{"name", name}, {"value", literal}});
        return a;
    };
    doc["tensors"] = pairs(r.tensors);
    doc["multipliers"] = pairs(r.multipliers);
    doc["notes"] = r.notes;
    doc["passed"] = r.passed();
    return doc;
}

inline void write_report(std::ostream& os, const Report& r, ReportFormat format, bool timings) {
    if (format == ReportFormat::text)
        write_text(os, r, timings);
    else
        os << to_json(r, timings).dump(2) << '\n';
}

}  // namespace gpoisson
