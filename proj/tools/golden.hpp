#pragma once

// Registry of shipped manifests and what each run must produce.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gpoisson_golden_data.hpp"  // generated from manifests/*.json

namespace gpoisson::golden {

enum class RunKind { construct, check, identity };

struct Run {
    RunKind kind = RunKind::check;
    int theorem = 0;
    std::string which;  // identity runs
    std::vector<std::string> multipliers;
    std::vector<std::string> tensors;
    std::vector<std::string> expected_failures;
    std::vector<std::pair<std::string, std::string>> witnesses;  // check name, exact witness text

    std::string label() const {
        switch (kind) {
            case RunKind::construct: return "construct --theorem " + std::to_string(theorem);
            case RunKind::check: return "check";
            case RunKind::identity: return "identity --which " + which;
        }
        return "?";
    }
};

inline Run construct_run(int theorem) {
    Run r;
    r.kind = RunKind::construct;
    r.theorem = theorem;
    return r;
}

inline Run check_run() { return Run{}; }

inline Run identity_run(std::string which) {
    Run r;
    r.kind = RunKind::identity;
    r.which = std::move(which);
    return r;
}

struct Case {
    std::string name;
    std::string summary;
    std::vector<Run> runs;
};

inline const std::vector<Case>& registry() {
    static const std::vector<Case> cases = [] {
        std::vector<Case> c;

        Run ex1 = construct_run(1);
        ex1.multipliers = {"(x1^2 + x2^2)^2*(x5^2 + x6^2)"};
        c.push_back({"paper-ex1", "R^12 simultaneous rotations, five cross-plane symmetries", {ex1}});

        Run ex2a = construct_run(1);
        ex2a.multipliers = {"1"};
        ex2a.tensors = {"[1] e7 e1 e2 e3 e4 + [1] e7 e1 e2 e5 e6"};
        Run ex2b = construct_run(3);
        ex2b.multipliers = {"1", "1"};
        ex2b.tensors = {"[1] e7 e2 e3 e4 + [1] e7 e2 e5 e6", "[1] e7 e1 e3 e4 + [1] e7 e1 e5 e6"};
        c.push_back({"paper-ex2", "R^7 translations, rescaling and the reduced family", {ex2a, ex2b}});

        Run angle = construct_run(1);
        angle.multipliers = {"1"};
        angle.tensors = {"[1] e6 e1 e2 e3 + [1] e6 e1 e4 e5"};
        // With s = 5 the single reduced member is a trivector of Plucker type.
        Run angle_family = construct_run(3);
        angle_family.multipliers = {"1"};
        angle_family.tensors = {"[1] e6 e2 e3 + [1] e6 e4 e5"};
        angle_family.expected_failures = {"N1:generalized_poisson", "N1:numeric:plucker_A"};
        c.push_back({"paper-angle", "one-angle drift on R^6 (corrected)", {angle, angle_family}});

        Run lv = construct_run(2);
        lv.multipliers = {"x1 + x2 + x3 + x4"};
        lv.tensors = {"[x1*(x2 - x4)] e1 e5 + [x2*(x3 - x1)] e2 e5 + [x3*(x4 - x2)] e3 e5 + [x4*(x1 - x3)] e4 e5"
                      " + [x1*x2*(x1 + x2 - x3 - x4)] e1 e2 + [2*x1*x3*(x2 - x4)] e1 e3"
                      " + [x1*x4*(-x1 + x2 + x3 - x4)] e1 e4 + [x2*x3*(-x1 + x2 + x3 - x4)] e2 e3"
                      " + [2*x2*x4*(x3 - x1)] e2 e4 + [x3*x4*(-x1 - x2 + x3 + x4)] e3 e4 + [1] e5 e6"};
        lv.expected_failures = {"hypothesis:commutator[Xs,Gamma]"};
        c.push_back({"paper-lv", "cyclic Lotka-Volterra with two spectators, warn mode", {lv}});

        Run counter = check_run();
        counter.expected_failures = {"generalized_poisson", "decomposable", "numeric:plucker_A"};
        counter.witnesses = {{"generalized_poisson", "plucker_A (dx1, dx4): [1] e2 e3 e5 e6"}};
        Run counter_plucker = identity_run("plucker");
        counter_plucker.expected_failures = {"plucker_A"};
        counter_plucker.witnesses = {{"plucker_A", "(dx1, dx4): [1] e2 e3 e5 e6"}};
        c.push_back({"counter-r6-trivector", "degree-3 sum of disjoint blocks", {counter, counter_plucker}});

        Run nambu = check_run();
        Run nambu_fi = identity_run("fi");
        Run nambu_gji = identity_run("gji");
        c.push_back({"canonical-nambu-r3", "Jacobian bracket on R^3", {nambu, nambu_fi, nambu_gji}});
        return c;
    }();
    return cases;
}

inline const Case* find_case(std::string_view name) {
    for (const auto& c : registry())
        if (c.name == name)
            return &c;
    return nullptr;
}

inline std::optional<std::string> manifest_text(std::string_view name) {
    for (const auto& e : golden_data::entries)
        if (name == e.name)
            return std::string(e.text);
    return std::nullopt;
}

}  // namespace gpoisson::golden
