#pragma once

// Command dispatch for the gpoisson tool. run_command is kept separate from
// main() so tests can drive it with captured streams.
//
// Exit codes: 0 every required check passed, 1 a check failed, 2 input or
// usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "golden.hpp"
#include "gpoisson/gpoisson.hpp"

namespace gpoisson::cli {

inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_input = 2;

struct Settings {
    std::optional<std::string> mode;
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
    std::string report_path;
    std::string format = "text";
    bool timings = false;
};

/// Manifest options with command-line overrides applied.
struct Effective {
    ValidationMode mode = ValidationMode::strict;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    bool relaxed = false;

    SampleConfig sample() const { return SampleConfig{trials, seed, 1000}; }
};

inline Effective effective(const Settings& s, const ManifestOptions& o) {
    Effective e{o.mode, o.numeric_trials, o.seed, o.relaxed_commutators};
    if (s.mode)
        e.mode = parse_mode(*s.mode);
    if (s.trials)
        e.trials = *s.trials;
    if (s.seed)
        e.seed = *s.seed;
    return e;
}

/// A report plus the exact objects behind its literals.
struct Outcome {
    Report report;
    std::vector<MultiVector<Polynomial>> tensors;
    std::vector<Polynomial> multipliers;
};

// ---------------------------------------------------------------------------
// Target resolution

/// A manifest file path, or else the name of a shipped registry case.
inline std::optional<Manifest> resolve_manifest(const std::string& target) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(target, ec))
        return parse_manifest(target);
    if (auto text = golden::manifest_text(target))
        return parse_manifest_text(*text, target);
    return std::nullopt;
}

inline Manifest require_manifest(const std::string& target) {
    if (auto m = resolve_manifest(target))
        return *m;
    throw input_error("no manifest file or registry case named '" + target + "'");
}

/// Chart for an inline literal: explicit names, an explicit dimension, or
/// the largest e<k> / x<k> index mentioned.
inline ContextPtr literal_context(const std::string& literal, const std::string& vars, std::size_t dim) {
    if (!vars.empty()) {
        std::vector<std::string> names;
        std::stringstream ss(vars);
        for (std::string item; std::getline(ss, item, ',');) {
            const auto b = item.find_first_not_of(" \t");
            const auto e = item.find_last_not_of(" \t");
            names.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
        }
        return make_context(names);
    }
    if (dim == 0) {
        for (std::size_t i = 0; i < literal.size(); ++i) {
            const char c = literal[i];
            const bool boundary = i == 0 || !std::isalnum(static_cast<unsigned char>(literal[i - 1]));
            if ((c == 'e' || c == 'x') && boundary) {
                std::size_t j = i + 1;
                std::size_t k = 0;
                while (j < literal.size() && std::isdigit(static_cast<unsigned char>(literal[j])) && j - i < 4)
                    k = k * 10 + static_cast<std::size_t>(literal[j++] - '0');
                dim = std::max(dim, k);
            }
        }
        if (dim == 0)
            throw input_error("cannot infer the chart dimension; pass --dim or --vars");
    }
    return make_context(dim);
}

// ---------------------------------------------------------------------------
// Numeric screens (never decide the verdict)

inline CheckResult screen_plucker(const MultiVector<Polynomial>& n, const SampleConfig& cfg) {
    const std::size_t dim = n.context()->dimension();
    std::vector<MultiVector<Polynomial>> contractions;
    for (std::size_t u = 0; u < dim; ++u)
        contractions.push_back(contract_coordinate(u, n));
    CheckResult result = CheckResult::pass("numeric:plucker_A");
    result.required = false;
    for (std::size_t u = 0; u < dim; ++u) {
        for (std::size_t v = 0; v < dim; ++v) {
            auto r = sample_identity_check(wedge(contractions[u], contractions[v]), cfg, result.name);
            if (!r.passed) {
                r.witness->location = detail::pair_label(u, v) + " " + r.witness->location;
                return r;
            }
        }
    }
    return result;
}

inline std::vector<CheckResult> tensor_screens(const MultiVector<Polynomial>& n, const SampleConfig& cfg) {
    std::vector<CheckResult> out;
    if (n.degree() % 2 == 0) {
        out.push_back(sample_identity_check(schouten(n, n), cfg, "numeric:schouten_self"));
    } else {
        out.push_back(screen_plucker(n, cfg));
        out.push_back(sample_identity_check(condition_B_residual(n), cfg, "numeric:condition_B"));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Runs

/// Structure checks on a bare tensor. The decomposability result is only
/// reported.
inline std::vector<CheckResult> tensor_checks(const MultiVector<Polynomial>& n, const Effective& eff) {
    std::vector<CheckResult> out;
    if (n.degree() >= 2)
        out.push_back(is_generalized_poisson(n));
    auto d = is_decomposable_pointwise(n);
    d.required = false;
    out.push_back(d);
    if (eff.trials > 0 && n.degree() >= 2)
        for (auto& s : tensor_screens(n, eff.sample()))
            out.push_back(s);
    return out;
}

inline Report base_report(const std::string& command, const Manifest* m) {
    Report r;
    r.command = command;
    if (m) {
        r.source = m->source;
        r.digest = m->digest;
    }
    return r;
}

inline void add_output(Outcome& o, const ConstructionOutput& c, const ProblemData& data, const Effective& eff,
                       const std::string& label) {
    const std::string prefix = label == "N" ? "" : label + ":";
    o.report.add_checks(c.checks, prefix);
    if (eff.trials > 0) {
        const auto cfg = eff.sample();
        o.report.add_checks(tensor_screens(c.tensor, cfg), prefix);
        std::vector<Polynomial> hs;
        if (c.dropped_index) {
            for (std::size_t k = 0; k < data.integrals.size(); ++k)
                if (k + 1 != *c.dropped_index)
                    hs.push_back(data.integrals[k]);
        } else {
            hs.assign(data.integrals.begin(), data.integrals.begin() + static_cast<std::ptrdiff_t>(c.tensor.degree() - 1));
        }
        o.report.checks.push_back(
            sample_identity_check(quasi_hamiltonian_residual(c.tensor, hs, data.gamma, c.multiplier), cfg,
                                  prefix + "numeric:quasi_hamiltonian"));
    }
    o.report.tensors.emplace_back(label, c.tensor.to_string());
    if (c.scaled)
        o.report.tensors.emplace_back(label == "N" ? "J" : "J" + label.substr(1), c.scaled->to_string());
    o.report.multipliers.emplace_back(label, c.multiplier.to_string());
    o.tensors.push_back(c.tensor);
    o.multipliers.push_back(c.multiplier);
}

inline Outcome run_construct(const Manifest& m, int theorem, const Effective& eff, const std::string& command) {
    if (!m.has_dynamics())
        throw input_error("manifest '" + m.source + "' declares no dynamics to build from");
    auto data = m.problem();
    data.mode = eff.mode;
    data.relaxed_commutators = eff.relaxed;
    Outcome o{base_report(command, &m), {}, {}};
    try {
        if (theorem == 1 || theorem == 2) {
            const auto out = theorem == 1 ? build_theorem1(data) : build_theorem2(data);
            o.report.add_checks(out.hypotheses, "hypothesis:");
            add_output(o, out, data, eff, "N");
        } else if (theorem == 3) {
            const auto members = build_theorem3_family(data);
            if (!members.empty())
                o.report.add_checks(members.front().hypotheses, "hypothesis:");
            for (const auto& member : members)
                add_output(o, member, data, eff, "N" + std::to_string(*member.dropped_index));
        } else {
            throw input_error("theorem must be 1, 2 or 3");
        }
    } catch (const hypothesis_error& e) {
        o.report.add_checks(e.results(), "hypothesis:");
        o.report.notes.push_back("strict validation failed; nothing was built");
    } catch (const degenerate_construction_error& e) {
        o.report.checks.push_back(CheckResult::fail("construction", {"multiplier", e.what()}));
    }
    return o;
}

inline int inferred_theorem(const Manifest& m) {
    if (m.theorem)
        return *m.theorem;
    return m.symmetries.size() == 3 ? 2 : 1;
}

inline Outcome run_check(const Manifest& m, const Effective& eff) {
    Outcome o{base_report("check", &m), {}, {}};
    if (m.has_dynamics()) {
        const int t = inferred_theorem(m);
        o = run_construct(m, t, eff, "check");
        o.report.notes.push_back("built with theorem " + std::to_string(t));
    }
    if (m.tensor) {
        o.report.add_checks(tensor_checks(*m.tensor, eff), m.has_dynamics() ? "tensor:" : "");
        o.report.tensors.emplace_back(m.has_dynamics() ? "declared" : "N", m.tensor->to_string());
        o.tensors.push_back(*m.tensor);
    }
    return o;
}

inline std::string tuple_literal(const std::vector<Polynomial>& fs) {
    std::string s = "functions (";
    for (std::size_t i = 0; i < fs.size(); ++i)
        s += (i ? "; " : "") + fs[i].to_string();
    return s + ")";
}

/// Function tuples for the fi/gji checks: the explicit one, or seeded random
/// ones of total degree <= 2.
inline std::vector<std::vector<Polynomial>> function_tuples(const ContextPtr& ctx, std::size_t count,
                                                            const std::string& explicit_functions,
                                                            const Effective& eff) {
    std::vector<std::vector<Polynomial>> tuples;
    if (!explicit_functions.empty()) {
        std::vector<Polynomial> fs;
        std::stringstream ss(explicit_functions);
        for (std::string item; std::getline(ss, item, ';');)
            fs.push_back(parse_expression(item, ctx));
        if (fs.size() != count)
            throw input_error("--functions needs " + std::to_string(count) + " expressions, got " +
                              std::to_string(fs.size()));
        tuples.push_back(std::move(fs));
        return tuples;
    }
    Rng rng(eff.seed);
    const std::size_t trials = eff.trials > 0 ? eff.trials : 8;
    for (std::size_t t = 0; t < trials; ++t) {
        std::vector<Polynomial> fs;
        for (std::size_t k = 0; k < count; ++k)
            fs.push_back(random_polynomial(ctx, rng, 2, 3));
        tuples.push_back(std::move(fs));
    }
    return tuples;
}

inline CheckResult identity_check(const MultiVector<Polynomial>& n, const std::string& which,
                                  const std::string& functions, const Effective& eff) {
    if (which == "schouten-self")
        return schouten_self_check(n);
    if (which == "plucker")
        return plucker_A_check(n);
    if (which == "condB")
        return condition_B_check(n);
    if (which == "decomposable")
        return is_decomposable_pointwise(n);
    if (which == "gji" || which == "fi") {
        const std::size_t m = n.degree();
        if (m < 2)
            throw degree_error(which + " needs a tensor of degree >= 2");
        detail::Stopwatch clock;
        CheckResult result = CheckResult::pass(which);
        for (const auto& fs : function_tuples(n.context(), 2 * m - 1, functions, eff)) {
            Polynomial r = Polynomial::zero(n.context());
            if (which == "gji") {
                r = gji_residual(n, fs, GjiMode::shuffle);
            } else {
                const std::vector<Polynomial> head(fs.begin(), fs.begin() + static_cast<std::ptrdiff_t>(m - 1));
                const std::vector<Polynomial> tail(fs.begin() + static_cast<std::ptrdiff_t>(m - 1), fs.end());
                r = fi_residual(n, head, tail);
            }
            if (!r.is_zero()) {
                result = CheckResult::fail(which, {tuple_literal(fs), r.to_string()});
                break;
            }
        }
        result.elapsed = clock.elapsed();
        return result;
    }
    throw input_error("unknown identity '" + which + "'");
}

inline Outcome run_identity(const MultiVector<Polynomial>& n, const std::string& which, const std::string& functions,
                            const Effective& eff, const Manifest* m) {
    Outcome o{base_report("identity --which " + which, m), {n}, {}};
    o.report.checks.push_back(identity_check(n, which, functions, eff));
    o.report.tensors.emplace_back("N", n.to_string());
    return o;
}

/// Tensor named by a manifest: its declared tensor, or the one its theorem
/// builds.
inline MultiVector<Polynomial> manifest_tensor(const Manifest& m, const Effective& eff) {
    if (m.tensor)
        return *m.tensor;
    const int t = inferred_theorem(m);
    const auto o = run_construct(m, t == 3 ? 1 : t, eff, "identity");
    if (o.tensors.empty())
        throw validation_error("manifest '" + m.source + "' does not build a tensor (hypotheses failed)");
    return o.tensors.front();
}

// ---------------------------------------------------------------------------
// Golden registry

inline CheckResult run_golden(const golden::Case& c, const golden::Run& run, std::optional<std::uint64_t> seed) {
    detail::Stopwatch clock;
    const Manifest m = parse_manifest_text(*golden::manifest_text(c.name), c.name);
    Settings s;
    s.seed = seed;
    const Effective eff = effective(s, m.options);

    Outcome o;
    switch (run.kind) {
        case golden::RunKind::construct: o = run_construct(m, run.theorem, eff, run.label()); break;
        case golden::RunKind::check: o = run_check(m, eff); break;
        case golden::RunKind::identity: o = run_identity(manifest_tensor(m, eff), run.which, "", eff, &m); break;
    }

    std::vector<std::string> problems;
    auto expected_fail = [&](const std::string& name) {
        return std::find(run.expected_failures.begin(), run.expected_failures.end(), name) !=
               run.expected_failures.end();
    };
    for (const auto& name : run.expected_failures) {
        const bool found = std::any_of(o.report.checks.begin(), o.report.checks.end(),
                                       [&](const CheckResult& r) { return r.name == name && !r.passed; });
        if (!found)
            problems.push_back(name + " was expected to fail");
    }
    for (const auto& r : o.report.checks)
        if (!r.passed && !expected_fail(r.name))
            problems.push_back(r.name + " failed");
    for (const auto& [name, text] : run.witnesses) {
        const auto it = std::find_if(o.report.checks.begin(), o.report.checks.end(),
                                     [&](const CheckResult& r) { return r.name == name; });
        if (it == o.report.checks.end() || !it->witness || it->witness->to_string() != text)
            problems.push_back(name + " witness differs from '" + text + "'");
    }
    if (!run.multipliers.empty()) {
        if (o.multipliers.size() != run.multipliers.size())
            problems.push_back("expected " + std::to_string(run.multipliers.size()) + " multipliers, got " +
                               std::to_string(o.multipliers.size()));
        else
            for (std::size_t i = 0; i < o.multipliers.size(); ++i)
                if (o.multipliers[i] != parse_expression(run.multipliers[i], m.context))
                    problems.push_back("multiplier " + std::to_string(i + 1) + " is " + o.multipliers[i].to_string());
    }
    if (!run.tensors.empty()) {
        if (o.tensors.size() != run.tensors.size())
            problems.push_back("expected " + std::to_string(run.tensors.size()) + " tensors, got " +
                               std::to_string(o.tensors.size()));
        else
            for (std::size_t i = 0; i < o.tensors.size(); ++i)
                if (o.tensors[i] != parse_multivector(run.tensors[i], m.context))
                    problems.push_back("tensor " + std::to_string(i + 1) + " differs");
    }

    const std::string name = c.name + ": " + run.label();
    CheckResult result = CheckResult::pass(name);
    if (!problems.empty()) {
        std::string all;
        for (const auto& p : problems)
            all += (all.empty() ? "" : "; ") + p;
        result = CheckResult::fail(name, {"", all});
    }
    result.elapsed = clock.elapsed();
    return result;
}

// ---------------------------------------------------------------------------
// Dispatch

inline int emit(const Report& r, const Settings& s, std::ostream& out) {
    const auto format = s.format == "machine" ? ReportFormat::machine : ReportFormat::text;
    if (s.report_path.empty()) {
        write_report(out, r, format, s.timings);
    } else {
        std::ofstream file(s.report_path, std::ios::binary);
        if (!file)
            throw input_error("cannot write report to '" + s.report_path + "'");
        write_report(file, r, format, s.timings);
        out << "result: " << (r.passed() ? "PASS" : "FAIL") << " (report written to " << s.report_path << ")\n";
    }
    return r.passed() ? exit_pass : exit_fail;
}

inline int run_command(const std::vector<std::string>& args, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
    CLI::App app{"Builds and verifies generalized Poisson tensors from symmetries and first integrals.", "gpoisson"};
    app.require_subcommand(1);
    app.fallthrough();

    Settings s;
    app.add_option("--mode", s.mode, "Hypothesis validation mode")->check(CLI::IsMember({"strict", "warn"}));
    app.add_option("--numeric-trials", s.trials, "Sampled points per numeric screen (0 disables)");
    app.add_option("--seed", s.seed, "Seed for sampled points and random function tuples");
    app.add_option("--report", s.report_path, "Write the report to this file");
    app.add_option("--format", s.format, "Report format")->check(CLI::IsMember({"text", "machine"}));
    app.add_flag("--timings", s.timings, "Include per-check timings in the report");

    std::string target;
    auto* check = app.add_subcommand("check", "Validate hypotheses and run structure checks on a manifest");
    check->add_option("manifest", target, "Manifest path or registry name")->required();

    int theorem = 0;
    std::string construct_target;
    auto* construct = app.add_subcommand("construct", "Build a tensor from a manifest and verify it");
    construct->add_option("--theorem", theorem, "1: s symmetries, 2: bivector, 3: reduced family")
        ->required()
        ->check(CLI::Range(1, 3));
    construct->add_option("manifest", construct_target, "Manifest path or registry name")->required();

    std::string which, identity_target, vars, functions;
    std::size_t dim = 0;
    auto* identity = app.add_subcommand("identity", "Run one check on a manifest tensor or an inline literal");
    identity->add_option("--which", which, "Check to run")
        ->required()
        ->check(CLI::IsMember({"schouten-self", "plucker", "condB", "gji", "fi", "decomposable"}));
    identity->add_option("target", identity_target, "Manifest path, registry name or multivector literal")
        ->required();
    identity->add_option("--dim", dim, "Chart dimension for a literal (variables x1..xN)");
    identity->add_option("--vars", vars, "Comma-separated variable names for a literal");
    identity->add_option("--functions", functions, "Semicolon-separated function tuple for gji/fi");

    std::string golden_name;
    auto* golden_cmd = app.add_subcommand("golden", "Run the shipped registry cases");
    golden_cmd->add_option("name", golden_name, "Run a single case");

    std::vector<std::string> argv_storage{"gpoisson"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage)
        argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_pass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    }

    try {
        if (check->parsed()) {
            const auto m = require_manifest(target);
            return emit(run_check(m, effective(s, m.options)).report, s, out);
        }
        if (construct->parsed()) {
            const auto m = require_manifest(construct_target);
            return emit(run_construct(m, theorem, effective(s, m.options),
                                      "construct --theorem " + std::to_string(theorem))
                            .report,
                        s, out);
        }
        if (identity->parsed()) {
            if (auto m = resolve_manifest(identity_target)) {
                const auto eff = effective(s, m->options);
                return emit(run_identity(manifest_tensor(*m, eff), which, functions, eff, &*m).report, s, out);
            }
            const auto ctx = literal_context(identity_target, vars, dim);
            const auto n = parse_multivector(identity_target, ctx);
            return emit(run_identity(n, which, functions, effective(s, {}), nullptr).report, s, out);
        }
        if (golden_cmd->parsed()) {
            Report r;
            r.command = "golden";
            bool any = false;
            for (const auto& c : golden::registry()) {
                if (!golden_name.empty() && c.name != golden_name)
                    continue;
                any = true;
                for (const auto& run : c.runs)
                    r.checks.push_back(run_golden(c, run, s.seed));
            }
            if (!any)
                throw input_error("no registry case named '" + golden_name + "'");
            return emit(r, s, out);
        }
    } catch (const validation_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_fail;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}

}  // namespace gpoisson::cli
