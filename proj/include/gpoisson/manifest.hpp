#pragma once

// JSON problem manifests.
//
//   {
//     "dimension": 6,
//     "variables": ["x1", ..., "x6"],
//     "gamma": ["0", ..., "1"],
//     "symmetries": [{"name": "X1", "coeffs": ["1", "0", ...]}, ...],
//     "integrals": ["x1", "x2", "x3"],
//     "theorem": 1,
//     "tensor": "[1] e1 e2 e3 + [1] e4 e5 e6",
//     "options": {"mode": "strict", "numeric_trials": 0, "seed": 0,
//                 "relaxed_commutators": false}
//   }
//
// `tensor` is optional; when present, gamma/symmetries/integrals may be
// omitted and the manifest only carries a tensor to check.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gpoisson/constructions.hpp"
#include "gpoisson/parser.hpp"
#include "json.hpp"

namespace gpoisson {

struct ManifestOptions {
    ValidationMode mode = ValidationMode::strict;
    std::size_t numeric_trials = 0;
    std::uint64_t seed = 0;
    bool relaxed_commutators = false;
};

struct NamedField {
    std::string name;
    VectorField<Polynomial> field;
};

struct Manifest {
    std::string source;  // path or registry name
    std::string digest;  // FNV-1a 64 of the raw text, hex
    ContextPtr context;
    std::optional<VectorField<Polynomial>> gamma;
    std::vector<NamedField> symmetries;
    std::vector<Polynomial> integrals;
    std::optional<int> theorem;
    std::optional<MultiVector<Polynomial>> tensor;
    ManifestOptions options;

    std::size_t dimension() const { return context->dimension(); }

    bool has_dynamics() const { return gamma.has_value(); }

    ProblemData problem() const {
        if (!gamma)
            throw input_error("manifest '" + source + "' has no gamma");
        std::vector<VectorField<Polynomial>> xs;
        std::vector<std::string> names;
        for (const auto& s : symmetries) {
            xs.push_back(s.field);
            names.push_back(s.name);
        }
        ProblemData data(context, *gamma, std::move(xs), integrals);
        data.symmetry_names = std::move(names);
        data.mode = options.mode;
        data.relaxed_commutators = options.relaxed_commutators;
        return data;
    }
};

inline std::string fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

inline ValidationMode parse_mode(const std::string& s) {
    if (s == "strict")
        return ValidationMode::strict;
    if (s == "warn")
        return ValidationMode::warn;
    throw input_error("unknown validation mode '" + s + "' (strict|warn)");
}

inline const char* mode_name(ValidationMode m) { return m == ValidationMode::strict ? "strict" : "warn"; }

namespace detail {

using nlohmann::json;

inline const json& require_field(const json& doc, const char* key) {
    if (!doc.contains(key))
        throw input_error(std::string("manifest: missing field '") + key + "'");
    return doc.at(key);
}

inline Polynomial parse_field_expression(const json& v, const ContextPtr& ctx, const std::string& field) {
    if (!v.is_string())
        throw input_error("manifest field '" + field + "': expected an expression string");
    try {
        return parse_expression(v.get<std::string>(), ctx);
    } catch (const parse_error& e) {
        throw input_error("manifest field '" + field + "': " + e.what());
    }
}

inline std::vector<Polynomial> parse_expression_list(const json& v, const ContextPtr& ctx, const std::string& field,
                                                     std::optional<std::size_t> expected) {
    if (!v.is_array())
        throw input_error("manifest field '" + field + "': expected an array");
    if (expected && v.size() != *expected)
        throw input_error("manifest field '" + field + "': expected " + std::to_string(*expected) + " entries, got " +
                          std::to_string(v.size()));
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(parse_field_expression(v[i], ctx, field + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace detail

/// Parses manifest text; `source` labels errors and the report.
inline Manifest parse_manifest_text(const std::string& text, const std::string& source) {
    using detail::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw input_error("manifest '" + source + "': invalid JSON: " + e.what());
    }
    if (!doc.is_object())
        throw input_error("manifest '" + source + "': top level must be an object");

    const auto& dim = detail::require_field(doc, "dimension");
    if (!dim.is_number_integer() || dim.get<long long>() < 1)
        throw input_error("manifest field 'dimension': expected a positive integer");
    const auto n = static_cast<std::size_t>(dim.get<long long>());

    const auto& vars = detail::require_field(doc, "variables");
    if (!vars.is_array() || vars.size() != n)
        throw input_error("manifest field 'variables': expected " + std::to_string(n) + " names");
    std::vector<std::string> names;
    for (const auto& v : vars) {
        if (!v.is_string())
            throw input_error("manifest field 'variables': names must be strings");
        names.push_back(v.get<std::string>());
    }

    Manifest m;
    m.source = source;
    m.digest = fnv1a64(text);
    try {
        m.context = make_context(names);
    } catch (const input_error& e) {
        throw input_error(std::string("manifest field 'variables': ") + e.what());
    }
    const auto& ctx = m.context;

    if (doc.contains("tensor")) {
        const auto& t = doc.at("tensor");
        if (!t.is_string())
            throw input_error("manifest field 'tensor': expected a multivector literal");
        try {
            m.tensor = parse_multivector(t.get<std::string>(), ctx);
        } catch (const std::invalid_argument& e) {
            throw input_error(std::string("manifest field 'tensor': ") + e.what());
        }
    }

    const bool dynamics_required = !m.tensor;
    if (dynamics_required || doc.contains("gamma"))
        m.gamma = VectorField<Polynomial>(ctx,
                                          detail::parse_expression_list(detail::require_field(doc, "gamma"), ctx,
                                                                        "gamma", n));

    if (dynamics_required || doc.contains("symmetries")) {
        const auto& syms = detail::require_field(doc, "symmetries");
        if (!syms.is_array())
            throw input_error("manifest field 'symmetries': expected an array");
        for (std::size_t i = 0; i < syms.size(); ++i) {
            const std::string field = "symmetries[" + std::to_string(i) + "]";
            const auto& s = syms[i];
            if (!s.is_object())
                throw input_error("manifest field '" + field + "': expected {name, coeffs}");
            const auto& name = detail::require_field(s, "name");
            if (!name.is_string() || name.get<std::string>().empty())
                throw input_error("manifest field '" + field + ".name': expected a nonempty string");
            for (const auto& prev : m.symmetries)
                if (prev.name == name.get<std::string>())
                    throw input_error("manifest field '" + field + ".name': duplicate name '" + prev.name + "'");
            auto coeffs = detail::parse_expression_list(detail::require_field(s, "coeffs"), ctx, field + ".coeffs", n);
            m.symmetries.push_back({name.get<std::string>(), VectorField<Polynomial>(ctx, std::move(coeffs))});
        }
    }

    if (dynamics_required || doc.contains("integrals"))
        m.integrals = detail::parse_expression_list(detail::require_field(doc, "integrals"), ctx, "integrals",
                                                    std::nullopt);

    if (doc.contains("theorem")) {
        const auto& t = doc.at("theorem");
        if (!t.is_number_integer() || t.get<int>() < 1 || t.get<int>() > 3)
            throw input_error("manifest field 'theorem': expected 1, 2 or 3");
        m.theorem = t.get<int>();
    }

    if (doc.contains("options")) {
        const auto& o = doc.at("options");
        if (!o.is_object())
            throw input_error("manifest field 'options': expected an object");
        for (const auto& [key, value] : o.items()) {
            if (key == "mode") {
                if (!value.is_string())
                    throw input_error("manifest field 'options.mode': expected a string");
                m.options.mode = parse_mode(value.get<std::string>());
            } else if (key == "numeric_trials") {
                if (!value.is_number_unsigned())
                    throw input_error("manifest field 'options.numeric_trials': expected a nonnegative integer");
                m.options.numeric_trials = value.get<std::size_t>();
            } else if (key == "seed") {
                if (!value.is_number_unsigned())
                    throw input_error("manifest field 'options.seed': expected a nonnegative integer");
                m.options.seed = value.get<std::uint64_t>();
            } else if (key == "relaxed_commutators") {
                if (!value.is_boolean())
                    throw input_error("manifest field 'options.relaxed_commutators': expected a boolean");
                m.options.relaxed_commutators = value.get<bool>();
            } else {
                throw input_error("manifest field 'options." + key + "': unknown option");
            }
        }
    }
    return m;
}

inline Manifest parse_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw input_error("cannot read manifest '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest_text(buf.str(), path);
}

}  // namespace gpoisson
