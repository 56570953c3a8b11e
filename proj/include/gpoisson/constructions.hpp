#pragma once

// Builders for non-decomposable generalized Poisson tensors from a dynamical
// field Gamma, commuting symmetries X_1..X_s and first integrals h_k.
//
//   s-symmetry tensor (s >= 5):
//     N = Gamma^X_1^..^X_{s-4}^X_{s-3}^X_{s-2} + Gamma^X_1^..^X_{s-4}^X_{s-1}^X_s
//     N(., dh_1, .., dh_{s-2}) = h~ Gamma,  h~ = det M_1 + det M_2
//   bivector (s = 3, one integral h):
//     N = Gamma^X_1 + Gamma^X_3 + X_1^X_2,  N(., dh) = X_3(h) Gamma
//   reduced family: drop X_i (i <= s-4) from both summands and h_i from the
//   integrals.

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gpoisson/calculus.hpp"
#include "gpoisson/checks.hpp"
#include "gpoisson/exterior.hpp"
#include "gpoisson/gcd.hpp"

namespace gpoisson {

enum class ValidationMode { strict, warn };

enum class Theorem { symmetric = 1, bivector = 2, family = 3 };

struct ProblemData {
    ContextPtr context;
    VectorField<Polynomial> gamma;
    std::vector<VectorField<Polynomial>> symmetries;
    std::vector<Polynomial> integrals;
    std::vector<std::string> symmetry_names;  // defaults to X1..Xs
    std::vector<std::string> integral_names;  // defaults to h1..hk
    ValidationMode mode = ValidationMode::strict;
    bool relaxed_commutators = false;

    ProblemData(ContextPtr ctx, VectorField<Polynomial> g, std::vector<VectorField<Polynomial>> xs,
                std::vector<Polynomial> hs)
        : context(std::move(ctx)), gamma(std::move(g)), symmetries(std::move(xs)), integrals(std::move(hs)) {
        require_same_context(context, gamma.context(), "problem data");
        for (const auto& x : symmetries)
            require_same_context(context, x.context(), "problem data");
        for (const auto& h : integrals)
            require_same_context(context, h.context(), "problem data");
    }

    std::string symmetry_name(std::size_t i) const {
        return i < symmetry_names.size() ? symmetry_names[i] : "X" + std::to_string(i + 1);
    }
    std::string integral_name(std::size_t k) const {
        return k < integral_names.size() ? integral_names[k] : "h" + std::to_string(k + 1);
    }
};

struct ConstructionOutput {
    MultiVector<Polynomial> tensor;
    Polynomial multiplier;
    std::optional<MultiVector<RationalFunction>> scaled;
    std::optional<std::size_t> dropped_index;  // 1-based, family members only
    std::vector<CheckResult> hypotheses;
    std::vector<CheckResult> checks;

    bool passed() const {
        for (const auto& group : {&hypotheses, &checks})
            for (const auto& c : *group)
                if (c.required && !c.passed)
                    return false;
        return true;
    }
};

/// Strict-mode hypothesis failure carrying every check that was run.
class hypothesis_error : public validation_error {
public:
    hypothesis_error(const std::string& what, std::vector<CheckResult> results)
        : validation_error(what), results_(std::move(results)) {}
    const std::vector<CheckResult>& results() const noexcept { return results_; }

private:
    std::vector<CheckResult> results_;
};

/// Sign in N(., dh_1, .., dh_{m-1}) = eps * multiplier * Gamma when the free
/// slot is the first one. Pinned by the coordinate desk case.
inline constexpr int quasi_hamiltonian_sign = +1;

// ---------------------------------------------------------------------------
// Linear algebra helpers

/// Determinant by fraction-free (Bareiss) elimination.
inline Polynomial determinant(std::vector<std::vector<Polynomial>> m, const ContextPtr& ctx) {
    const std::size_t k = m.size();
    if (k == 0)
        return Polynomial::one(ctx);
    for (const auto& row : m)
        if (row.size() != k)
            throw input_error("determinant of a non-square matrix");
    int sign = 1;
    Polynomial previous = Polynomial::one(ctx);
    for (std::size_t i = 0; i + 1 < k; ++i) {
        if (m[i][i].is_zero()) {
            std::size_t r = i + 1;
            while (r < k && m[r][i].is_zero())
                ++r;
            if (r == k)
                return Polynomial::zero(ctx);
            std::swap(m[i], m[r]);
            sign = -sign;
        }
        for (std::size_t r = i + 1; r < k; ++r) {
            for (std::size_t c = i + 1; c < k; ++c) {
                const Polynomial numerator = m[r][c] * m[i][i] - m[r][i] * m[i][c];
                m[r][c] = *exact_divide(numerator, previous);
            }
        }
        previous = m[i][i];
    }
    return sign > 0 ? m[k - 1][k - 1] : -m[k - 1][k - 1];
}

/// Whether v lies in the span of `basis` over the rational-function field.
inline bool in_span(const std::vector<VectorField<Polynomial>>& basis, const VectorField<Polynomial>& v) {
    const auto& ctx = v.context();
    const std::size_t n = ctx->dimension();
    const std::size_t cols = basis.size();
    std::vector<std::vector<RationalFunction>> a(n, std::vector<RationalFunction>(cols + 1, RationalFunction(ctx)));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < cols; ++c)
            a[r][c] = RationalFunction(basis[c][r]);
        a[r][cols] = RationalFunction(v[r]);
    }
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < n; ++c) {
        std::size_t p = row;
        while (p < n && a[p][c].is_zero())
            ++p;
        if (p == n)
            continue;
        std::swap(a[row], a[p]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == row || a[r][c].is_zero())
                continue;
            const RationalFunction factor = a[r][c] / a[row][c];
            for (std::size_t k = c; k <= cols; ++k)
                a[r][k] = a[r][k] - factor * a[row][k];
        }
        ++row;
    }
    for (std::size_t r = row; r < n; ++r)
        if (!a[r][cols].is_zero())
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Multipliers and tensors

namespace detail {

inline std::vector<std::size_t> without(std::vector<std::size_t> idx, std::optional<std::size_t> drop) {
    if (drop)
        std::erase(idx, *drop);
    return idx;
}

inline std::vector<std::size_t> range(std::size_t first, std::size_t last) {
    std::vector<std::size_t> r;
    for (std::size_t i = first; i < last; ++i)
        r.push_back(i);
    return r;
}

/// Rows X_r (r in rows) applied to h_c (c in cols).
inline Polynomial action_determinant(const ProblemData& data, const std::vector<std::size_t>& rows,
                                     const std::vector<std::size_t>& cols) {
    std::vector<std::vector<Polynomial>> m;
    for (auto r : rows) {
        std::vector<Polynomial> row;
        for (auto c : cols)
            row.push_back(data.symmetries[r].apply(data.integrals[c]));
        m.push_back(std::move(row));
    }
    return determinant(std::move(m), data.context);
}

inline void require_shape(const ProblemData& data, std::size_t min_s) {
    const std::size_t s = data.symmetries.size();
    if (s < min_s)
        throw input_error("construction needs at least " + std::to_string(min_s) + " symmetries, got " +
                          std::to_string(s));
}

/// Zero-based symmetry indices of the two summands, with an optional common
/// factor removed.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> summand_rows(std::size_t s,
                                                                                   std::optional<std::size_t> drop) {
    auto first = without(range(0, s - 4), drop);
    auto second = first;
    first.push_back(s - 4);
    first.push_back(s - 3);
    second.push_back(s - 2);
    second.push_back(s - 1);
    return {first, second};
}

inline MultiVector<Polynomial> symmetric_tensor(const ProblemData& data, std::optional<std::size_t> drop) {
    const auto& ctx = data.context;
    const std::size_t s = data.symmetries.size();
    std::vector<VectorField<Polynomial>> common{data.gamma};
    for (auto i : without(range(0, s - 4), drop))
        common.push_back(data.symmetries[i]);
    const auto& x = data.symmetries;
    const auto tail = wedge(x[s - 4].to_multivector(), x[s - 3].to_multivector()) +
                      wedge(x[s - 2].to_multivector(), x[s - 1].to_multivector());
    return wedge(wedge_all(ctx, common), tail);
}

inline Polynomial symmetric_multiplier(const ProblemData& data, std::optional<std::size_t> drop) {
    const std::size_t s = data.symmetries.size();
    const auto [rows1, rows2] = summand_rows(s, drop);
    const auto cols = without(range(0, s - 2), drop);
    return action_determinant(data, rows1, cols) + action_determinant(data, rows2, cols);
}

inline CheckResult zero_check(std::string name, const std::string& location, const Polynomial& value) {
    return value.is_zero() ? CheckResult::pass(std::move(name))
                           : CheckResult::fail(std::move(name), {location, value.to_string()});
}

inline void add_commutator_checks(std::vector<CheckResult>& out, const ProblemData& data, bool relaxed,
                                  std::size_t relaxed_block) {
    const auto& xs = data.symmetries;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const std::string label = "[" + data.symmetry_name(i) + ",Gamma]";
        const auto b = lie_bracket(xs[i], data.gamma);
        out.push_back(b.is_zero() ? CheckResult::pass("commutator" + label)
                                  : CheckResult::fail("commutator" + label, {label, residual_literal(b)}));
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            const std::string label = "[" + data.symmetry_name(i) + "," + data.symmetry_name(j) + "]";
            const auto b = lie_bracket(xs[i], xs[j]);
            bool ok = b.is_zero();
            if (!ok && relaxed && i < relaxed_block && j < relaxed_block) {
                const std::vector<VectorField<Polynomial>> span(xs.begin(),
                                                                xs.begin() + static_cast<std::ptrdiff_t>(relaxed_block));
                ok = in_span(span, b);
            }
            out.push_back(ok ? CheckResult::pass("commutator" + label)
                             : CheckResult::fail("commutator" + label, {label, residual_literal(b)}));
        }
    }
}

inline MultiVector<Polynomial> gamma_wedge_symmetries(const ProblemData& data) {
    std::vector<VectorField<Polynomial>> fields{data.gamma};
    fields.insert(fields.end(), data.symmetries.begin(), data.symmetries.end());
    return wedge_all(data.context, fields);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Validation

/// One CheckResult per hypothesis. Strict mode throws hypothesis_error when
/// any fails; warn mode marks the results as not required.
inline std::vector<CheckResult> validate_inputs(const ProblemData& data, Theorem theorem) {
    std::vector<CheckResult> out;
    const std::size_t n = data.context->dimension();
    const std::size_t s = data.symmetries.size();
    const std::string counts = "s = " + std::to_string(s) + ", n = " + std::to_string(n);

    if (theorem == Theorem::bivector) {
        out.push_back(s == 3 ? CheckResult::pass("symmetry_count")
                             : CheckResult::fail("symmetry_count", {"s == 3", counts}));
    } else {
        const bool ok = s >= 5 && s + 1 <= n;
        out.push_back(ok ? CheckResult::pass("symmetry_count")
                         : CheckResult::fail("symmetry_count", {"5 <= s <= n-1", counts}));
    }

    const auto top = detail::gamma_wedge_symmetries(data);
    out.push_back(!top.is_zero() ? CheckResult::pass("independence")
                                 : CheckResult::fail("independence", {"Gamma^X1^...^Xs", "0"}));

    const std::size_t block = s >= 4 ? s - 4 : 0;
    detail::add_commutator_checks(out, data, theorem != Theorem::bivector && data.relaxed_commutators, block);

    for (std::size_t k = 0; k < data.integrals.size(); ++k) {
        const std::string label = "Gamma(" + data.integral_name(k) + ")";
        out.push_back(detail::zero_check("first_integral[" + data.integral_name(k) + "]", label,
                                         data.gamma.apply(data.integrals[k])));
    }

    if (theorem == Theorem::bivector) {
        const bool have = !data.integrals.empty();
        out.push_back(have ? CheckResult::pass("integral_count")
                           : CheckResult::fail("integral_count", {"need 1 integral", "0"}));
        if (have && s == 3) {
            const auto& h = data.integrals.front();
            for (std::size_t i = 0; i < 2; ++i) {
                const std::string label = data.symmetry_name(i) + "(" + data.integral_name(0) + ")";
                out.push_back(detail::zero_check("annihilates[" + label + "]", label, data.symmetries[i].apply(h)));
            }
            const auto x3h = data.symmetries[2].apply(h);
            out.push_back(!x3h.is_zero() ? CheckResult::pass("multiplier_nonzero")
                                         : CheckResult::fail("multiplier_nonzero",
                                                             {data.symmetry_name(2) + "(" + data.integral_name(0) + ")",
                                                              "0"}));
        }
    } else {
        const bool count_ok = s >= 2 && data.integrals.size() == s - 2;
        out.push_back(count_ok ? CheckResult::pass("integral_count")
                               : CheckResult::fail("integral_count",
                                                   {"need s-2 integrals", std::to_string(data.integrals.size())}));
        if (count_ok && s >= 4) {
            const auto h = detail::symmetric_multiplier(data, std::nullopt);
            out.push_back(!h.is_zero() ? CheckResult::pass("multiplier_nonzero")
                                       : CheckResult::fail("multiplier_nonzero", {"det M1 + det M2", "0"}));
        }
    }

    std::vector<std::string> failed;
    for (auto& c : out) {
        if (!c.passed)
            failed.push_back(c.name + (c.witness ? " (" + c.witness->to_string() + ")" : ""));
        c.required = data.mode == ValidationMode::strict;
    }
    if (!failed.empty() && data.mode == ValidationMode::strict) {
        std::ostringstream msg;
        msg << "hypotheses failed:";
        for (const auto& f : failed)
            msg << "\n  " << f;
        throw hypothesis_error(msg.str(), out);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verification

/// N(., dh_1, .., dh_{m-1}) - eps * multiplier * Gamma.
template <Coefficient C>
VectorField<C> quasi_hamiltonian_residual(const MultiVector<C>& tensor, const std::vector<C>& integrals,
                                          const VectorField<C>& gamma, const C& multiplier) {
    const auto field = hamiltonian_field(tensor, integrals, Slot::first);
    const C scaled = quasi_hamiltonian_sign > 0 ? multiplier : -multiplier;
    return field - scaled * gamma;
}

template <Coefficient C>
CheckResult verify_quasi_hamiltonian(const MultiVector<C>& tensor, const std::vector<C>& integrals,
                                     const VectorField<C>& gamma, const C& multiplier) {
    detail::Stopwatch clock;
    if (tensor.degree() == 0 || integrals.size() + 1 != tensor.degree())
        throw input_error("verify_quasi_hamiltonian: need degree-1 integrals, got " + std::to_string(integrals.size()) +
                          " for degree " + std::to_string(tensor.degree()));
    CheckResult result = CheckResult::pass("quasi_hamiltonian");
    const auto residual = quasi_hamiltonian_residual(tensor, integrals, gamma, multiplier);
    const auto drift = gamma.apply(multiplier);
    if (!residual.is_zero())
        result = CheckResult::fail("quasi_hamiltonian", {"N(., dh) - h~ Gamma", residual_literal(residual)});
    else if (!drift.is_zero())
        result = CheckResult::fail("quasi_hamiltonian", {"Gamma(multiplier)", drift.to_string()});
    result.elapsed = clock.elapsed();
    return result;
}

/// J = (1/h~) N, defined when 2s > n + 4.
inline MultiVector<RationalFunction> scale_to_J(const ConstructionOutput& output, std::size_t n, std::size_t s) {
    if (!(2 * s > n + 4))
        throw inapplicable_error("rescaling needs 2s > n + 4 (s = " + std::to_string(s) + ", n = " + std::to_string(n) +
                                 ")");
    if (output.multiplier.is_zero())
        throw division_by_zero("rescaling by a zero multiplier");
    const RationalFunction inverse(Polynomial::one(output.multiplier.context()), output.multiplier);
    return inverse * coefficient_cast<RationalFunction>(output.tensor);
}

namespace detail {

inline CheckResult non_decomposable_report(const MultiVector<Polynomial>& tensor) {
    auto d = is_decomposable_pointwise(tensor);
    CheckResult r = d.passed ? CheckResult::fail("non_decomposable", {"", "Plucker relations hold pointwise"})
                             : CheckResult::pass("non_decomposable");
    r.elapsed = d.elapsed;
    r.required = false;
    return r;
}

inline CheckResult multiplier_first_integral(const ProblemData& data, const Polynomial& h) {
    detail::Stopwatch clock;
    auto r = zero_check("multiplier_first_integral", "Gamma(multiplier)", data.gamma.apply(h));
    r.elapsed = clock.elapsed();
    return r;
}

inline CheckResult lie_invariance(const ProblemData& data, const MultiVector<Polynomial>& tensor) {
    detail::Stopwatch clock;
    const auto l = lie_derivative(data.gamma, tensor);
    auto r = l.is_zero() ? CheckResult::pass("lie_derivative_gamma")
                         : CheckResult::fail("lie_derivative_gamma", {"L_Gamma N", residual_literal(l)});
    r.elapsed = clock.elapsed();
    return r;
}

inline std::vector<std::size_t> all_but(std::size_t count, std::optional<std::size_t> drop) {
    return without(range(0, count), drop);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Builders

/// s-symmetry construction; tensor degree s - 1.
inline ConstructionOutput build_theorem1(const ProblemData& data) {
    detail::require_shape(data, 4);
    const std::size_t s = data.symmetries.size();
    if (data.integrals.size() != s - 2)
        throw input_error("construction needs s-2 = " + std::to_string(s - 2) + " integrals, got " +
                          std::to_string(data.integrals.size()));
    auto hypotheses = validate_inputs(data, Theorem::symmetric);

    ConstructionOutput out{detail::symmetric_tensor(data, std::nullopt),
                           detail::symmetric_multiplier(data, std::nullopt), std::nullopt, std::nullopt,
                           std::move(hypotheses), {}};
    if (out.multiplier.is_zero())
        throw degenerate_construction_error("multiplier det M1 + det M2 vanishes identically");

    out.checks.push_back(is_generalized_poisson(out.tensor));
    out.checks.push_back(detail::non_decomposable_report(out.tensor));
    out.checks.push_back(detail::multiplier_first_integral(data, out.multiplier));
    out.checks.push_back(verify_quasi_hamiltonian(out.tensor, data.integrals, data.gamma, out.multiplier));
    out.checks.push_back(detail::lie_invariance(data, out.tensor));

    const std::size_t n = data.context->dimension();
    if (2 * s > n + 4) {
        out.scaled = scale_to_J(out, n, s);
        auto gp = is_generalized_poisson(*out.scaled);
        gp.name = "scaled_generalized_poisson";
        out.checks.push_back(gp);

        detail::Stopwatch clock;
        std::vector<RationalFunction> hs(data.integrals.begin(), data.integrals.end());
        const auto gamma = coefficient_cast<RationalFunction>(data.gamma);
        const auto field = hamiltonian_field(*out.scaled, hs, Slot::first);
        const auto diff = field - gamma;
        CheckResult ham = diff.is_zero() ? CheckResult::pass("scaled_hamiltonian")
                                         : CheckResult::fail("scaled_hamiltonian",
                                                             {"J(., dh) - Gamma", residual_literal(diff)});
        ham.elapsed = clock.elapsed();
        out.checks.push_back(ham);
    }
    return out;
}

/// Bivector construction from three symmetries and one integral.
inline ConstructionOutput build_theorem2(const ProblemData& data) {
    if (data.symmetries.size() != 3)
        throw input_error("bivector construction needs exactly 3 symmetries, got " +
                          std::to_string(data.symmetries.size()));
    if (data.integrals.empty())
        throw input_error("bivector construction needs an integral");
    auto hypotheses = validate_inputs(data, Theorem::bivector);

    const auto g = data.gamma.to_multivector();
    const auto& x = data.symmetries;
    auto tensor = wedge(g, x[0].to_multivector()) + wedge(g, x[2].to_multivector()) +
                  wedge(x[0].to_multivector(), x[1].to_multivector());
    const auto& h = data.integrals.front();
    auto multiplier = x[2].apply(h);
    if (multiplier.is_zero())
        throw degenerate_construction_error("multiplier X3(h) vanishes identically");

    ConstructionOutput out{std::move(tensor), std::move(multiplier), std::nullopt, std::nullopt,
                           std::move(hypotheses), {}};
    out.checks.push_back(schouten_self_check(out.tensor));
    out.checks.push_back(detail::non_decomposable_report(out.tensor));
    out.checks.push_back(detail::multiplier_first_integral(data, out.multiplier));
    out.checks.push_back(verify_quasi_hamiltonian(out.tensor, {h}, data.gamma, out.multiplier));
    return out;
}

/// Reduced family: s - 4 tensors of degree s - 2.
inline std::vector<ConstructionOutput> build_theorem3_family(const ProblemData& data) {
    detail::require_shape(data, 5);
    const std::size_t s = data.symmetries.size();
    if (data.integrals.size() != s - 2)
        throw input_error("family construction needs s-2 = " + std::to_string(s - 2) + " integrals, got " +
                          std::to_string(data.integrals.size()));
    const auto hypotheses = validate_inputs(data, Theorem::symmetric);

    std::vector<ConstructionOutput> members;
    for (std::size_t i = 0; i + 4 < s; ++i) {
        ConstructionOutput out{detail::symmetric_tensor(data, i), detail::symmetric_multiplier(data, i), std::nullopt,
                               i + 1, hypotheses, {}};
        if (out.multiplier.is_zero())
            throw degenerate_construction_error("family member " + std::to_string(i + 1) + " has a zero multiplier");
        std::vector<Polynomial> reduced;
        for (auto k : detail::all_but(data.integrals.size(), i))
            reduced.push_back(data.integrals[k]);
        if (out.tensor.degree() >= 2)
            out.checks.push_back(is_generalized_poisson(out.tensor));
        out.checks.push_back(detail::non_decomposable_report(out.tensor));
        out.checks.push_back(detail::multiplier_first_integral(data, out.multiplier));
        out.checks.push_back(verify_quasi_hamiltonian(out.tensor, reduced, data.gamma, out.multiplier));
        members.push_back(std::move(out));
    }
    return members;
}

}  // namespace gpoisson
