#pragma once

// m-ary brackets and identity/structure predicates on multivector fields.

#include <algorithm>
#include <chrono>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gpoisson/calculus.hpp"
#include "gpoisson/exterior.hpp"

namespace gpoisson {

/// Where a check failed and what the nonzero residual was.
struct Witness {
    std::string location;
    std::string value;

    std::string to_string() const { return location.empty() ? value : location + ": " + value; }
    friend bool operator==(const Witness&, const Witness&) = default;
};

/// Outcome of one named check. passed == !witness.has_value().
/// Non-required checks are reported but do not decide the overall verdict.
struct CheckResult {
    std::string name;
    bool passed = true;
    std::optional<Witness> witness;
    std::chrono::nanoseconds elapsed{0};
    bool required = true;
    std::string note;  // free-form detail, e.g. redrawn sample points

    static CheckResult pass(std::string name) {
        CheckResult r;
        r.name = std::move(name);
        return r;
    }
    static CheckResult fail(std::string name, Witness w) {
        CheckResult r;
        r.name = std::move(name);
        r.passed = false;
        r.witness = std::move(w);
        return r;
    }
};

/// Prints at most `limit` terms of a residual in literal syntax.
template <class V>
std::string residual_literal(const V& value, std::size_t limit = 6) {
    const auto mv = [&] {
        if constexpr (requires { value.to_multivector(); })
            return value.to_multivector();
        else
            return value;
    }();
    if (mv.size() <= limit)
        return mv.to_string();
    auto head = std::decay_t<decltype(mv)>(mv.context(), mv.degree());
    std::size_t k = 0;
    for (const auto& [m, c] : mv.terms()) {
        if (k++ == limit)
            break;
        head.add_term(m, c);
    }
    return head.to_string() + " + ... (" + std::to_string(mv.size()) + " terms)";
}

namespace detail {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    std::chrono::nanoseconds elapsed() const {
        return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start_);
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline std::string pair_label(std::size_t u, std::size_t v) {
    return "(dx" + std::to_string(u + 1) + ", dx" + std::to_string(v + 1) + ")";
}

inline int permutation_sign(const std::vector<std::size_t>& perm) {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j])
                ++inversions;
    return (inversions % 2) ? -1 : 1;
}

}  // namespace detail

/// {f_1, ..., f_m} = N(df_1, ..., df_m).
template <Coefficient C>
C m_bracket(const MultiVector<C>& n, const std::vector<C>& fs) {
    if (fs.size() != n.degree())
        throw input_error("m_bracket: expected " + std::to_string(n.degree()) + " functions, got " +
                          std::to_string(fs.size()));
    MultiVector<C> r = n;
    for (const auto& f : fs) {
        require_same_context(n.context(), f.context(), "m_bracket");
        if (r.is_zero())
            return C::zero(n.context());
        r = interior_product(differential(f), r);
    }
    return r.coefficient(BasisMask{0});
}

enum class Slot { first, last };

/// The vector field F with F(g) = N(dg, df_1, ..., df_{m-1}) (Slot::first) or
/// F(g) = N(df_1, ..., df_{m-1}, dg) (Slot::last).
template <Coefficient C>
VectorField<C> hamiltonian_field(const MultiVector<C>& n, const std::vector<C>& fs, Slot slot) {
    if (n.degree() == 0 || fs.size() + 1 != n.degree())
        throw input_error("hamiltonian_field: expected " + std::to_string(n.degree() == 0 ? 0 : n.degree() - 1) +
                          " functions, got " + std::to_string(fs.size()));
    std::vector<OneForm<C>> dfs;
    for (const auto& f : fs) {
        require_same_context(n.context(), f.context(), "hamiltonian_field");
        dfs.push_back(differential(f));
    }
    if (slot == Slot::last) {
        MultiVector<C> r = n;
        for (const auto& df : dfs)
            r = interior_product(df, r);
        return r.to_vector_field();
    }
    VectorField<C> out(n.context());
    for (std::size_t u = 0; u < n.context()->dimension(); ++u) {
        MultiVector<C> r = contract_coordinate(u, n);
        for (const auto& df : dfs) {
            if (r.is_zero())
                break;
            r = interior_product(df, r);
        }
        out[u] = r.coefficient(BasisMask{0});
    }
    return out;
}

/// Left side minus right side of the fundamental identity
/// {f_1..f_{m-1}, {g_1..g_m}} = sum_j {g_1, .., {f_1..f_{m-1}, g_j}, .., g_m}.
template <Coefficient C>
C fi_residual(const MultiVector<C>& n, const std::vector<C>& fs, const std::vector<C>& gs) {
    const std::size_t m = n.degree();
    if (m == 0 || fs.size() + 1 != m || gs.size() != m)
        throw input_error("fi_residual: expected " + std::to_string(m == 0 ? 0 : m - 1) + " and " +
                          std::to_string(m) + " functions");
    auto outer = fs;
    outer.push_back(m_bracket(n, gs));
    C residual = m_bracket(n, outer);
    for (std::size_t j = 0; j < m; ++j) {
        auto inner = fs;
        inner.push_back(gs[j]);
        auto replaced = gs;
        replaced[j] = m_bracket(n, inner);
        residual = residual - m_bracket(n, replaced);
    }
    return residual;
}

enum class GjiMode { raw, shuffle };

/// Generalized Jacobi sum over S_{2m-1} of sign(s) {{f_s1..f_sm}, f_s(m+1)..f_s(2m-1)}.
/// Raw mode enumerates every permutation (m <= 3); shuffle mode sums over
/// (m, m-1)-shuffles and multiplies by m!(m-1)!.
template <Coefficient C>
C gji_residual(const MultiVector<C>& n, const std::vector<C>& fs, GjiMode mode) {
    const std::size_t m = n.degree();
    if (m == 0 || fs.size() != 2 * m - 1)
        throw input_error("gji_residual: expected " + std::to_string(m == 0 ? 1 : 2 * m - 1) + " functions, got " +
                          std::to_string(fs.size()));
    const auto& ctx = n.context();
    C total = C::zero(ctx);
    auto nested = [&](const std::vector<std::size_t>& order) {
        std::vector<C> inner, outer;
        for (std::size_t k = 0; k < m; ++k)
            inner.push_back(fs[order[k]]);
        outer.push_back(m_bracket(n, inner));
        for (std::size_t k = m; k < order.size(); ++k)
            outer.push_back(fs[order[k]]);
        return m_bracket(n, outer);
    };

    std::vector<std::size_t> order(fs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (mode == GjiMode::raw) {
        if (m > 3)
            throw input_error("gji_residual: raw mode is limited to m <= 3");
        do {
            const C term = nested(order);
            total = detail::permutation_sign(order) > 0 ? total + term : total - term;
        } while (std::next_permutation(order.begin(), order.end()));
        return total;
    }

    // Shuffles: choose the first block as an increasing m-subset.
    std::vector<bool> chosen(fs.size(), false);
    std::fill(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(m), true);
    do {
        std::vector<std::size_t> shuffle;
        for (std::size_t i = 0; i < fs.size(); ++i)
            if (chosen[i])
                shuffle.push_back(i);
        for (std::size_t i = 0; i < fs.size(); ++i)
            if (!chosen[i])
                shuffle.push_back(i);
        const C term = nested(shuffle);
        total = detail::permutation_sign(shuffle) > 0 ? total + term : total - term;
    } while (std::prev_permutation(chosen.begin(), chosen.end()));

    Scalar factor = 1;
    for (std::size_t k = 2; k <= m; ++k)
        factor *= static_cast<unsigned long>(k);
    for (std::size_t k = 2; k < m; ++k)
        factor *= static_cast<unsigned long>(k);
    return total * factor;
}

/// (i(dx^u)N) ^ (i(dx^v)N) = 0 for every ordered basis pair (u, v).
template <Coefficient C>
CheckResult plucker_A_check(const MultiVector<C>& n) {
    detail::Stopwatch clock;
    if (n.degree() == 0)
        throw degree_error("plucker_A_check needs degree >= 1");
    const std::size_t dim = n.context()->dimension();
    std::vector<MultiVector<C>> contractions;
    contractions.reserve(dim);
    for (std::size_t u = 0; u < dim; ++u)
        contractions.push_back(contract_coordinate(u, n));
    CheckResult result = CheckResult::pass("plucker_A");
    for (std::size_t u = 0; u < dim && result.passed; ++u) {
        if (contractions[u].is_zero())
            continue;
        for (std::size_t v = 0; v < dim; ++v) {
            const auto w = wedge(contractions[u], contractions[v]);
            if (!w.is_zero()) {
                result = CheckResult::fail("plucker_A", {detail::pair_label(u, v), residual_literal(w)});
                break;
            }
        }
    }
    result.elapsed = clock.elapsed();
    return result;
}

/// sum_u (i(dx^u)N) ^ (L_{d/dx^u} N), the residual of condition B.
template <Coefficient C>
MultiVector<C> condition_B_residual(const MultiVector<C>& n) {
    if (n.degree() == 0)
        throw degree_error("condition B needs degree >= 1");
    const auto& ctx = n.context();
    MultiVector<C> sum(ctx, 2 * n.degree() - 1);
    for (std::size_t u = 0; u < ctx->dimension(); ++u) {
        const auto contracted = contract_coordinate(u, n);
        if (contracted.is_zero())
            continue;
        sum += wedge(contracted, lie_derivative(VectorField<C>::basis(ctx, u), n));
    }
    return sum;
}

template <Coefficient C>
CheckResult condition_B_check(const MultiVector<C>& n) {
    detail::Stopwatch clock;
    const auto residual = condition_B_residual(n);
    CheckResult result = residual.is_zero()
                             ? CheckResult::pass("condition_B")
                             : CheckResult::fail("condition_B", {"sum_u i(dx^u)N ^ L_u N", residual_literal(residual)});
    result.elapsed = clock.elapsed();
    return result;
}

template <Coefficient C>
CheckResult schouten_self_check(const MultiVector<C>& n) {
    detail::Stopwatch clock;
    const auto s = schouten(n, n);
    CheckResult result =
        s.is_zero() ? CheckResult::pass("schouten_self") : CheckResult::fail("schouten_self", {"[N,N]", residual_literal(s)});
    result.elapsed = clock.elapsed();
    return result;
}

/// Even degree: [N,N] = 0. Odd degree: conditions A and B.
template <Coefficient C>
CheckResult is_generalized_poisson(const MultiVector<C>& n) {
    detail::Stopwatch clock;
    if (n.degree() < 2)
        throw degree_error("is_generalized_poisson needs degree >= 2");
    CheckResult result;
    if (n.degree() % 2 == 0) {
        result = schouten_self_check(n);
    } else {
        result = plucker_A_check(n);
        if (result.passed)
            result = condition_B_check(n);
        if (!result.passed)
            result.witness->location = result.name + " " + result.witness->location;
    }
    result.name = "generalized_poisson";
    result.elapsed = clock.elapsed();
    return result;
}

/// Pointwise Plucker test: (i(dx^{u_{m-1}})...i(dx^{u_1})N) ^ N = 0 for every
/// increasing (m-1)-tuple. Passing means N is decomposable wherever N != 0.
template <Coefficient C>
CheckResult is_decomposable_pointwise(const MultiVector<C>& n) {
    detail::Stopwatch clock;
    const std::size_t m = n.degree();
    if (m == 0)
        throw degree_error("is_decomposable_pointwise needs degree >= 1");
    const std::size_t dim = n.context()->dimension();
    CheckResult result = CheckResult::pass("decomposable");
    std::vector<bool> chosen(dim, false);
    std::fill(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(m - 1), true);
    do {
        MultiVector<C> r = n;
        std::string label = "(";
        bool first = true;
        for (std::size_t u = 0; u < dim && !r.is_zero(); ++u) {
            if (!chosen[u])
                continue;
            r = contract_coordinate(u, r);
            label += (first ? "dx" : ", dx") + std::to_string(u + 1);
            first = false;
        }
        if (r.is_zero())
            continue;
        const auto w = wedge(r, n);
        if (!w.is_zero()) {
            result = CheckResult::fail("decomposable", {label + ")", residual_literal(w)});
            break;
        }
    } while (std::prev_permutation(chosen.begin(), chosen.end()));
    result.elapsed = clock.elapsed();
    return result;
}

}  // namespace gpoisson
