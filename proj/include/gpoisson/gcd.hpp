#pragma once

// Exact division and gcd in Q[x1..xn].
//
// The gcd is computed recursively on the highest variable present: contents
// are split off as gcds of coefficients (which involve strictly fewer
// variables) and the primitive parts go through a primitive pseudo-remainder
// sequence. Results are normalized to leading coefficient 1 under grlex.

#include <map>
#include <optional>

#include "gpoisson/polynomial.hpp"

namespace gpoisson {

/// a / b when b divides a exactly, nullopt otherwise.
inline std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b) {
    require_same_context(a.context(), b.context(), "divide");
    if (b.is_zero())
        throw division_by_zero("division by the zero polynomial");
    const auto& ctx = a.context();
    const std::size_t n = ctx->dimension();
    const auto& [lead_b, lc_b] = b.leading();
    Polynomial quotient(ctx);
    Polynomial rest = a;
    Monomial m(n);
    while (!rest.is_zero()) {
        const auto& [lead_r, lc_r] = rest.leading();
        for (std::size_t i = 0; i < n; ++i) {
            if (lead_r[i] < lead_b[i])
                return std::nullopt;
            m[i] = lead_r[i] - lead_b[i];
        }
        const Polynomial t = Polynomial::term(ctx, m, lc_r / lc_b);
        quotient += t;
        rest -= t * b;
    }
    return quotient;
}

/// Scales p so that its grlex-leading coefficient is 1. Zero stays zero.
inline Polynomial make_monic(const Polynomial& p) {
    if (p.is_zero())
        return p;
    return p * Scalar(1 / p.leading_coefficient());
}

namespace detail {

using Univariate = std::map<std::uint32_t, Polynomial>;

inline Univariate to_univariate(const Polynomial& p, std::size_t var) {
    Univariate u;
    for (const auto& [m, c] : p.terms()) {
        Monomial rest = m;
        const std::uint32_t d = rest[var];
        rest[var] = 0;
        auto it = u.try_emplace(d, p.context()).first;
        it->second += Polynomial::term(p.context(), std::move(rest), c);
    }
    return u;
}

inline Polynomial from_univariate(const Univariate& u, const ContextPtr& ctx, std::size_t var) {
    Polynomial r(ctx);
    for (const auto& [d, coeff] : u) {
        Monomial shift(ctx->dimension(), 0);
        shift[var] = d;
        r += coeff * Polynomial::term(ctx, std::move(shift), Scalar(1));
    }
    return r;
}

inline std::uint32_t degree(const Univariate& u) { return u.empty() ? 0 : u.rbegin()->first; }

inline void prune(Univariate& u) {
    for (auto it = u.begin(); it != u.end();) {
        if (it->second.is_zero())
            it = u.erase(it);
        else
            ++it;
    }
}

// Sparse pseudo-remainder: repeatedly cancels the top coefficient of a
// against b, scaling a by lc(b) each time.
inline Univariate pseudo_remainder(Univariate a, const Univariate& b, const ContextPtr& ctx) {
    const std::uint32_t db = degree(b);
    const Polynomial& lc_b = b.rbegin()->second;
    while (!a.empty() && degree(a) >= db) {
        const std::uint32_t da = degree(a);
        const Polynomial lc_a = a.rbegin()->second;
        for (auto& [d, c] : a)
            c = c * lc_b;
        for (const auto& [d, c] : b) {
            auto it = a.try_emplace(d + da - db, ctx).first;
            it->second -= lc_a * c;
        }
        prune(a);
    }
    return a;
}

}  // namespace detail

inline Polynomial gcd(const Polynomial& a, const Polynomial& b);

namespace detail {

inline Polynomial content(const Univariate& u, const ContextPtr& ctx) {
    Polynomial g(ctx);
    for (const auto& [d, c] : u) {
        g = gcd(g, c);
        if (g.is_constant() && !g.is_zero())
            break;
    }
    return g;
}

inline Univariate primitive_part(const Univariate& u, const Polynomial& content) {
    Univariate r;
    for (const auto& [d, c] : u)
        r.emplace(d, *exact_divide(c, content));
    return r;
}

}  // namespace detail

/// Monic greatest common divisor; gcd(0, 0) = 0.
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    require_same_context(a.context(), b.context(), "gcd");
    const auto& ctx = a.context();
    if (a.is_zero())
        return make_monic(b);
    if (b.is_zero())
        return make_monic(a);
    if (a.is_constant() || b.is_constant())
        return Polynomial::one(ctx);

    std::size_t var = 0;
    bool found = false;
    for (std::size_t i = ctx->dimension(); i-- > 0;) {
        if (a.contains_variable(i) || b.contains_variable(i)) {
            var = i;
            found = true;
            break;
        }
    }
    if (!found)
        return Polynomial::one(ctx);

    auto ua = detail::to_univariate(a, var);
    auto ub = detail::to_univariate(b, var);
    if (!a.contains_variable(var))
        return gcd(a, detail::content(ub, ctx));
    if (!b.contains_variable(var))
        return gcd(detail::content(ua, ctx), b);

    const Polynomial ca = detail::content(ua, ctx);
    const Polynomial cb = detail::content(ub, ctx);
    const Polynomial c = gcd(ca, cb);
    ua = detail::primitive_part(ua, ca);
    ub = detail::primitive_part(ub, cb);
    if (detail::degree(ua) < detail::degree(ub))
        std::swap(ua, ub);

    while (true) {
        auto r = detail::pseudo_remainder(ua, ub, ctx);
        if (r.empty())
            break;
        if (detail::degree(r) == 0) {
            ub = detail::Univariate{{0, Polynomial::one(ctx)}};
            break;
        }
        ua = std::move(ub);
        ub = detail::primitive_part(r, detail::content(r, ctx));
    }
    return make_monic(c * detail::from_univariate(ub, ctx, var));
}

}  // namespace gpoisson
