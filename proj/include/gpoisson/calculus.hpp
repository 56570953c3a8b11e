#pragma once

#include <map>
#include <utility>
#include <vector>

#include "gpoisson/exterior.hpp"

namespace gpoisson {

template <Coefficient C>
VectorField<C> lie_bracket(const VectorField<C>& x, const VectorField<C>& y) {
    require_same_context(x.context(), y.context(), "lie bracket");
    VectorField<C> r(x.context());
    for (std::size_t j = 0; j < x.dimension(); ++j)
        r[j] = x.apply(y[j]) - y.apply(x[j]);
    return r;
}

namespace detail {

inline bool is_constant_coeff(const Polynomial& p) { return p.is_constant(); }
inline bool is_constant_coeff(const RationalFunction& r) {
    return r.numerator().is_constant() && r.denominator().is_constant();
}

// Vector field as its nonzero components only.
template <Coefficient C>
using SparseField = std::vector<std::pair<std::size_t, C>>;

template <Coefficient C>
SparseField<C> sparse(const VectorField<C>& v) {
    SparseField<C> s;
    for (std::size_t i = 0; i < v.dimension(); ++i)
        if (!v[i].is_zero())
            s.emplace_back(i, v[i]);
    return s;
}

template <Coefficient C>
std::map<std::size_t, C> sparse_bracket(const SparseField<C>& x, const SparseField<C>& y) {
    std::map<std::size_t, C> out;
    auto accumulate = [&out](std::size_t j, const C& c) {
        if (c.is_zero())
            return;
        auto [it, inserted] = out.try_emplace(j, c);
        if (!inserted)
            it->second = it->second + c;
    };
    // x^i d_i y^j - y^i d_i x^j
    for (const auto& [j, yj] : y) {
        if (is_constant_coeff(yj))
            continue;
        for (const auto& [i, xi] : x)
            accumulate(j, xi * yj.derivative(i));
    }
    for (const auto& [j, xj] : x) {
        if (is_constant_coeff(xj))
            continue;
        for (const auto& [i, yi] : y)
            accumulate(j, -(yi * xj.derivative(i)));
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

// Adds sum_{a,b} (-1)^{a+b} [X_a, Y_b] ^ X_1..^X_a..X_p ^ Y_1..^Y_b..Y_q to out.
template <Coefficient C>
void accumulate_decomposable(MultiVector<C>& out, const std::vector<SparseField<C>>& xs,
                             const std::vector<SparseField<C>>& ys) {
    std::vector<std::pair<BasisMask, C>> partial, next;
    for (std::size_t a = 0; a < xs.size(); ++a) {
        for (std::size_t b = 0; b < ys.size(); ++b) {
            const auto bracket = sparse_bracket(xs[a], ys[b]);
            if (bracket.empty())
                continue;
            partial.clear();
            for (const auto& [k, c] : bracket)
                partial.emplace_back(mask::bit(k), ((a + b) % 2 == 0) ? c : -c);
            auto wedge_in = [&](const SparseField<C>& f) {
                next.clear();
                for (const auto& [m, c] : partial) {
                    for (const auto& [i, fi] : f) {
                        if (m & mask::bit(i))
                            continue;
                        const C prod = c * fi;
                        next.emplace_back(m | mask::bit(i),
                                          (std::popcount(mask::above(m, i)) & 1) ? -prod : prod);
                    }
                }
                std::swap(partial, next);
            };
            for (std::size_t k = 0; k < xs.size() && !partial.empty(); ++k)
                if (k != a)
                    wedge_in(xs[k]);
            for (std::size_t k = 0; k < ys.size() && !partial.empty(); ++k)
                if (k != b)
                    wedge_in(ys[k]);
            for (const auto& [m, c] : partial)
                out.add_term(m, c);
        }
    }
}

// f d_{i1} ^ d_{i2} ^ ... as the factor list (f d_{i1}, d_{i2}, ...).
template <Coefficient C>
std::vector<SparseField<C>> factor_term(BasisMask m, const C& f, const C& one) {
    std::vector<SparseField<C>> fs;
    bool first = true;
    for (auto i : mask::indices(m)) {
        fs.push_back(SparseField<C>{{i, first ? f : one}});
        first = false;
    }
    return fs;
}

}  // namespace detail

/// Schouten bracket of decomposable multivectors X_1^...^X_p and Y_1^...^Y_q
/// (p, q >= 1) by the double-sum formula.
template <Coefficient C>
MultiVector<C> schouten_decomposable(const std::vector<VectorField<C>>& xs, const std::vector<VectorField<C>>& ys) {
    if (xs.empty() || ys.empty())
        throw degree_error("schouten_decomposable needs at least one factor on each side");
    const auto& ctx = xs.front().context();
    for (const auto& v : xs)
        require_same_context(ctx, v.context(), "schouten");
    for (const auto& v : ys)
        require_same_context(ctx, v.context(), "schouten");
    MultiVector<C> out(ctx, xs.size() + ys.size() - 1);
    if (out.degree() > ctx->dimension())
        return out;
    std::vector<detail::SparseField<C>> sx, sy;
    for (const auto& v : xs)
        sx.push_back(detail::sparse(v));
    for (const auto& v : ys)
        sy.push_back(detail::sparse(v));
    detail::accumulate_decomposable(out, sx, sy);
    return out;
}

/// Schouten-Nijenhuis bracket [P, Q], degree p + q - 1.
///
/// Each term f d_{i1}^...^d_{ip} is treated as (f d_{i1})^d_{i2}^...^d_{ip}
/// and pairs of terms go through the decomposable double sum. Degree-0
/// arguments: [f, g] = 0, [P, g] = (-1)^(p+1) i(dg)P, [f, Q] = -i(df)Q,
/// so that [X, g] = X(g) for a vector field X.
template <Coefficient C>
MultiVector<C> schouten(const MultiVector<C>& p, const MultiVector<C>& q) {
    require_same_context(p.context(), q.context(), "schouten");
    const auto& ctx = p.context();
    const std::size_t dp = p.degree();
    const std::size_t dq = q.degree();
    if (dp == 0 && dq == 0)
        return MultiVector<C>(ctx, 0);
    MultiVector<C> out(ctx, dp + dq - 1);
    if (out.degree() > ctx->dimension() || p.is_zero() || q.is_zero())
        return out;

    if (dq == 0) {
        const auto dg = differential(q.coefficient(BasisMask{0}));
        const auto r = interior_product(dg, p);
        return (dp % 2 == 1) ? r : -r;
    }
    if (dp == 0)
        return -interior_product(differential(p.coefficient(BasisMask{0})), q);

    const C one = C::constant(ctx, Scalar(1));
    std::vector<std::vector<detail::SparseField<C>>> qfactors;
    qfactors.reserve(q.size());
    for (const auto& [mq, g] : q.terms())
        qfactors.push_back(detail::factor_term(mq, g, one));
    for (const auto& [mp, f] : p.terms()) {
        const auto pf = detail::factor_term(mp, f, one);
        for (const auto& qf : qfactors)
            detail::accumulate_decomposable(out, pf, qf);
    }
    return out;
}

template <Coefficient A, Coefficient B>
    requires(!std::same_as<A, B>)
MultiVector<promoted_t<A, B>> schouten(const MultiVector<A>& p, const MultiVector<B>& q) {
    using P = promoted_t<A, B>;
    return schouten(coefficient_cast<P>(p), coefficient_cast<P>(q));
}

/// L_X N = [X, N].
template <Coefficient C>
MultiVector<C> lie_derivative(const VectorField<C>& x, const MultiVector<C>& n) {
    return schouten(x.to_multivector(), n);
}

}  // namespace gpoisson
