#pragma once

// Seeded generators and independent oracles shared by the test suites.
// Nothing here calls the library routine it is used to check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "golden.hpp"
#include "gpoisson/gpoisson.hpp"

namespace testing {

using namespace gpoisson;

// SplitMix64, independent of the library's sampler.
class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Slight modulo bias is irrelevant for test inputs.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }

private:
    std::uint64_t state_;
};

inline Polynomial x(const ContextPtr& ctx, std::size_t one_based) { return Polynomial::variable(ctx, one_based - 1); }

inline Polynomial constant(const ContextPtr& ctx, long c) { return Polynomial::constant(ctx, Scalar(c)); }

inline Polynomial rand_poly(const ContextPtr& ctx, TestRng& rng, std::uint32_t max_degree, std::size_t max_terms,
                            long coeff = 4) {
    Polynomial::Terms terms;
    const std::size_t count = 1 + rng.index(max_terms);
    for (std::size_t t = 0; t < count; ++t) {
        Monomial m(ctx->dimension(), 0);
        const auto d = rng.range(0, max_degree);
        for (std::int64_t k = 0; k < d; ++k)
            ++m[rng.index(ctx->dimension())];
        terms[m] += Scalar(rng.range(-coeff, coeff));
    }
    return Polynomial(ctx, terms);
}

inline VectorField<Polynomial> rand_field(const ContextPtr& ctx, TestRng& rng, std::uint32_t max_degree = 2,
                                          std::size_t density = 2) {
    VectorField<Polynomial> v(ctx);
    for (std::size_t k = 0; k < density; ++k)
        v[rng.index(ctx->dimension())] = rand_poly(ctx, rng, max_degree, 2);
    return v;
}

inline MultiVector<Polynomial> rand_multivector(const ContextPtr& ctx, TestRng& rng, std::size_t degree,
                                                std::size_t terms = 3, std::uint32_t max_degree = 2) {
    MultiVector<Polynomial> out(ctx, degree);
    const std::size_t n = ctx->dimension();
    for (std::size_t t = 0; t < terms; ++t) {
        std::vector<std::size_t> idx;
        while (idx.size() < degree) {
            const auto i = rng.index(n);
            if (std::find(idx.begin(), idx.end(), i) == idx.end())
                idx.push_back(i);
        }
        std::sort(idx.begin(), idx.end());
        BasisMask m = 0;
        for (auto i : idx)
            m |= BasisMask{1} << i;
        out.add_term(m, rand_poly(ctx, rng, max_degree, 2));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dense component oracle: N^{i1..im} for any index tuple, from the sorted
// components and the sign of the sorting permutation.

inline int sort_sign(std::vector<std::size_t>& idx) {
    int sign = 1;
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
            if (idx[j] > idx[j + 1]) {
                std::swap(idx[j], idx[j + 1]);
                sign = -sign;
            }
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
        if (idx[i] == idx[i + 1])
            return 0;
    return sign;
}

inline Polynomial component(const MultiVector<Polynomial>& n, std::vector<std::size_t> idx) {
    const int s = sort_sign(idx);
    if (s == 0)
        return Polynomial::zero(n.context());
    BasisMask m = 0;
    for (auto i : idx)
        m |= BasisMask{1} << i;
    const auto c = n.coefficient(m);
    return s > 0 ? c : -c;
}

/// N(df_1, ..., df_m) = sum over all index tuples of N^{i1..im} d_{i1}f_1 ... d_{im}f_m.
inline Polynomial full_contraction(const MultiVector<Polynomial>& n, const std::vector<Polynomial>& fs) {
    const std::size_t dim = n.context()->dimension();
    const std::size_t m = fs.size();
    Polynomial sum = Polynomial::zero(n.context());
    std::vector<std::size_t> idx(m, 0);
    for (;;) {
        auto c = component(n, idx);
        for (std::size_t k = 0; k < m && !c.is_zero(); ++k)
            c *= fs[k].derivative(idx[k]);
        sum += c;
        std::size_t k = 0;
        while (k < m && ++idx[k] == dim)
            idx[k++] = 0;
        if (k == m)
            break;
    }
    return sum;
}

/// Vector field whose u-th component is N(dx^u, df_1, ..., df_{m-1}).
inline VectorField<Polynomial> contraction_field(const MultiVector<Polynomial>& n, const std::vector<Polynomial>& fs) {
    const auto& ctx = n.context();
    VectorField<Polynomial> v(ctx);
    for (std::size_t u = 0; u < ctx->dimension(); ++u) {
        std::vector<Polynomial> all{Polynomial::variable(ctx, u)};
        all.insert(all.end(), fs.begin(), fs.end());
        v[u] = full_contraction(n, all);
    }
    return v;
}

// ---------------------------------------------------------------------------
// Superfunction oracle for the Schouten bracket. A multivector is a
// polynomial in odd variables xi_i; the bracket is
//   [P,Q] = sum_i P<-d/dxi_i * d_i Q - (-1)^{(p-1)(q-1)} Q<-d/dxi_i * d_i P
// with the right derivative moving xi_i to the end first.

using Super = std::map<std::vector<std::size_t>, Polynomial>;  // sorted odd monomial -> coefficient

inline Super to_super(const MultiVector<Polynomial>& n) {
    Super s;
    for (const auto& [m, c] : n.terms()) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < 64; ++i)
            if (m & (BasisMask{1} << i))
                idx.push_back(i);
        s.emplace(idx, c);
    }
    return s;
}

inline void super_add(Super& s, std::vector<std::size_t> idx, Polynomial c) {
    const int sign = sort_sign(idx);
    if (sign == 0 || c.is_zero())
        return;
    if (sign < 0)
        c = -c;
    auto [it, inserted] = s.try_emplace(idx, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            s.erase(it);
    }
}

inline Super super_mul(const Super& a, const Super& b) {
    Super out;
    for (const auto& [ia, ca] : a)
        for (const auto& [ib, cb] : b) {
            auto idx = ia;
            idx.insert(idx.end(), ib.begin(), ib.end());
            super_add(out, idx, ca * cb);
        }
    return out;
}

inline Super right_derivative(const Super& s, std::size_t i) {
    Super out;
    for (const auto& [idx, c] : s) {
        const auto it = std::find(idx.begin(), idx.end(), i);
        if (it == idx.end())
            continue;
        const auto k = static_cast<std::size_t>(it - idx.begin());
        auto rest = idx;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
        super_add(out, rest, ((idx.size() - 1 - k) % 2 == 0) ? c : -c);
    }
    return out;
}

inline Super super_dx(const Super& s, std::size_t i) {
    Super out;
    for (const auto& [idx, c] : s)
        super_add(out, idx, c.derivative(i));
    return out;
}

inline MultiVector<Polynomial> schouten_oracle(const MultiVector<Polynomial>& p, const MultiVector<Polynomial>& q) {
    const auto& ctx = p.context();
    const std::size_t dp = p.degree();
    const std::size_t dq = q.degree();
    const auto sp = to_super(p);
    const auto sq = to_super(q);
    Super total;
    const bool odd = ((dp + 1) * (dq + 1)) % 2 == 1;  // (p-1)(q-1) parity
    for (std::size_t i = 0; i < ctx->dimension(); ++i) {
        for (const auto& [idx, c] : super_mul(right_derivative(sp, i), super_dx(sq, i)))
            super_add(total, idx, c);
        for (const auto& [idx, c] : super_mul(right_derivative(sq, i), super_dx(sp, i)))
            super_add(total, idx, odd ? c : -c);
    }
    MultiVector<Polynomial> out(ctx, dp + dq >= 1 ? dp + dq - 1 : 0);
    for (const auto& [idx, c] : total) {
        BasisMask m = 0;
        for (auto i : idx)
            m |= BasisMask{1} << i;
        out.add_term(m, c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Permutation-expansion determinant.

inline Polynomial leibniz_det(const std::vector<std::vector<Polynomial>>& a, const ContextPtr& ctx) {
    const std::size_t k = a.size();
    std::vector<std::size_t> perm(k);
    for (std::size_t i = 0; i < k; ++i)
        perm[i] = i;
    Polynomial sum = Polynomial::zero(ctx);
    do {
        auto copy = perm;
        Polynomial term = Polynomial::constant(ctx, Scalar(sort_sign(copy)));
        for (std::size_t i = 0; i < k && !term.is_zero(); ++i)
            term *= a[i][perm[i]];
        sum += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum;
}

// ---------------------------------------------------------------------------
// Shared problem data.

inline VectorField<Polynomial> d(const ContextPtr& ctx, std::size_t one_based) {
    return VectorField<Polynomial>::basis(ctx, one_based - 1);
}

/// Gamma = d_n, X_i = d_i (i = 1..s), h_j = x_j (j = 1..k).
inline ProblemData desk_case(std::size_t n, std::size_t s, std::size_t k) {
    auto ctx = make_context(n);
    std::vector<VectorField<Polynomial>> xs;
    for (std::size_t i = 1; i <= s; ++i)
        xs.push_back(d(ctx, i));
    std::vector<Polynomial> hs;
    for (std::size_t j = 1; j <= k; ++j)
        hs.push_back(x(ctx, j));
    return ProblemData(ctx, d(ctx, n), xs, hs);
}

inline ProblemData golden_problem(const std::string& name) {
    return parse_manifest_text(*golden::manifest_text(name), name).problem();
}

}  // namespace testing
