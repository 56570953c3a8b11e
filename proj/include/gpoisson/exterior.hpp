#pragma once

// Sparse exterior algebra of multivector fields and one-forms over a chart.
//
// A basis multivector d_{i1} ^ ... ^ d_{im} with i1 < ... < im is stored as
// a 64-bit mask with bits i1..im set. Map order on masks is the
// lexicographic order of the corresponding index tuples.

#include <bit>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gpoisson/coefficient.hpp"
#include "gpoisson/context.hpp"
#include "gpoisson/error.hpp"
#include "gpoisson/polynomial.hpp"

namespace gpoisson {

using BasisMask = std::uint64_t;

namespace mask {

inline constexpr BasisMask bit(std::size_t i) { return BasisMask{1} << i; }

inline std::vector<std::size_t> indices(BasisMask m) {
    std::vector<std::size_t> out;
    out.reserve(std::popcount(m));
    while (m) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
        m &= m - 1;
    }
    return out;
}

inline BasisMask from_indices(const std::vector<std::size_t>& idx) {
    BasisMask m = 0;
    for (auto i : idx)
        m |= bit(i);
    return m;
}

/// Bits of m strictly above position i.
inline BasisMask above(BasisMask m, std::size_t i) { return i >= 63 ? 0 : (m >> (i + 1)); }

/// Sign of sorting the concatenation (tuple a, tuple b); a and b disjoint.
inline int wedge_sign(BasisMask a, BasisMask b) {
    unsigned inversions = 0;
    while (b) {
        const auto j = static_cast<std::size_t>(std::countr_zero(b));
        inversions += std::popcount(above(a, j));
        b &= b - 1;
    }
    return (inversions & 1u) ? -1 : 1;
}

/// Lexicographic comparison of the increasing index tuples encoded by masks.
struct TupleLess {
    bool operator()(BasisMask a, BasisMask b) const {
        if (a == b)
            return false;
        const BasisMask diff = a ^ b;
        const auto d = static_cast<std::size_t>(std::countr_zero(diff));
        const bool a_has = (a >> d) & 1u;
        // The tuple without d continues with a larger index, or ends.
        const BasisMask other = a_has ? b : a;
        const bool other_ends = above(other, d) == 0 && ((other >> d) & 1u) == 0;
        if (other_ends)
            return !a_has;  // the shorter tuple is a prefix and sorts first
        return a_has;
    }
};

}  // namespace mask

template <Coefficient C>
class MultiVector;

/// n coefficient functions; X = sum_i X^i d_i.
template <Coefficient C>
class VectorField {
public:
    explicit VectorField(ContextPtr ctx) : ctx_(std::move(ctx)), coeffs_(ctx_->dimension(), C::zero(ctx_)) {}

    VectorField(ContextPtr ctx, std::vector<C> coeffs) : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != ctx_->dimension())
            throw input_error("vector field needs " + std::to_string(ctx_->dimension()) + " coefficients, got " +
                              std::to_string(coeffs_.size()));
        for (const auto& c : coeffs_)
            require_same_context(ctx_, c.context(), "vector field");
    }

    /// Coordinate field d_i.
    static VectorField basis(ContextPtr ctx, std::size_t i) {
        VectorField v(std::move(ctx));
        v.coeffs_.at(i) = C::constant(v.ctx_, Scalar(1));
        return v;
    }

    const ContextPtr& context() const noexcept { return ctx_; }
    std::size_t dimension() const noexcept { return coeffs_.size(); }
    const C& operator[](std::size_t i) const { return coeffs_[i]; }
    C& operator[](std::size_t i) { return coeffs_[i]; }
    const std::vector<C>& coefficients() const noexcept { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero())
                return false;
        return true;
    }

    /// Directional derivative X(f).
    C apply(const C& f) const {
        require_same_context(ctx_, f.context(), "apply vector field");
        C r = C::zero(ctx_);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (!coeffs_[i].is_zero())
                r = r + coeffs_[i] * f.derivative(i);
        return r;
    }

    VectorField operator-() const {
        VectorField r = *this;
        for (auto& c : r.coeffs_)
            c = -c;
        return r;
    }
    friend VectorField operator+(VectorField a, const VectorField& b) {
        require_same_context(a.ctx_, b.ctx_, "vector field add");
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            a.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
        return a;
    }
    friend VectorField operator-(const VectorField& a, const VectorField& b) { return a + (-b); }
    friend VectorField operator*(const C& f, VectorField v) {
        for (auto& c : v.coeffs_)
            c = f * c;
        return v;
    }
    friend bool operator==(const VectorField& a, const VectorField& b) {
        return same_context(a.ctx_, b.ctx_) && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const VectorField& a, const VectorField& b) { return !(a == b); }

    MultiVector<C> to_multivector() const;
    std::string to_string() const { return to_multivector().to_string(); }

private:
    ContextPtr ctx_;
    std::vector<C> coeffs_;
};

/// n coefficients of a differential one-form sum_u a_u dx^u.
template <Coefficient C>
class OneForm {
public:
    explicit OneForm(ContextPtr ctx) : ctx_(std::move(ctx)), coeffs_(ctx_->dimension(), C::zero(ctx_)) {}

    OneForm(ContextPtr ctx, std::vector<C> coeffs) : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != ctx_->dimension())
            throw input_error("one-form needs " + std::to_string(ctx_->dimension()) + " coefficients");
        for (const auto& c : coeffs_)
            require_same_context(ctx_, c.context(), "one-form");
    }

    /// dx^u.
    static OneForm coordinate(ContextPtr ctx, std::size_t u) {
        OneForm f(std::move(ctx));
        f.coeffs_.at(u) = C::constant(f.ctx_, Scalar(1));
        return f;
    }

    const ContextPtr& context() const noexcept { return ctx_; }
    const C& operator[](std::size_t i) const { return coeffs_[i]; }
    const std::vector<C>& coefficients() const noexcept { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero())
                return false;
        return true;
    }

    friend bool operator==(const OneForm& a, const OneForm& b) {
        return same_context(a.ctx_, b.ctx_) && a.coeffs_ == b.coeffs_;
    }

private:
    ContextPtr ctx_;
    std::vector<C> coeffs_;
};

/// Homogeneous degree-m multivector field with sparse canonical terms.
template <Coefficient C>
class MultiVector {
public:
    using Terms = std::map<BasisMask, C, mask::TupleLess>;

    MultiVector(ContextPtr ctx, std::size_t degree) : ctx_(std::move(ctx)), degree_(degree) {
        if (!ctx_)
            throw input_error("multivector needs a coordinate context");
    }

    /// Degree-0 multivector holding a bare coefficient.
    static MultiVector scalar(const C& f) {
        MultiVector r(f.context(), 0);
        r.add_term(0, f);
        return r;
    }

    /// c * d_{i1} ^ ... ^ d_{im} for 0-based, not necessarily sorted indices.
    static MultiVector basis(ContextPtr ctx, const std::vector<std::size_t>& idx, const C& c) {
        MultiVector r(std::move(ctx), idx.size());
        r.add_raw(idx, c);
        return r;
    }
    static MultiVector basis(ContextPtr ctx, const std::vector<std::size_t>& idx) {
        const C one = C::constant(ctx, Scalar(1));
        return basis(std::move(ctx), idx, one);
    }

    const ContextPtr& context() const noexcept { return ctx_; }
    std::size_t degree() const noexcept { return degree_; }
    const Terms& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    C coefficient(BasisMask m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? C::zero(ctx_) : it->second;
    }
    C coefficient(const std::vector<std::size_t>& sorted_idx) const { return coefficient(mask::from_indices(sorted_idx)); }

    /// Adds c to the coefficient of an already-canonical basis element.
    void add_term(BasisMask m, const C& c) {
        if (c.is_zero())
            return;
        if (static_cast<std::size_t>(std::popcount(m)) != degree_)
            throw input_error("term degree does not match multivector degree");
        if (ctx_->dimension() < 64 && (m >> ctx_->dimension()) != 0)
            throw input_error("basis index out of range");
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second = it->second + c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    /// Adds c times the wedge of basis fields in the given (unsorted) order.
    void add_raw(const std::vector<std::size_t>& idx, const C& c) {
        if (idx.size() != degree_)
            throw input_error("basis tuple length does not match multivector degree");
        BasisMask m = 0;
        int sign = 1;
        for (auto i : idx) {
            if (i >= ctx_->dimension())
                throw input_error("basis index " + std::to_string(i + 1) + " out of range");
            if (m & mask::bit(i))
                return;  // repeated factor
            if (std::popcount(mask::above(m, i)) & 1)
                sign = -sign;
            m |= mask::bit(i);
        }
        add_term(m, sign > 0 ? c : -c);
    }

    MultiVector operator-() const {
        MultiVector r = *this;
        for (auto& [m, c] : r.terms_)
            c = -c;
        return r;
    }

    MultiVector& operator+=(const MultiVector& o) {
        check_compatible(o, "multivector add");
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }
    MultiVector& operator-=(const MultiVector& o) {
        check_compatible(o, "multivector sub");
        for (const auto& [m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }
    friend MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
    friend MultiVector operator-(MultiVector a, const MultiVector& b) { return a -= b; }

    friend MultiVector operator*(const C& f, const MultiVector& v) {
        MultiVector r(v.ctx_, v.degree_);
        if (f.is_zero())
            return r;
        for (const auto& [m, c] : v.terms_)
            r.add_term(m, f * c);
        return r;
    }
    friend MultiVector operator*(const Scalar& s, const MultiVector& v) {
        MultiVector r(v.ctx_, v.degree_);
        if (s == 0)
            return r;
        for (const auto& [m, c] : v.terms_)
            r.terms_.emplace(m, c * s);
        return r;
    }

    friend bool operator==(const MultiVector& a, const MultiVector& b) {
        return same_context(a.ctx_, b.ctx_) && a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiVector& a, const MultiVector& b) { return !(a == b); }

    /// Degree-1 multivector as a vector field.
    VectorField<C> to_vector_field() const {
        if (degree_ != 1)
            throw degree_error("only degree-1 multivectors convert to vector fields");
        VectorField<C> v(ctx_);
        for (const auto& [m, c] : terms_)
            v[static_cast<std::size_t>(std::countr_zero(m))] = c;
        return v;
    }

    /// Literal syntax: `[coeff] e<i1> ... e<im>` terms joined by ` + `; zero prints as `0`.
    std::string to_string() const {
        if (terms_.empty())
            return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first)
                out << " + ";
            first = false;
            out << '[' << c.to_string() << ']';
            for (auto i : mask::indices(m))
                out << " e" << (i + 1);
        }
        return out.str();
    }

private:
    void check_compatible(const MultiVector& o, const char* op) const {
        require_same_context(ctx_, o.ctx_, op);
        if (degree_ != o.degree_)
            throw degree_error(std::string(op) + ": degree mismatch");
    }

    ContextPtr ctx_;
    std::size_t degree_;
    Terms terms_;
};

template <Coefficient C>
MultiVector<C> VectorField<C>::to_multivector() const {
    MultiVector<C> r(ctx_, 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        r.add_term(mask::bit(i), coeffs_[i]);
    return r;
}

template <Coefficient C>
std::ostream& operator<<(std::ostream& os, const MultiVector<C>& v) {
    return os << v.to_string();
}
template <Coefficient C>
std::ostream& operator<<(std::ostream& os, const VectorField<C>& v) {
    return os << v.to_string();
}

// ---------------------------------------------------------------------------
// Coefficient promotion

template <Coefficient To, Coefficient From>
MultiVector<To> coefficient_cast(const MultiVector<From>& v) {
    if constexpr (std::same_as<To, From>) {
        return v;
    } else {
        static_assert(std::same_as<From, Polynomial>, "only Polynomial -> RationalFunction promotion is lossless");
        MultiVector<To> r(v.context(), v.degree());
        for (const auto& [m, c] : v.terms())
            r.add_term(m, To(c));
        return r;
    }
}

template <Coefficient To, Coefficient From>
VectorField<To> coefficient_cast(const VectorField<From>& v) {
    if constexpr (std::same_as<To, From>) {
        return v;
    } else {
        std::vector<To> cs;
        for (const auto& c : v.coefficients())
            cs.push_back(To(c));
        return VectorField<To>(v.context(), std::move(cs));
    }
}

template <Coefficient To, Coefficient From>
OneForm<To> coefficient_cast(const OneForm<From>& v) {
    if constexpr (std::same_as<To, From>) {
        return v;
    } else {
        std::vector<To> cs;
        for (const auto& c : v.coefficients())
            cs.push_back(To(c));
        return OneForm<To>(v.context(), std::move(cs));
    }
}

// ---------------------------------------------------------------------------
// Operations

template <Coefficient C>
using RawTerm = std::pair<std::vector<std::size_t>, C>;

/// Sorts each tuple with its permutation sign, drops tuples with repeated
/// indices, merges equal tuples and removes zeros. Indices are 0-based.
template <Coefficient C>
MultiVector<C> canonicalize(ContextPtr ctx, const std::vector<RawTerm<C>>& raw, std::size_t degree_if_empty = 0) {
    const std::size_t degree = raw.empty() ? degree_if_empty : raw.front().first.size();
    MultiVector<C> r(std::move(ctx), degree);
    for (const auto& [idx, c] : raw) {
        if (idx.size() != degree)
            throw input_error("canonicalize: mixed tuple lengths");
        r.add_raw(idx, c);
    }
    return r;
}

template <Coefficient C>
MultiVector<C> wedge(const MultiVector<C>& a, const MultiVector<C>& b) {
    require_same_context(a.context(), b.context(), "wedge");
    MultiVector<C> r(a.context(), a.degree() + b.degree());
    if (a.degree() + b.degree() > a.context()->dimension())
        return r;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            if (ma & mb)
                continue;
            const C prod = ca * cb;
            r.add_term(ma | mb, mask::wedge_sign(ma, mb) > 0 ? prod : -prod);
        }
    }
    return r;
}

template <Coefficient A, Coefficient B>
    requires(!std::same_as<A, B>)
MultiVector<promoted_t<A, B>> wedge(const MultiVector<A>& a, const MultiVector<B>& b) {
    using P = promoted_t<A, B>;
    return wedge(coefficient_cast<P>(a), coefficient_cast<P>(b));
}

/// Wedge of a list of vector fields, left to right.
template <Coefficient C>
MultiVector<C> wedge_all(ContextPtr ctx, const std::vector<VectorField<C>>& fields) {
    MultiVector<C> r = MultiVector<C>::scalar(C::constant(ctx, Scalar(1)));
    for (const auto& f : fields)
        r = wedge(r, f.to_multivector());
    return r;
}

/// i(alpha)N, contracting the first slot:
/// i(alpha)(d_{i1}^...^d_{im}) = sum_k (-1)^(k+1) alpha(d_{ik}) d_{i1}^..omit k..^d_{im}.
template <Coefficient C>
MultiVector<C> interior_product(const OneForm<C>& alpha, const MultiVector<C>& n) {
    require_same_context(alpha.context(), n.context(), "interior product");
    if (n.degree() == 0)
        throw degree_error("interior product needs a multivector of degree >= 1");
    MultiVector<C> r(n.context(), n.degree() - 1);
    for (const auto& [m, c] : n.terms()) {
        BasisMask rest = m;
        int sign = 1;
        while (rest) {
            const auto i = static_cast<std::size_t>(std::countr_zero(rest));
            rest &= rest - 1;
            if (!alpha[i].is_zero()) {
                const C prod = alpha[i] * c;
                r.add_term(m & ~mask::bit(i), sign > 0 ? prod : -prod);
            }
            sign = -sign;
        }
    }
    return r;
}

template <Coefficient A, Coefficient B>
    requires(!std::same_as<A, B>)
MultiVector<promoted_t<A, B>> interior_product(const OneForm<A>& alpha, const MultiVector<B>& n) {
    using P = promoted_t<A, B>;
    return interior_product(coefficient_cast<P>(alpha), coefficient_cast<P>(n));
}

/// i(dx^u)N: picks the terms containing index u.
template <Coefficient C>
MultiVector<C> contract_coordinate(std::size_t u, const MultiVector<C>& n) {
    if (n.degree() == 0)
        throw degree_error("interior product needs a multivector of degree >= 1");
    MultiVector<C> r(n.context(), n.degree() - 1);
    for (const auto& [m, c] : n.terms()) {
        if (!(m & mask::bit(u)))
            continue;
        const bool odd = std::popcount(m & (mask::bit(u) - 1)) & 1;
        r.add_term(m & ~mask::bit(u), odd ? -c : c);
    }
    return r;
}

template <Coefficient C>
OneForm<C> differential(const C& f) {
    const auto& ctx = f.context();
    std::vector<C> cs;
    cs.reserve(ctx->dimension());
    for (std::size_t u = 0; u < ctx->dimension(); ++u)
        cs.push_back(f.derivative(u));
    return OneForm<C>(ctx, std::move(cs));
}

}  // namespace gpoisson
