#pragma once

// Exact sparse multivariate polynomials over the rationals.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gpoisson/context.hpp"
#include "gpoisson/error.hpp"

namespace gpoisson {

/// Arbitrary-precision rational; mpq_class keeps numerator/denominator coprime
/// with a positive denominator.
using Scalar = mpq_class;

/// Exponent vector, one entry per chart variable.
using Monomial = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Monomial& m) {
    return std::accumulate(m.begin(), m.end(), std::uint64_t{0});
}

/// Graded lexicographic order, largest first; map iteration then starts at the
/// leading term.
struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const auto da = total_degree(a);
        const auto db = total_degree(b);
        if (da != db)
            return da > db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

class Polynomial {
public:
    using Terms = std::map<Monomial, Scalar, GrlexGreater>;

    explicit Polynomial(ContextPtr ctx) : ctx_(std::move(ctx)) {
        if (!ctx_)
            throw input_error("polynomial needs a coordinate context");
    }

    Polynomial(ContextPtr ctx, Terms terms) : Polynomial(std::move(ctx)) {
        for (auto& [mono, coeff] : terms) {
            if (mono.size() != ctx_->dimension())
                throw input_error("monomial length does not match chart dimension");
            coeff.canonicalize();  // callers may hand in e.g. mpq_class(-4, 4)
            if (coeff != 0)
                terms_.emplace(mono, std::move(coeff));
        }
    }

    static Polynomial zero(ContextPtr ctx) { return Polynomial(std::move(ctx)); }

    static Polynomial constant(ContextPtr ctx, const Scalar& c) {
        Polynomial p(std::move(ctx));
        Scalar v(c);
        v.canonicalize();
        if (v != 0)
            p.terms_.emplace(Monomial(p.ctx_->dimension(), 0), std::move(v));
        return p;
    }

    static Polynomial one(ContextPtr ctx) { return constant(std::move(ctx), Scalar(1)); }

    static Polynomial variable(ContextPtr ctx, std::size_t var) {
        Polynomial p(std::move(ctx));
        if (var >= p.ctx_->dimension())
            throw input_error("variable index out of range");
        Monomial m(p.ctx_->dimension(), 0);
        m[var] = 1;
        p.terms_.emplace(std::move(m), Scalar(1));
        return p;
    }

    static Polynomial term(ContextPtr ctx, Monomial m, const Scalar& c) {
        Terms t;
        t.emplace(std::move(m), c);
        return Polynomial(std::move(ctx), std::move(t));
    }

    const ContextPtr& context() const noexcept { return ctx_; }
    const Terms& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && gpoisson::total_degree(terms_.begin()->first) == 0);
    }

    Scalar constant_term() const {
        auto it = terms_.find(Monomial(ctx_->dimension(), 0));
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    /// Leading term under grlex; undefined for the zero polynomial.
    const Terms::value_type& leading() const { return *terms_.begin(); }
    const Scalar& leading_coefficient() const { return terms_.begin()->second; }

    std::uint64_t total_degree() const {
        return terms_.empty() ? 0 : gpoisson::total_degree(terms_.begin()->first);
    }

    std::uint32_t degree_in(std::size_t var) const {
        std::uint32_t d = 0;
        for (const auto& [m, c] : terms_)
            d = std::max(d, m[var]);
        return d;
    }

    bool contains_variable(std::size_t var) const {
        return std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first[var] != 0; });
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& [m, c] : r.terms_)
            c = -c;
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) { return accumulate(o, 1); }
    Polynomial& operator-=(const Polynomial& o) { return accumulate(o, -1); }

    Polynomial& operator*=(const Scalar& s) {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [m, c] : terms_)
                c *= s;
        }
        return *this;
    }

    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
    friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        require_same_context(a.ctx_, b.ctx_, "mul");
        Polynomial r(a.ctx_);
        if (a.is_zero() || b.is_zero())
            return r;
        const std::size_t n = a.ctx_->dimension();
        Monomial m(n);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                for (std::size_t i = 0; i < n; ++i)
                    m[i] = ma[i] + mb[i];
                auto [it, inserted] = r.terms_.try_emplace(m, ca * cb);
                if (!inserted) {
                    it->second += ca * cb;
                    if (it->second == 0)
                        r.terms_.erase(it);
                }
            }
        }
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return same_context(a.ctx_, b.ctx_) && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial pow(std::uint32_t e) const {
        Polynomial result = one(ctx_);
        Polynomial base = *this;
        while (e) {
            if (e & 1u)
                result *= base;
            e >>= 1;
            if (e)
                base *= base;
        }
        return result;
    }

    Polynomial derivative(std::size_t var) const {
        if (var >= ctx_->dimension())
            throw input_error("differentiate: variable index " + std::to_string(var) + " out of range");
        Polynomial r(ctx_);
        for (const auto& [m, c] : terms_) {
            if (m[var] == 0)
                continue;
            Monomial dm = m;
            --dm[var];
            r.terms_.emplace(std::move(dm), c * m[var]);
        }
        return r;
    }

    Scalar evaluate(std::span<const Scalar> point) const {
        const std::size_t n = ctx_->dimension();
        if (point.size() != n)
            throw input_error("evaluate: point has " + std::to_string(point.size()) + " coordinates, chart has " +
                              std::to_string(n));
        Scalar sum = 0;
        mpq_class power;
        for (const auto& [m, c] : terms_) {
            Scalar value = c;
            for (std::size_t i = 0; i < n; ++i) {
                if (m[i] == 0)
                    continue;
                mpz_pow_ui(power.get_num_mpz_t(), point[i].get_num_mpz_t(), m[i]);
                mpz_pow_ui(power.get_den_mpz_t(), point[i].get_den_mpz_t(), m[i]);
                value *= power;
            }
            sum += value;
        }
        return sum;
    }

    /// Expression text accepted back by the expression parser.
    std::string to_string() const {
        if (terms_.empty())
            return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            const bool negative = c < 0;
            if (first)
                out << (negative ? "-" : "");
            else
                out << (negative ? " - " : " + ");
            first = false;
            const Scalar magnitude = abs(c);
            const bool is_const = gpoisson::total_degree(m) == 0;
            bool need_star = false;
            if (is_const || magnitude != 1) {
                out << magnitude.get_str();
                need_star = true;
            }
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0)
                    continue;
                if (need_star)
                    out << '*';
                out << ctx_->name(i);
                if (m[i] > 1)
                    out << '^' << m[i];
                need_star = true;
            }
        }
        return out.str();
    }

private:
    Polynomial& accumulate(const Polynomial& o, int sign) {
        require_same_context(ctx_, o.ctx_, sign > 0 ? "add" : "sub");
        for (const auto& [m, c] : o.terms_) {
            auto [it, inserted] = terms_.try_emplace(m, sign > 0 ? c : Scalar(-c));
            if (!inserted) {
                if (sign > 0)
                    it->second += c;
                else
                    it->second -= c;
                if (it->second == 0)
                    terms_.erase(it);
            }
        }
        return *this;
    }

    ContextPtr ctx_;
    Terms terms_;
};

enum class RingOp { add, sub, mul };

inline Polynomial ring_ops(const Polynomial& a, const Polynomial& b, RingOp op) {
    switch (op) {
        case RingOp::add: return a + b;
        case RingOp::sub: return a - b;
        case RingOp::mul: return a * b;
    }
    throw input_error("unknown ring operation");
}

inline Polynomial differentiate(const Polynomial& p, std::size_t var) { return p.derivative(var); }

inline Scalar evaluate(const Polynomial& p, std::span<const Scalar> point) { return p.evaluate(point); }

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

}  // namespace gpoisson
