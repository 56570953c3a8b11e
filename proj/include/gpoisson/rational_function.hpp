#pragma once

#include <span>
#include <string>
#include <utility>

#include "gpoisson/gcd.hpp"
#include "gpoisson/polynomial.hpp"

namespace gpoisson {

/// Quotient of polynomials kept in lowest terms with a monic denominator.
class RationalFunction {
public:
    explicit RationalFunction(ContextPtr ctx) : num_(ctx), den_(Polynomial::one(ctx)) {}

    /*implicit*/ RationalFunction(Polynomial p) : num_(std::move(p)), den_(Polynomial::one(num_.context())) {}

    RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

    static RationalFunction zero(ContextPtr ctx) { return RationalFunction(std::move(ctx)); }
    static RationalFunction constant(ContextPtr ctx, const Scalar& c) {
        return RationalFunction(Polynomial::constant(std::move(ctx), c));
    }

    const ContextPtr& context() const noexcept { return num_.context(); }
    const Polynomial& numerator() const noexcept { return num_; }
    const Polynomial& denominator() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.den_ == b.den_)
            return RationalFunction(a.num_ + b.num_, a.den_);
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero() || b.is_zero())
            return zero(a.context());
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(RationalFunction a, const Scalar& s) {
        if (s == 0)
            return zero(a.context());
        a.num_ *= s;
        return a;
    }

    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero())
            throw division_by_zero("division by the zero rational function");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }

    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

    /// Cross-multiplication equality.
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return same_context(a.context(), b.context()) && a.num_ * b.den_ == b.num_ * a.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    RationalFunction derivative(std::size_t var) const {
        if (den_.is_constant())
            return RationalFunction(num_.derivative(var), den_);
        return RationalFunction(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
    }

    Scalar evaluate(std::span<const Scalar> point) const {
        const Scalar d = den_.evaluate(point);
        if (d == 0)
            throw pole_error("rational function evaluated at a pole");
        return num_.evaluate(point) / d;
    }

    std::string to_string() const {
        if (den_.is_constant())
            return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

private:
    void reduce() {
        require_same_context(num_.context(), den_.context(), "rational function");
        if (den_.is_zero())
            throw division_by_zero("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = Polynomial::one(num_.context());
            return;
        }
        if (!den_.is_constant()) {
            const Polynomial g = gcd(num_, den_);
            if (!g.is_constant()) {
                num_ = *exact_divide(num_, g);
                den_ = *exact_divide(den_, g);
            }
        }
        const Scalar lc = den_.leading_coefficient();
        if (lc != 1) {
            const Scalar inv = 1 / lc;
            num_ *= inv;
            den_ *= inv;
        }
    }

    Polynomial num_;
    Polynomial den_;
};

inline RationalFunction rf_reduce(const Polynomial& num, const Polynomial& den) { return RationalFunction(num, den); }

inline std::ostream& operator<<(std::ostream& os, const RationalFunction& r) { return os << r.to_string(); }

}  // namespace gpoisson
