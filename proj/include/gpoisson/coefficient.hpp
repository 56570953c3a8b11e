#pragma once

#include <concepts>
#include <span>
#include <string>

#include "gpoisson/polynomial.hpp"
#include "gpoisson/rational_function.hpp"

namespace gpoisson {

/// What a multivector coefficient must provide. Polynomial and
/// RationalFunction are the two models.
template <class C>
concept Coefficient = requires(const C& a, const C& b, const Scalar& s, std::size_t i, std::span<const Scalar> pt) {
    { a + b } -> std::convertible_to<C>;
    { a - b } -> std::convertible_to<C>;
    { a * b } -> std::convertible_to<C>;
    { a * s } -> std::convertible_to<C>;
    { -a } -> std::convertible_to<C>;
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.derivative(i) } -> std::convertible_to<C>;
    { a.evaluate(pt) } -> std::convertible_to<Scalar>;
    { a.to_string() } -> std::convertible_to<std::string>;
    { a.context() } -> std::convertible_to<ContextPtr>;
    { C::zero(a.context()) } -> std::convertible_to<C>;
    { C::constant(a.context(), s) } -> std::convertible_to<C>;
};

static_assert(Coefficient<Polynomial>);
static_assert(Coefficient<RationalFunction>);

/// Lift a polynomial into coefficient type C.
template <Coefficient C>
C lift(const Polynomial& p) {
    if constexpr (std::same_as<C, Polynomial>)
        return p;
    else
        return C(p);
}

/// Result coefficient type when combining A with B.
template <Coefficient A, Coefficient B>
using promoted_t = std::conditional_t<std::same_as<A, RationalFunction> || std::same_as<B, RationalFunction>,
                                      RationalFunction, Polynomial>;

}  // namespace gpoisson
