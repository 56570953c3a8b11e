#pragma once

// Screening of symbolic identities by exact evaluation at pseudo-random
// integer points.
//
// Generator: std::mt19937_64 seeded with `seed` alone. Each coordinate is a
// 64-bit draw reduced to [-B, B] by rejection (draws at or above the largest
// multiple of 2B+1 are discarded), so the sequence depends only on the
// standard engine and not on any library distribution.

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gpoisson/checks.hpp"

namespace gpoisson {

struct SampleConfig {
    std::size_t trials = 16;
    std::uint64_t seed = 0;
    std::int64_t bound = 1000;

    void validate() const {
        if (trials < 1)
            throw input_error("numeric screening needs at least one trial");
        if (bound < 1)
            throw input_error("sample coordinate bound must be positive");
    }
};

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        if (lo > hi)
            throw input_error("empty sampling range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0)
            return static_cast<std::int64_t>(next());
        const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % span + 1) % span;
        std::uint64_t draw = next();
        while (draw > limit)
            draw = next();
        return lo + static_cast<std::int64_t>(draw % span);
    }

private:
    std::mt19937_64 engine_;
};

/// Polynomial with up to `max_terms` monomials of total degree at most
/// `max_degree` and integer coefficients in [-coeff_bound, coeff_bound].
inline Polynomial random_polynomial(const ContextPtr& ctx, Rng& rng, std::uint32_t max_degree, std::size_t max_terms,
                                    std::int64_t coeff_bound = 5) {
    const std::size_t n = ctx->dimension();
    Polynomial p = Polynomial::zero(ctx);
    const auto terms = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_terms)));
    for (std::size_t t = 0; t < terms; ++t) {
        Monomial m(n, 0);
        const auto degree = rng.uniform(0, max_degree);
        for (std::int64_t d = 0; d < degree; ++d)
            ++m[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1))];
        p += Polynomial::term(ctx, std::move(m), Scalar(static_cast<long>(rng.uniform(-coeff_bound, coeff_bound))));
    }
    return p;
}

namespace detail {

inline void evaluate_into(std::vector<Scalar>& out, const Polynomial& p, const std::vector<Scalar>& x) {
    out.push_back(p.evaluate(x));
}
inline void evaluate_into(std::vector<Scalar>& out, const RationalFunction& r, const std::vector<Scalar>& x) {
    out.push_back(r.evaluate(x));
}
template <Coefficient C>
void evaluate_into(std::vector<Scalar>& out, const VectorField<C>& v, const std::vector<Scalar>& x) {
    for (std::size_t i = 0; i < v.dimension(); ++i)
        evaluate_into(out, v[i], x);
}

template <Coefficient C>
void evaluate_into(std::vector<Scalar>& out, const MultiVector<C>& n, const std::vector<Scalar>& x) {
    for (const auto& [m, c] : n.terms())
        evaluate_into(out, c, x);
}

// Label of the k-th evaluated entry, matching evaluate_into's order.
inline std::string entry_label(const Polynomial&, std::size_t) { return "value"; }
inline std::string entry_label(const RationalFunction&, std::size_t) { return "value"; }
template <Coefficient C>
std::string entry_label(const VectorField<C>&, std::size_t k) {
    return "e" + std::to_string(k + 1);
}
template <Coefficient C>
std::string entry_label(const MultiVector<C>& n, std::size_t k) {
    auto it = n.terms().begin();
    std::advance(it, static_cast<std::ptrdiff_t>(k));
    std::string label;
    for (auto i : mask::indices(it->first))
        label += (label.empty() ? "e" : " e") + std::to_string(i + 1);
    return label.empty() ? "scalar" : label;
}

inline std::string point_literal(const std::vector<Scalar>& x) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < x.size(); ++i)
        out << (i ? ", " : "") << x[i].get_str();
    out << ')';
    return out.str();
}

}  // namespace detail

/// Draws `trials` points and evaluates the residual exactly at each. A
/// symbolically zero residual passes without sampling. Points hitting a
/// pole are redrawn; the redraw count goes into `note`.
template <class Residual>
CheckResult sample_identity_check(const Residual& residual, const SampleConfig& config,
                                  std::string name = "numeric") {
    config.validate();
    detail::Stopwatch clock;
    CheckResult result = CheckResult::pass(std::move(name));
    result.required = false;
    if (residual.is_zero()) {
        result.elapsed = clock.elapsed();
        return result;
    }
    const std::size_t n = residual.context()->dimension();
    Rng rng(config.seed);
    std::size_t redraws = 0;
    const std::size_t max_redraws = 64 * config.trials;
    std::vector<Scalar> point(n);
    std::vector<Scalar> values;
    for (std::size_t t = 0; t < config.trials;) {
        for (auto& c : point)
            c = Scalar(static_cast<long>(rng.uniform(-config.bound, config.bound)));
        values.clear();
        try {
            detail::evaluate_into(values, residual, point);
        } catch (const pole_error&) {
            if (++redraws > max_redraws)
                throw pole_error("numeric screening: too many sample points hit a pole");
            continue;
        }
        for (std::size_t k = 0; k < values.size(); ++k) {
            if (values[k] != 0) {
                result = CheckResult::fail(result.name, {"trial " + std::to_string(t) + " at " +
                                                             detail::point_literal(point),
                                                         detail::entry_label(residual, k) + " = " + values[k].get_str()});
                result.required = false;
                t = config.trials;
                break;
            }
        }
        ++t;
    }
    if (redraws)
        result.note = std::to_string(redraws) + " point(s) redrawn at poles";
    result.elapsed = clock.elapsed();
    return result;
}

}  // namespace gpoisson
