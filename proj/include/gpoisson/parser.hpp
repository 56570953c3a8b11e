#pragma once

// Recursive-descent parsers for polynomial expressions and multivector
// literals.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?        right-associative
//   primary := NUMBER ('/' NUMBER)? | IDENT | '(' expr ')'
//
// Unary minus binds tighter than binary + and -, looser than ^, so -x^2 is
// -(x^2). Exponents must reduce to nonnegative integer constants.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "gpoisson/exterior.hpp"
#include "gpoisson/polynomial.hpp"

namespace gpoisson {

inline constexpr std::uint32_t max_exponent = 4096;

namespace detail {

class ExpressionParser {
public:
    ExpressionParser(std::string_view src, ContextPtr ctx, std::size_t offset = 0)
        : src_(src), ctx_(std::move(ctx)), offset_(offset) {}

    Polynomial parse_all() {
        Polynomial p = expr();
        skip_space();
        if (pos_ != src_.size())
            fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        return p;
    }

    Polynomial expr() {
        Polynomial acc = term();
        for (;;) {
            skip_space();
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    std::size_t position() const { return pos_; }

private:
    Polynomial term() {
        Polynomial acc = unary();
        for (;;) {
            skip_space();
            if (!accept('*'))
                return acc;
            acc *= unary();
        }
    }

    Polynomial unary() {
        skip_space();
        if (accept('-'))
            return -unary();
        return power();
    }

    Polynomial power() {
        Polynomial base = primary();
        skip_space();
        if (!accept('^'))
            return base;
        skip_space();
        const std::size_t at = pos_;
        const Polynomial e = unary();
        if (!e.is_constant())
            fail_at(at, "exponent must be a constant");
        const Scalar value = e.constant_term();
        if (value.get_den() != 1)
            fail_at(at, "exponent must be an integer");
        if (value < 0)
            fail_at(at, "exponent must be nonnegative");
        if (value > max_exponent)
            fail_at(at, "exponent exceeds " + std::to_string(max_exponent));
        return base.pow(static_cast<std::uint32_t>(value.get_num().get_ui()));
    }

    Polynomial primary() {
        skip_space();
        if (pos_ >= src_.size())
            fail("unexpected end of expression");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            skip_space();
            if (!accept(')'))
                fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Scalar value = number();
            skip_space();
            if (accept('/')) {
                skip_space();
                const std::size_t at = pos_;
                if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    fail("'/' is only allowed between integer literals");
                const Scalar den = number();
                if (den == 0)
                    fail_at(at, "zero denominator");
                value /= den;
            }
            return Polynomial::constant(ctx_, value);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            const std::string name(src_.substr(start, pos_ - start));
            const auto idx = ctx_->index_of(name);
            if (!idx)
                fail_at(start, "unknown identifier '" + name + "'");
            return Polynomial::variable(ctx_, *idx);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    Scalar number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.')
            fail("decimal literals are not supported; write a/b");
        return Scalar(mpz_class(std::string(src_.substr(start, pos_ - start))));
    }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }
    [[noreturn]] void fail_at(std::size_t at, const std::string& what) const {
        throw parse_error(what, offset_ + at);
    }

    std::string_view src_;
    ContextPtr ctx_;
    std::size_t offset_;
    std::size_t pos_ = 0;

};

}  // namespace detail

/// Parses an expression over the chart's variable names. Positions in
/// errors are 0-based offsets; messages print them 1-based.
inline Polynomial parse_expression(std::string_view src, const ContextPtr& ctx) {
    return detail::ExpressionParser(src, ctx).parse_all();
}

/// Parses `[coeff] e<i> ... + [coeff] e<j> ...`. A bare `0` is the zero
/// multivector of `zero_degree`. Unsorted or repeated basis factors are
/// canonicalized; all terms must share one degree.
inline MultiVector<Polynomial> parse_multivector(std::string_view src, const ContextPtr& ctx,
                                                 std::size_t zero_degree = 0) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
            ++pos;
    };
    auto fail = [&](std::size_t at, const std::string& what) -> void {
        throw parse_error(what, at);
    };

    std::size_t end = src.size();
    while (end > 0 && std::isspace(static_cast<unsigned char>(src[end - 1])))
        --end;
    skip();
    if (src.substr(pos, end - pos) == "0")
        return MultiVector<Polynomial>(ctx, zero_degree);

    std::vector<RawTerm<Polynomial>> raw;
    std::optional<std::size_t> degree;
    bool negate = false;
    if (pos < src.size() && src[pos] == '-') {
        negate = true;
        ++pos;
    }
    for (;;) {
        skip();
        if (pos >= src.size() || src[pos] != '[')
            fail(pos, "expected '['");
        const std::size_t open = pos++;
        int depth = 1;
        std::size_t close = pos;
        while (close < src.size() && depth > 0) {
            if (src[close] == '[')
                ++depth;
            else if (src[close] == ']')
                --depth;
            if (depth > 0)
                ++close;
        }
        if (close >= src.size())
            fail(open, "unclosed '['");
        Polynomial coeff = detail::ExpressionParser(src.substr(pos, close - pos), ctx, pos).parse_all();
        if (negate)
            coeff = -coeff;
        pos = close + 1;

        std::vector<std::size_t> idx;
        for (;;) {
            skip();
            if (pos >= src.size() || src[pos] != 'e')
                break;
            const std::size_t at = pos++;
            const std::size_t digits = pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
                ++pos;
            if (pos == digits)
                fail(at, "expected basis index after 'e'");
            if (pos - digits > 3)
                fail(at, "basis index too large");
            const std::size_t k = std::stoul(std::string(src.substr(digits, pos - digits)));
            if (k < 1 || k > ctx->dimension())
                fail(at, "basis index e" + std::to_string(k) + " outside 1.." + std::to_string(ctx->dimension()));
            idx.push_back(k - 1);
        }
        if (degree && *degree != idx.size())
            fail(open, "term degree " + std::to_string(idx.size()) + " differs from " + std::to_string(*degree));
        degree = idx.size();
        raw.emplace_back(std::move(idx), std::move(coeff));

        skip();
        if (pos >= src.size())
            break;
        if (src[pos] != '+' && src[pos] != '-')
            fail(pos, "expected '+' or '-'");
        negate = src[pos++] == '-';
    }
    return canonicalize(ctx, raw, *degree);
}

}  // namespace gpoisson
