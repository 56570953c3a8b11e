#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gpoisson/error.hpp"

namespace gpoisson {

/// Maximum chart dimension. Basis index tuples are stored as 64-bit masks.
inline constexpr std::size_t max_dimension = 64;

/// A global coordinate chart: dimension plus variable names, in order.
class CoordinateContext {
public:
    explicit CoordinateContext(std::vector<std::string> names) : names_(std::move(names)) {
        if (names_.empty())
            throw input_error("coordinate context needs at least one variable");
        if (names_.size() > max_dimension)
            throw input_error("coordinate context dimension exceeds " + std::to_string(max_dimension));
        std::set<std::string> seen;
        for (const auto& name : names_) {
            if (name.empty())
                throw input_error("empty variable name");
            if (!seen.insert(name).second)
                throw input_error("duplicate variable name '" + name + "'");
        }
    }

    std::size_t dimension() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::string& name(std::size_t i) const { return names_.at(i); }

    std::optional<std::size_t> index_of(const std::string& name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name)
                return i;
        return std::nullopt;
    }

    bool operator==(const CoordinateContext& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
};

using ContextPtr = std::shared_ptr<const CoordinateContext>;

inline ContextPtr make_context(std::vector<std::string> names) {
    return std::make_shared<const CoordinateContext>(std::move(names));
}

/// Chart x1..xn.
inline ContextPtr make_context(std::size_t n, const std::string& prefix = "x") {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 1; i <= n; ++i)
        names.push_back(prefix + std::to_string(i));
    return make_context(std::move(names));
}

inline bool same_context(const ContextPtr& a, const ContextPtr& b) {
    return a == b || (a && b && *a == *b);
}

inline void require_same_context(const ContextPtr& a, const ContextPtr& b, const char* op) {
    if (!same_context(a, b))
        throw input_error(std::string(op) + ": coordinate context mismatch");
}

}  // namespace gpoisson
