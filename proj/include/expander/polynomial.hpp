#pragma once

#include "expander/error.hpp"
#include "expander/zmatrix.hpp"

#include <memory>
#include <span>
#include <string>

namespace expander {

/// A value of the polynomial was not an integer; carries the offending point.
class NonIntegralError : public PreconditionError {
public:
    NonIntegralError(const std::string& what, ZVector point)
        : PreconditionError(what), point_(std::move(point)) {}
    const ZVector& point() const noexcept { return point_; }

private:
    ZVector point_;
};

/// Integer polynomial in x1..xn parsed from text. Grammar: integers,
/// variables x1..xn (x alone means x1), + - * ^ / and parentheses; '/' is
/// exact division and a non-integral value is an error.
class Polynomial {
public:
    static Polynomial parse(const std::string& text);

    ZVector::value_type operator()(std::span<const BigInt> x) const;
    BigInt at(const BigInt& x) const;

    /// Highest variable index used (0 for a constant).
    unsigned arity() const noexcept { return arity_; }
    bool is_constant() const noexcept { return arity_ == 0; }
    const std::string& text() const noexcept { return text_; }

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    unsigned arity_ = 0;
    std::string text_;
};

} // namespace expander
