#pragma once

#include "supercover/poly.hpp"

#include <span>

namespace supercover {

/// Rational function in the weight-0 even generators of a chart, with exact
/// rational coefficients. Equality is decided by cross-multiplication
/// (a/b == c/d iff a*d - c*b == 0); the stored representation is only
/// lightly normalized (integer content, common power-product factor, sign of
/// the denominator's leading coefficient, and a gcd reduction when numerator
/// and denominator are univariate in the same variable).
class BaseFunction {
public:
    BaseFunction() : num_(), den_(Poly::constant(Rational(1))) {}
    explicit BaseFunction(const Rational& c)
        : num_(Poly::constant(c)), den_(Poly::constant(Rational(1))) {}
    explicit BaseFunction(Poly num) : num_(std::move(num)), den_(Poly::constant(Rational(1))) {}
    BaseFunction(Poly num, Poly den);

    static BaseFunction variable(size_t var) { return BaseFunction(Poly::variable(var)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const;

    BaseFunction operator+(const BaseFunction& o) const;
    BaseFunction operator-(const BaseFunction& o) const;
    BaseFunction operator-() const;
    BaseFunction operator*(const BaseFunction& o) const;
    BaseFunction operator*(const Rational& c) const;
    BaseFunction operator/(const BaseFunction& o) const;
    BaseFunction reciprocal() const;

    bool operator==(const BaseFunction& o) const;
    bool operator!=(const BaseFunction& o) const { return !(*this == o); }

    /// Quotient-rule derivative with respect to base variable `var`.
    BaseFunction derivative(size_t var) const;

    /// Substitutes args[i] for variable i. Throws std::domain_error if the
    /// denominator collapses to zero.
    BaseFunction compose(std::span<const BaseFunction> args) const;

    size_t arity() const { return std::max(num_.arity(), den_.arity()); }

private:
    void normalize();

    Poly num_;
    Poly den_;
};

} // namespace supercover
