#pragma once

#include "supercover/rational.hpp"

#include <map>
#include <vector>

namespace supercover {

/// Exponent vector of a power product; trailing zero entries are trimmed so
/// the representation is unique. Variable identities (names) live one level
/// up, in the generator set; here variables are just indices.
struct PowerProduct {
    std::vector<unsigned> e;

    void trim();
    unsigned exp(size_t var) const { return var < e.size() ? e[var] : 0; }
    bool is_unit() const { return e.empty(); }
    unsigned total_degree() const;
    PowerProduct operator*(const PowerProduct& o) const;
    bool operator==(const PowerProduct& o) const { return e == o.e; }
};

/// Orders power products so that the product rendered first compares smallest:
/// higher exponent on the earliest differing variable wins, constants last.
struct PowerProductOrder {
    bool operator()(const PowerProduct& a, const PowerProduct& b) const;
};

/// Sparse multivariate polynomial over exact rationals.
class Poly {
public:
    using TermMap = std::map<PowerProduct, Rational, PowerProductOrder>;

    Poly() = default;
    static Poly constant(const Rational& c);
    static Poly variable(size_t var);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Zero polynomial reports 0.
    Rational constant_value() const;
    const TermMap& terms() const { return terms_; }
    /// One past the largest variable index that occurs.
    size_t arity() const;
    bool uses_variable(size_t var) const;
    unsigned total_degree() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rational& c) const;
    Poly pow(unsigned n) const;
    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

    Poly derivative(size_t var) const;

    /// Minimum exponent of var across all terms (0 for the zero polynomial).
    unsigned min_exponent(size_t var) const;
    /// Divides every term by var^k; requires min_exponent(var) >= k.
    Poly shift_down(size_t var, unsigned k) const;

    /// Leading coefficient in the term order (0 for the zero polynomial).
    Rational leading_coefficient() const;

    void add_term(const PowerProduct& p, const Rational& c);

    /// Exact division; throws std::domain_error if the divisor does not divide.
    Poly divide_exact(const Poly& divisor) const;

private:
    TermMap terms_;
};

} // namespace supercover
