#pragma once

#include "supercover/superfn.hpp"

#include <stdexcept>
#include <string>

namespace supercover {

/// Parse or evaluation failure, annotated with a 1-based source position.
class ExprError : public std::runtime_error {
public:
    ExprError(const std::string& what, int line, int col)
        : std::runtime_error(what + " at line " + std::to_string(line) + ", column " +
                             std::to_string(col)),
          line_(line),
          col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

/// Expression grammar:
///   expr  := term (('+'|'-') term)*
///   term  := unary (('*'|'/') unary)*
///   unary := ('-')* power
///   power := atom ('^' posint)?
///   atom  := integer | identifier | '(' expr ')'
/// '/' requires a nonzero divisor free of monomial generators.
Superfunction parse_expr(const std::string& text, const GenSetPtr& gs);

/// Deterministic canonical text; parse_expr(render_expr(f)) == f.
std::string render_expr(const Superfunction& f);

/// Canonical text for a coefficient function of the base variables alone.
std::string render_base(const BaseFunction& f, const GeneratorSet& gs);

} // namespace supercover
