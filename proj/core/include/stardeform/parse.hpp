#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "stardeform/coefficient.hpp"
#include "stardeform/series.hpp"

namespace stardeform {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t column) :
        std::runtime_error(what + " (column " + std::to_string(column) + ")"), column_(column)
    {
    }

    // 1-based position inside the parsed string.
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

// Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | 'i' | variable | 'l' | '(' expr ')'
//
// Integers are arbitrary precision; '/' by a non-constant polynomial turns
// the result into a rational function. 'i' is the imaginary unit and 'l' is
// the formal parameter, which is only legal in series literals.
Coefficient parse_coefficient(std::string_view text, const Variables& vars,
                              CoefficientDomain domain = CoefficientDomain::rational);

Series parse_series(std::string_view text, const Variables& vars, int order,
                    CoefficientDomain domain = CoefficientDomain::rational);

} // namespace stardeform
