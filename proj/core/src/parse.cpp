#include "stardeform/parse.hpp"

#include <cctype>

namespace stardeform {

namespace {

class Parser {
public:
    Parser(std::string_view text, const Variables& vars, int order, CoefficientDomain domain, bool allow_lambda) :
        text_(text), vars_(vars), order_(order), domain_(domain), allow_lambda_(allow_lambda)
    {
    }

    Series parse()
    {
        skip_space();
        if (pos_ >= text_.size()) {
            fail("empty expression");
        }
        Series s = expr();
        skip_space();
        if (pos_ < text_.size()) {
            fail(std::string("unexpected character '") + text_[pos_] + "'");
        }
        return s;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_ + 1); }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Series constant(GaussianRational c) const { return Series(Coefficient::constant(vars_, domain_, std::move(c)), order_); }

    Series expr()
    {
        Series acc = term();
        for (;;) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    Series term()
    {
        Series acc = unary();
        for (;;) {
            if (accept('*')) {
                acc = cauchy_product(acc, unary());
            } else if (accept('/')) {
                const std::size_t at = pos_;
                Series d = unary();
                if (!d.is_classical()) {
                    pos_ = at;
                    fail("division by a series that depends on l");
                }
                const Coefficient& c = d.classical_part();
                if (c.is_zero()) {
                    pos_ = at;
                    fail("division by zero");
                }
                Coefficient inv = c.is_constant() ? c.invert() : c.lifted(CoefficientDomain::rational).invert();
                acc *= inv;
                acc = acc.lifted(inv.domain());
            } else {
                return acc;
            }
        }
    }

    Series unary()
    {
        if (accept('-')) {
            return -unary();
        }
        if (accept('+')) {
            return unary();
        }
        return power();
    }

    Series power()
    {
        Series base = primary();
        if (accept('^')) {
            skip_space();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            if (start == pos_) {
                fail("expected a non-negative integer exponent");
            }
            const std::string digits(text_.substr(start, pos_ - start));
            if (digits.size() > 4) {
                fail("exponent too large");
            }
            const int e = std::stoi(digits);
            Series result = constant(GaussianRational(1));
            for (int k = 0; k < e; ++k) {
                result = cauchy_product(result, base);
            }
            return result.lifted(base.domain());
        }
        return base;
    }

    Series primary()
    {
        skip_space();
        if (pos_ >= text_.size()) {
            fail("unexpected end of expression");
        }
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Series inner = expr();
            if (!accept(')')) {
                fail("expected ')'");
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            return constant(GaussianRational(Rational(std::string(text_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            const std::string_view name = text_.substr(start, pos_ - start);
            if (name == "i") {
                return constant(GaussianRational::i());
            }
            if (name == "l") {
                if (!allow_lambda_) {
                    pos_ = start;
                    fail("the formal parameter 'l' is not allowed in a coefficient");
                }
                return Series::monomial(Coefficient::constant(vars_, domain_, GaussianRational(1)), 1, order_);
            }
            if (auto idx = vars_->index_of(name)) {
                return Series(Coefficient::variable(vars_, domain_, *idx), order_);
            }
            pos_ = start;
            fail("unknown variable '" + std::string(name) + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    const Variables& vars_;
    int order_;
    CoefficientDomain domain_;
    bool allow_lambda_;
    std::size_t pos_ = 0;
};

} // namespace

Coefficient parse_coefficient(std::string_view text, const Variables& vars, CoefficientDomain domain)
{
    return Parser(text, vars, 0, domain, false).parse().classical_part();
}

Series parse_series(std::string_view text, const Variables& vars, int order, CoefficientDomain domain)
{
    return Parser(text, vars, order, domain, true).parse();
}

} // namespace stardeform
