#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stardeform/gaussian_rational.hpp"

namespace stardeform {

inline constexpr std::size_t kMaxVariables = 6;

// Dense exponent vector; entries beyond the variable count stay zero.
using Monomial = std::array<std::uint16_t, kMaxVariables>;

class VariableList {
public:
    explicit VariableList(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    friend bool operator==(const VariableList&, const VariableList&) = default;

private:
    std::vector<std::string> names_;
};

using Variables = std::shared_ptr<const VariableList>;

Variables make_variables(std::vector<std::string> names);
// x1..xd
Variables make_indexed_variables(std::size_t count);

// Throws std::invalid_argument when the two lists differ.
void require_same_variables(const Variables& a, const Variables& b);
bool same_variables(const Variables& a, const Variables& b);

// Sparse multivariate polynomial with Gaussian-rational coefficients.
// Terms are kept sorted by descending lexicographic monomial order and
// never carry a zero coefficient, so structural equality is ring equality.
class Polynomial {
public:
    using Term = std::pair<Monomial, GaussianRational>;

    explicit Polynomial(Variables vars) : vars_(std::move(vars)) {}

    static Polynomial constant(Variables vars, GaussianRational c);
    static Polynomial variable(Variables vars, std::size_t index);
    static Polynomial monomial(Variables vars, const Monomial& m, GaussianRational c);
    // Terms need not be sorted or combined.
    static Polynomial from_terms(Variables vars, std::vector<Term> terms);

    const Variables& variables() const { return vars_; }
    std::size_t variable_count() const { return vars_->size(); }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Constant term (zero if absent).
    GaussianRational constant_term() const;
    std::size_t total_degree() const;
    const Term& leading_term() const { return terms_.front(); }

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial& operator*=(const GaussianRational& c);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const GaussianRational& c) { return a *= c; }
    friend bool operator==(const Polynomial& a, const Polynomial& b);

    Polynomial pow(unsigned k) const;
    Polynomial derivative(std::size_t index) const;
    Polynomial conj() const;
    GaussianRational evaluate(std::span<const Rational> point) const;

    // Quotient when `divisor` divides this polynomial exactly.
    std::optional<Polynomial> exact_divide(const Polynomial& divisor) const;

    // Canonical ordering of polynomials, used to sort denominator factors.
    friend std::strong_ordering canonical_compare(const Polynomial& a, const Polynomial& b);

    std::string to_string() const;

private:
    void add_scaled(const Polynomial& o, const GaussianRational& scale);

    Variables vars_;
    std::vector<Term> terms_;
};

std::string monomial_to_string(const Monomial& m, const VariableList& vars);

} // namespace stardeform
