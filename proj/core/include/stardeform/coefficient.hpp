#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stardeform/gaussian_rational.hpp"
#include "stardeform/polynomial.hpp"

namespace stardeform {

// Which classical algebra a coefficient lives in. Polynomials lift into
// rational functions when the two are combined.
enum class CoefficientDomain { polynomial, rational };

const char* to_string(CoefficientDomain d);

// Element of the classical commutative *-algebra A: a polynomial, or a
// rational function num / prod(f_k^e_k) with normalized denominator factors.
//
// Denominators are kept as a product of monic factors rather than a single
// expanded polynomial. No GCD is ever taken; numerators are only divided by
// factors that divide them exactly, so the representation is not canonical
// and equality is decided by cross-multiplication over the common factors.
class Coefficient {
public:
    using Factor = std::pair<Polynomial, unsigned>;

    Coefficient(Variables vars, CoefficientDomain domain = CoefficientDomain::rational);
    Coefficient(Polynomial num, CoefficientDomain domain = CoefficientDomain::rational);

    static Coefficient constant(Variables vars, CoefficientDomain domain, GaussianRational c);
    static Coefficient variable(Variables vars, CoefficientDomain domain, std::size_t index);
    // num / den in the rational domain. Throws std::domain_error if den == 0.
    static Coefficient fraction(const Polynomial& num, const Polynomial& den);

    CoefficientDomain domain() const { return domain_; }
    const Variables& variables() const { return num_.variables(); }
    const Polynomial& numerator() const { return num_; }
    const std::vector<Factor>& denominator_factors() const { return den_; }
    Polynomial denominator() const;

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const;
    // Value of a constant coefficient; throws std::domain_error otherwise.
    GaussianRational constant_value() const;

    Coefficient lifted(CoefficientDomain domain) const;
    Coefficient zero() const { return Coefficient(variables(), domain_); }
    Coefficient one() const { return constant(variables(), domain_, GaussianRational(1)); }

    // Product without cancelling any factor; the caller reduces later.
    Coefficient times_unreduced(const Coefficient& o) const;

    Coefficient operator-() const;
    Coefficient& operator+=(const Coefficient& o);
    Coefficient& operator-=(const Coefficient& o);
    Coefficient& operator*=(const Coefficient& o);
    Coefficient& operator*=(const GaussianRational& c);

    friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
    friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
    friend Coefficient operator*(Coefficient a, const Coefficient& b) { return a *= b; }
    friend Coefficient operator*(Coefficient a, const GaussianRational& c) { return a *= c; }
    friend Coefficient operator*(const GaussianRational& c, Coefficient a) { return a *= c; }
    friend bool operator==(const Coefficient& a, const Coefficient& b);

    Coefficient conj() const;
    Coefficient partial_derivative(std::size_t index) const;
    Coefficient partial_derivative(std::string_view name) const;
    // Multiplicative inverse. Polynomials are invertible only when they are
    // nonzero constants.
    Coefficient invert() const;
    GaussianRational evaluate_at(std::span<const Rational> point) const;

    // Copy with every denominator factor divided out of the numerator where
    // it divides exactly. Arithmetic only cancels where cancellation is
    // possible for reduced operands, so sums can carry removable factors.
    Coefficient reduced() const;

    std::string to_string() const;

private:
    void reduce();
    // Only tries the factors also listed in candidates.
    void reduce_by(const std::vector<Factor>& candidates);

    CoefficientDomain domain_;
    Polynomial num_;
    std::vector<Factor> den_;
};

// Sum of many coefficients. Terms with the same denominator are added
// numerator-wise; the groups are combined and reduced once in total().
class CoefficientSum {
public:
    explicit CoefficientSum(Coefficient zero) : zero_(std::move(zero)) {}

    void add(Coefficient c);
    Coefficient total() const;

private:
    Coefficient zero_;
    std::vector<Coefficient> groups_;
};

} // namespace stardeform
