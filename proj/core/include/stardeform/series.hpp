#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stardeform/coefficient.hpp"

namespace stardeform {

// Truncated formal power series c_0 + c_1 l + ... + c_N l^N in the formal
// parameter l, with coefficients in the classical algebra. Everything is
// computed modulo l^(N+1).
class Series {
public:
    // Classical element embedded at every truncation order.
    Series(Coefficient c0, int order);
    // Requires a nonempty list; order = size - 1.
    explicit Series(std::vector<Coefficient> coeffs);

    static Series zero(const Variables& vars, CoefficientDomain domain, int order);
    static Series one(const Variables& vars, CoefficientDomain domain, int order);
    // c * l^power
    static Series monomial(Coefficient c, int power, int order);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Variables& variables() const { return coeffs_.front().variables(); }
    CoefficientDomain domain() const;
    const std::vector<Coefficient>& coefficients() const { return coeffs_; }
    const Coefficient& operator[](std::size_t r) const { return coeffs_.at(r); }
    Coefficient& operator[](std::size_t r) { return coeffs_.at(r); }
    const Coefficient& classical_part() const { return coeffs_.front(); }

    bool is_zero() const;
    bool is_classical() const;
    // First index with a nonzero coefficient.
    std::optional<int> leading_order() const;

    Series operator-() const;
    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    Series& operator*=(const Coefficient& c);
    Series& operator*=(const GaussianRational& c);

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(Series a, const Coefficient& c) { return a *= c; }
    friend Series operator*(Series a, const GaussianRational& c) { return a *= c; }
    friend Series operator*(const GaussianRational& c, Series a) { return a *= c; }
    friend bool operator==(const Series& a, const Series& b);

    // Cauchy product (f g)_r = sum_{s+t=r} f_s g_t using the commutative
    // classical multiplication. This is not a star product.
    friend Series cauchy_product(const Series& a, const Series& b);

    // Re-truncate to a new order; raising the order pads with zeros.
    Series truncated(int order) const;
    // Multiply by l^k.
    Series shifted(int k) const;
    Series conj() const;
    Series lifted(CoefficientDomain domain) const;

    std::vector<GaussianRational> evaluate_at(std::span<const Rational> point) const;

    std::string to_string() const;

private:
    std::vector<Coefficient> coeffs_;
};

// Throws std::invalid_argument on mismatched truncation orders.
void require_same_order(const Series& a, const Series& b);

// Sign in the ordered ring Q[[l]]: the sign of the first nonzero
// coefficient. Every coefficient must be a real constant.
int series_sign(const Series& s);
int series_sign(std::span<const GaussianRational> coeffs);

} // namespace stardeform
