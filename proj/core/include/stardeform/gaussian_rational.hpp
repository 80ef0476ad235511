#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace stardeform {

using Rational = mpq_class;

// Exact element re + i*im of Q(i).
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(std::int64_t re) : re_(static_cast<long>(re)) {}
    GaussianRational(Rational re) : re_(std::move(re)) { re_.canonicalize(); }
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im))
    {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational i() { return {Rational(0), Rational(1)}; }
    static GaussianRational fraction(long num, long den) { return GaussianRational(Rational(num, den)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    // |z|^2
    Rational norm() const { return re_ * re_ + im_ * im_; }
    // Throws std::domain_error on zero.
    GaussianRational inverse() const;

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    // Total order used only for canonical sorting, not an algebraic order.
    friend std::strong_ordering lexicographic_compare(const GaussianRational& a, const GaussianRational& b);

    std::string to_string() const;

private:
    Rational re_{0};
    Rational im_{0};
};

} // namespace stardeform
