#include "stardeform/gaussian_rational.hpp"

#include <stdexcept>

namespace stardeform {

GaussianRational GaussianRational::inverse() const
{
    if (is_zero()) {
        throw std::domain_error("inverse of zero Gaussian rational");
    }
    if (sgn(im_) == 0) {
        return GaussianRational(Rational(1) / re_);
    }
    const Rational n = norm();
    return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o)
{
    re_ += o.re_;
    if (sgn(o.im_) != 0) {
        im_ += o.im_;
    }
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o)
{
    re_ -= o.re_;
    if (sgn(o.im_) != 0) {
        im_ -= o.im_;
    }
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o)
{
    const bool a_real = sgn(im_) == 0;
    const bool b_real = sgn(o.im_) == 0;
    if (a_real && b_real) {
        re_ *= o.re_;
    } else if (b_real) {
        re_ *= o.re_;
        im_ *= o.re_;
    } else if (a_real) {
        im_ = re_ * o.im_;
        re_ *= o.re_;
    } else {
        Rational re = re_ * o.re_ - im_ * o.im_;
        im_ = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
    }
    return *this;
}

std::strong_ordering lexicographic_compare(const GaussianRational& a, const GaussianRational& b)
{
    if (const int c = cmp(a.re_, b.re_); c != 0) {
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    const int c = cmp(a.im_, b.im_);
    if (c == 0) {
        return std::strong_ordering::equal;
    }
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::string GaussianRational::to_string() const
{
    if (sgn(im_) == 0) {
        return re_.get_str();
    }
    if (sgn(re_) == 0) {
        if (im_ == 1) {
            return "i";
        }
        if (im_ == -1) {
            return "-i";
        }
        return im_.get_str() + "*i";
    }
    std::string s = "(" + re_.get_str();
    if (sgn(im_) > 0) {
        s += "+";
    }
    if (im_ == 1) {
        s += "i";
    } else if (im_ == -1) {
        s += "-i";
    } else {
        s += im_.get_str() + "*i";
    }
    return s + ")";
}

} // namespace stardeform
