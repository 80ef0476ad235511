#include "stardeform/series.hpp"

#include <stdexcept>

namespace stardeform {

void require_same_order(const Series& a, const Series& b)
{
    if (a.order() != b.order()) {
        throw std::invalid_argument("truncation order mismatch: " + std::to_string(a.order()) + " vs " +
                                    std::to_string(b.order()));
    }
}

Series::Series(Coefficient c0, int order)
{
    if (order < 0) {
        throw std::invalid_argument("negative truncation order");
    }
    coeffs_.reserve(static_cast<std::size_t>(order) + 1);
    Coefficient z = c0.zero();
    coeffs_.push_back(std::move(c0));
    for (int r = 1; r <= order; ++r) {
        coeffs_.push_back(z);
    }
}

Series::Series(std::vector<Coefficient> coeffs) : coeffs_(std::move(coeffs))
{
    if (coeffs_.empty()) {
        throw std::invalid_argument("series needs at least one coefficient");
    }
    for (const auto& c : coeffs_) {
        require_same_variables(coeffs_.front().variables(), c.variables());
    }
}

Series Series::zero(const Variables& vars, CoefficientDomain domain, int order)
{
    return Series(Coefficient(vars, domain), order);
}

Series Series::one(const Variables& vars, CoefficientDomain domain, int order)
{
    return Series(Coefficient::constant(vars, domain, GaussianRational(1)), order);
}

Series Series::monomial(Coefficient c, int power, int order)
{
    Series s(c.zero(), order);
    if (power >= 0 && power <= order) {
        s.coeffs_[static_cast<std::size_t>(power)] = std::move(c);
    }
    return s;
}

CoefficientDomain Series::domain() const
{
    for (const auto& c : coeffs_) {
        if (c.domain() == CoefficientDomain::rational) {
            return CoefficientDomain::rational;
        }
    }
    return CoefficientDomain::polynomial;
}

bool Series::is_zero() const
{
    for (const auto& c : coeffs_) {
        if (!c.is_zero()) {
            return false;
        }
    }
    return true;
}

bool Series::is_classical() const
{
    for (std::size_t r = 1; r < coeffs_.size(); ++r) {
        if (!coeffs_[r].is_zero()) {
            return false;
        }
    }
    return true;
}

std::optional<int> Series::leading_order() const
{
    for (std::size_t r = 0; r < coeffs_.size(); ++r) {
        if (!coeffs_[r].is_zero()) {
            return static_cast<int>(r);
        }
    }
    return std::nullopt;
}

Series Series::operator-() const
{
    Series r(*this);
    for (auto& c : r.coeffs_) {
        c = -c;
    }
    return r;
}

Series& Series::operator+=(const Series& o)
{
    require_same_order(*this, o);
    for (std::size_t r = 0; r < coeffs_.size(); ++r) {
        coeffs_[r] += o.coeffs_[r];
    }
    return *this;
}

Series& Series::operator-=(const Series& o)
{
    require_same_order(*this, o);
    for (std::size_t r = 0; r < coeffs_.size(); ++r) {
        coeffs_[r] -= o.coeffs_[r];
    }
    return *this;
}

Series& Series::operator*=(const Coefficient& c)
{
    for (auto& x : coeffs_) {
        x *= c;
    }
    return *this;
}

Series& Series::operator*=(const GaussianRational& c)
{
    for (auto& x : coeffs_) {
        x *= c;
    }
    return *this;
}

bool operator==(const Series& a, const Series& b)
{
    return a.coeffs_ == b.coeffs_;
}

Series cauchy_product(const Series& a, const Series& b)
{
    require_same_order(a, b);
    Series out = Series::zero(a.variables(), a.domain(), a.order());
    for (std::size_t s = 0; s < a.coeffs_.size(); ++s) {
        if (a.coeffs_[s].is_zero()) {
            continue;
        }
        for (std::size_t t = 0; s + t < a.coeffs_.size(); ++t) {
            if (!b.coeffs_[t].is_zero()) {
                out.coeffs_[s + t] += a.coeffs_[s] * b.coeffs_[t];
            }
        }
    }
    for (auto& c : out.coeffs_) {
        c = c.lifted(b.domain());
    }
    return out;
}

Series Series::truncated(int order) const
{
    if (order < 0) {
        throw std::invalid_argument("negative truncation order");
    }
    std::vector<Coefficient> c;
    c.reserve(static_cast<std::size_t>(order) + 1);
    for (int r = 0; r <= order; ++r) {
        c.push_back(r <= this->order() ? coeffs_[static_cast<std::size_t>(r)] : coeffs_.front().zero());
    }
    return Series(std::move(c));
}

Series Series::shifted(int k) const
{
    Series out(coeffs_.front().zero(), order());
    for (int r = 0; r + k <= order(); ++r) {
        out.coeffs_[static_cast<std::size_t>(r + k)] = coeffs_[static_cast<std::size_t>(r)];
    }
    return out;
}

Series Series::conj() const
{
    Series r(*this);
    for (auto& c : r.coeffs_) {
        c = c.conj();
    }
    return r;
}

Series Series::lifted(CoefficientDomain domain) const
{
    Series r(*this);
    for (auto& c : r.coeffs_) {
        c = c.lifted(domain);
    }
    return r;
}

std::vector<GaussianRational> Series::evaluate_at(std::span<const Rational> point) const
{
    std::vector<GaussianRational> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) {
        out.push_back(c.evaluate_at(point));
    }
    return out;
}

std::string Series::to_string() const
{
    std::string s;
    for (std::size_t r = 0; r < coeffs_.size(); ++r) {
        if (coeffs_[r].is_zero()) {
            continue;
        }
        if (!s.empty()) {
            s += " + ";
        }
        if (r == 0) {
            s += "(" + coeffs_[r].to_string() + ")";
        } else {
            s += "(" + coeffs_[r].to_string() + ")*l";
            if (r > 1) {
                s += "^" + std::to_string(r);
            }
        }
    }
    return s.empty() ? "0" : s;
}

int series_sign(std::span<const GaussianRational> coeffs)
{
    for (const auto& c : coeffs) {
        if (!c.is_real()) {
            throw std::domain_error("series sign needs real coefficients, got " + c.to_string());
        }
    }
    for (const auto& c : coeffs) {
        if (const int s = sgn(c.re()); s != 0) {
            return s;
        }
    }
    return 0;
}

int series_sign(const Series& s)
{
    std::vector<GaussianRational> values;
    values.reserve(s.coefficients().size());
    for (const auto& c : s.coefficients()) {
        if (!c.is_constant()) {
            throw std::domain_error("series sign needs constant coefficients, got " + c.to_string());
        }
        values.push_back(c.constant_value());
    }
    return series_sign(values);
}

} // namespace stardeform
