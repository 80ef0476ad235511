#include "stardeform/coefficient.hpp"

#include <algorithm>
#include <stdexcept>

namespace stardeform {

const char* to_string(CoefficientDomain d)
{
    return d == CoefficientDomain::polynomial ? "polynomial" : "rational";
}

namespace {

CoefficientDomain join(CoefficientDomain a, CoefficientDomain b)
{
    return (a == CoefficientDomain::rational || b == CoefficientDomain::rational) ? CoefficientDomain::rational
                                                                                  : CoefficientDomain::polynomial;
}

// Insert f^e keeping the factor list sorted and free of duplicates.
void insert_factor(std::vector<Coefficient::Factor>& den, Polynomial f, unsigned e)
{
    if (e == 0) {
        return;
    }
    auto it = std::lower_bound(den.begin(), den.end(), f,
                               [](const Coefficient::Factor& x, const Polynomial& p) { return canonical_compare(x.first, p) < 0; });
    if (it != den.end() && it->first == f) {
        it->second += e;
        return;
    }
    den.emplace(it, std::move(f), e);
}

unsigned exponent_of(const std::vector<Coefficient::Factor>& den, const Polynomial& f)
{
    for (const auto& [g, e] : den) {
        if (g == f) {
            return e;
        }
    }
    return 0;
}

// Union of two factor lists with maximal exponents.
std::vector<Coefficient::Factor> common_denominator(const std::vector<Coefficient::Factor>& a,
                                                    const std::vector<Coefficient::Factor>& b)
{
    std::vector<Coefficient::Factor> out = a;
    for (const auto& [f, e] : b) {
        const unsigned ea = exponent_of(out, f);
        if (e > ea) {
            insert_factor(out, f, e - ea);
        }
    }
    return out;
}

// prod f^(target - have) as a polynomial.
Polynomial lift_multiplier(const Variables& vars, const std::vector<Coefficient::Factor>& target,
                           const std::vector<Coefficient::Factor>& have)
{
    Polynomial m = Polynomial::constant(vars, GaussianRational(1));
    for (const auto& [f, e] : target) {
        const unsigned h = exponent_of(have, f);
        if (e > h) {
            m = m * f.pow(e - h);
        }
    }
    return m;
}

} // namespace

Coefficient::Coefficient(Variables vars, CoefficientDomain domain) : domain_(domain), num_(std::move(vars)) {}

Coefficient::Coefficient(Polynomial num, CoefficientDomain domain) : domain_(domain), num_(std::move(num)) {}

Coefficient Coefficient::constant(Variables vars, CoefficientDomain domain, GaussianRational c)
{
    return Coefficient(Polynomial::constant(std::move(vars), std::move(c)), domain);
}

Coefficient Coefficient::variable(Variables vars, CoefficientDomain domain, std::size_t index)
{
    return Coefficient(Polynomial::variable(std::move(vars), index), domain);
}

Coefficient Coefficient::fraction(const Polynomial& num, const Polynomial& den)
{
    require_same_variables(num.variables(), den.variables());
    if (den.is_zero()) {
        throw std::domain_error("zero denominator");
    }
    Coefficient r(num, CoefficientDomain::rational);
    const GaussianRational lead = den.leading_term().second;
    r.num_ *= lead.inverse();
    if (!den.is_constant()) {
        insert_factor(r.den_, den * lead.inverse(), 1);
    }
    r.reduce();
    return r;
}

Polynomial Coefficient::denominator() const
{
    Polynomial d = Polynomial::constant(variables(), GaussianRational(1));
    for (const auto& [f, e] : den_) {
        d = d * f.pow(e);
    }
    return d;
}

GaussianRational Coefficient::constant_value() const
{
    if (!is_constant()) {
        throw std::domain_error("coefficient " + to_string() + " is not constant");
    }
    return den_.empty() ? num_.constant_term() : reduced().num_.constant_term();
}

Coefficient Coefficient::lifted(CoefficientDomain domain) const
{
    Coefficient r(*this);
    r.domain_ = join(domain_, domain);
    return r;
}

void Coefficient::reduce()
{
    reduce_by(den_);
}

void Coefficient::reduce_by(const std::vector<Factor>& candidates)
{
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    std::vector<Factor> kept;
    kept.reserve(den_.size());
    for (auto& [f, e] : den_) {
        const bool candidate = &candidates == &den_ || exponent_of(candidates, f) > 0;
        while (candidate && e > 0 && num_.total_degree() >= f.total_degree()) {
            auto q = num_.exact_divide(f);
            if (!q) {
                break;
            }
            num_ = std::move(*q);
            --e;
        }
        if (e > 0) {
            kept.emplace_back(std::move(f), e);
        }
    }
    den_ = std::move(kept);
}

Coefficient Coefficient::reduced() const
{
    Coefficient r(*this);
    r.reduce();
    return r;
}

bool Coefficient::is_constant() const
{
    if (den_.empty()) {
        return num_.is_constant();
    }
    const Coefficient r = reduced();
    return r.den_.empty() && r.num_.is_constant();
}

Coefficient Coefficient::operator-() const
{
    Coefficient r(*this);
    r.num_ = -r.num_;
    return r;
}

Coefficient& Coefficient::operator+=(const Coefficient& o)
{
    require_same_variables(variables(), o.variables());
    domain_ = join(domain_, o.domain_);
    if (o.is_zero()) {
        return *this;
    }
    if (den_.empty() && o.den_.empty()) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_) {
        num_ += o.num_;
        if (num_.is_zero()) {
            den_.clear();
        }
        return *this;
    }
    // A factor can only cancel from the sum when both sides carry it to the
    // same power; anything else would already have cancelled in an operand.
    std::vector<Factor> shared;
    for (const auto& [f, e] : den_) {
        if (exponent_of(o.den_, f) == e) {
            shared.emplace_back(f, e);
        }
    }
    auto common = common_denominator(den_, o.den_);
    Polynomial lhs = num_ * lift_multiplier(variables(), common, den_);
    lhs += o.num_ * lift_multiplier(variables(), common, o.den_);
    num_ = std::move(lhs);
    den_ = std::move(common);
    reduce_by(shared);
    return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& o)
{
    return *this += -o;
}

Coefficient& Coefficient::operator*=(const Coefficient& o)
{
    require_same_variables(variables(), o.variables());
    domain_ = join(domain_, o.domain_);
    if (o.den_.empty() && den_.empty()) {
        num_ = num_ * o.num_;
        return *this;
    }
    // Cancel across the product only: each numerator against the other
    // side's denominator.
    Coefficient lhs(num_, domain_);
    lhs.den_ = o.den_;
    lhs.reduce();
    Coefficient rhs(o.num_, domain_);
    rhs.den_ = std::move(den_);
    rhs.reduce();
    num_ = lhs.num_ * rhs.num_;
    den_ = std::move(rhs.den_);
    if (num_.is_zero()) {
        den_.clear();
        return *this;
    }
    for (auto& [f, e] : lhs.den_) {
        insert_factor(den_, std::move(f), e);
    }
    return *this;
}

Coefficient Coefficient::times_unreduced(const Coefficient& o) const
{
    require_same_variables(variables(), o.variables());
    Coefficient r(num_ * o.num_, join(domain_, o.domain_));
    if (r.num_.is_zero()) {
        return r;
    }
    r.den_ = den_;
    for (const auto& [f, e] : o.den_) {
        insert_factor(r.den_, f, e);
    }
    return r;
}

Coefficient& Coefficient::operator*=(const GaussianRational& c)
{
    num_ *= c;
    if (num_.is_zero()) {
        den_.clear();
    }
    return *this;
}

bool operator==(const Coefficient& a, const Coefficient& b)
{
    if (!same_variables(a.variables(), b.variables())) {
        return false;
    }
    if (a.den_ == b.den_) {
        return a.num_ == b.num_;
    }
    auto common = common_denominator(a.den_, b.den_);
    return a.num_ * lift_multiplier(a.variables(), common, a.den_) ==
           b.num_ * lift_multiplier(b.variables(), common, b.den_);
}

Coefficient Coefficient::conj() const
{
    Coefficient r(num_.conj(), domain_);
    for (const auto& [f, e] : den_) {
        // Conjugation keeps the leading coefficient equal to one.
        insert_factor(r.den_, f.conj(), e);
    }
    return r;
}

Coefficient Coefficient::partial_derivative(std::size_t index) const
{
    if (index >= variables()->size()) {
        throw std::invalid_argument("unknown variable index " + std::to_string(index));
    }
    if (den_.empty()) {
        return Coefficient(num_.derivative(index), domain_);
    }
    // d(n / prod f^e) = (n' prod f - n sum e_k f_k' prod_{j!=k} f_j) / prod f^(e+1)
    const Variables& vars = variables();
    std::vector<Polynomial> df;
    df.reserve(den_.size());
    bool any = false;
    for (const auto& [f, e] : den_) {
        df.push_back(f.derivative(index));
        any = any || !df.back().is_zero();
    }
    if (!any) {
        Coefficient r(*this);
        r.num_ = num_.derivative(index);
        r.reduce();
        return r;
    }
    Polynomial all = Polynomial::constant(vars, GaussianRational(1));
    for (std::size_t k = 0; k < den_.size(); ++k) {
        if (!df[k].is_zero()) {
            all = all * den_[k].first;
        }
    }
    Polynomial num = num_.derivative(index) * all;
    for (std::size_t k = 0; k < den_.size(); ++k) {
        if (df[k].is_zero()) {
            continue;
        }
        Polynomial others = Polynomial::constant(vars, GaussianRational(static_cast<std::int64_t>(den_[k].second)));
        for (std::size_t j = 0; j < den_.size(); ++j) {
            if (j != k && !df[j].is_zero()) {
                others = others * den_[j].first;
            }
        }
        num -= num_ * df[k] * others;
    }
    Coefficient r(std::move(num), domain_);
    r.den_ = den_;
    for (std::size_t k = 0; k < den_.size(); ++k) {
        if (!df[k].is_zero()) {
            ++r.den_[k].second;
        }
    }
    r.reduce();
    return r;
}

Coefficient Coefficient::partial_derivative(std::string_view name) const
{
    auto idx = variables()->index_of(name);
    if (!idx) {
        throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
    }
    return partial_derivative(*idx);
}

Coefficient Coefficient::invert() const
{
    if (is_zero()) {
        throw std::domain_error("inverse of zero");
    }
    if (num_.is_constant()) {
        Coefficient r(denominator() * num_.constant_term().inverse(), domain_);
        return r;
    }
    if (domain_ == CoefficientDomain::polynomial) {
        throw std::domain_error("polynomial " + to_string() + " is not a unit");
    }
    const GaussianRational lead = num_.leading_term().second;
    Coefficient r(denominator() * lead.inverse(), CoefficientDomain::rational);
    insert_factor(r.den_, num_ * lead.inverse(), 1);
    r.reduce();
    return r;
}

GaussianRational Coefficient::evaluate_at(std::span<const Rational> point) const
{
    GaussianRational den(1);
    for (const auto& [f, e] : den_) {
        const GaussianRational v = f.evaluate(point);
        if (v.is_zero()) {
            throw std::domain_error("pole of " + to_string() + " at evaluation point");
        }
        for (unsigned k = 0; k < e; ++k) {
            den *= v;
        }
    }
    return num_.evaluate(point) / den;
}

void CoefficientSum::add(Coefficient c)
{
    if (c.is_zero()) {
        return;
    }
    for (auto& g : groups_) {
        if (g.denominator_factors() == c.denominator_factors()) {
            g += c;
            return;
        }
    }
    groups_.push_back(std::move(c));
}

Coefficient CoefficientSum::total() const
{
    Coefficient out = zero_;
    for (const auto& g : groups_) {
        out += g.reduced();
    }
    return out.reduced();
}

std::string Coefficient::to_string() const
{
    if (den_.empty()) {
        return num_.to_string();
    }
    const Coefficient r = reduced();
    if (r.den_.empty()) {
        return r.num_.to_string();
    }
    std::string s = "(" + r.num_.to_string() + ")/(";
    for (std::size_t k = 0; k < r.den_.size(); ++k) {
        if (k > 0) {
            s += "*";
        }
        s += "(" + r.den_[k].first.to_string() + ")";
        if (r.den_[k].second > 1) {
            s += "^" + std::to_string(r.den_[k].second);
        }
    }
    return s + ")";
}

} // namespace stardeform
