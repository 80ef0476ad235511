#include "stardeform/polynomial.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace stardeform {

VariableList::VariableList(std::vector<std::string> names) : names_(std::move(names))
{
    if (names_.size() > kMaxVariables) {
        throw std::invalid_argument("at most " + std::to_string(kMaxVariables) + " variables are supported");
    }
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) {
            throw std::invalid_argument("empty variable name");
        }
        if (names_[i] == "i" || names_[i] == "l") {
            throw std::invalid_argument("'" + names_[i] + "' is reserved and cannot name a variable");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (names_[i] == names_[j]) {
                throw std::invalid_argument("duplicate variable name '" + names_[i] + "'");
            }
        }
    }
}

std::optional<std::size_t> VariableList::index_of(std::string_view name) const
{
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) {
            return i;
        }
    }
    return std::nullopt;
}

Variables make_variables(std::vector<std::string> names)
{
    return std::make_shared<const VariableList>(std::move(names));
}

Variables make_indexed_variables(std::size_t count)
{
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= count; ++i) {
        names.push_back("x" + std::to_string(i));
    }
    return make_variables(std::move(names));
}

bool same_variables(const Variables& a, const Variables& b)
{
    return a == b || (a && b && *a == *b);
}

void require_same_variables(const Variables& a, const Variables& b)
{
    if (!same_variables(a, b)) {
        throw std::invalid_argument("variable-list mismatch");
    }
}

namespace {

bool divides(const Monomial& d, const Monomial& m)
{
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
        if (d[i] > m[i]) {
            return false;
        }
    }
    return true;
}

Monomial mono_mul(const Monomial& a, const Monomial& b)
{
    Monomial r{};
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
        r[i] = static_cast<std::uint16_t>(a[i] + b[i]);
    }
    return r;
}

Monomial mono_div(const Monomial& a, const Monomial& b)
{
    Monomial r{};
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
        r[i] = static_cast<std::uint16_t>(a[i] - b[i]);
    }
    return r;
}

// Sort descending and merge equal monomials, dropping zeros.
void normalize_terms(std::vector<Polynomial::Term>& terms)
{
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i + 1;
        GaussianRational c = std::move(terms[i].second);
        while (j < terms.size() && terms[j].first == terms[i].first) {
            c += terms[j].second;
            ++j;
        }
        if (!c.is_zero()) {
            terms[out].first = terms[i].first;
            terms[out].second = std::move(c);
            ++out;
        }
        i = j;
    }
    terms.resize(out);
}

} // namespace

Polynomial Polynomial::constant(Variables vars, GaussianRational c)
{
    Polynomial p(std::move(vars));
    if (!c.is_zero()) {
        p.terms_.emplace_back(Monomial{}, std::move(c));
    }
    return p;
}

Polynomial Polynomial::variable(Variables vars, std::size_t index)
{
    if (index >= vars->size()) {
        throw std::invalid_argument("variable index out of range");
    }
    Monomial m{};
    m[index] = 1;
    return monomial(std::move(vars), m, GaussianRational(1));
}

Polynomial Polynomial::monomial(Variables vars, const Monomial& m, GaussianRational c)
{
    Polynomial p(std::move(vars));
    if (!c.is_zero()) {
        p.terms_.emplace_back(m, std::move(c));
    }
    return p;
}

Polynomial Polynomial::from_terms(Variables vars, std::vector<Term> terms)
{
    Polynomial p(std::move(vars));
    normalize_terms(terms);
    p.terms_ = std::move(terms);
    return p;
}

bool Polynomial::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.front().first == Monomial{});
}

GaussianRational Polynomial::constant_term() const
{
    if (!terms_.empty() && terms_.back().first == Monomial{}) {
        return terms_.back().second;
    }
    return {};
}

std::size_t Polynomial::total_degree() const
{
    std::size_t deg = 0;
    for (const auto& [m, c] : terms_) {
        std::size_t d = 0;
        for (auto e : m) {
            d += e;
        }
        deg = std::max(deg, d);
    }
    return deg;
}

Polynomial Polynomial::operator-() const
{
    Polynomial r(*this);
    for (auto& t : r.terms_) {
        t.second = -t.second;
    }
    return r;
}

void Polynomial::add_scaled(const Polynomial& o, const GaussianRational& scale)
{
    require_same_variables(vars_, o.vars_);
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
        if (b == o.terms_.end() || (a != terms_.end() && a->first > b->first)) {
            merged.push_back(std::move(*a));
            ++a;
        } else if (a == terms_.end() || b->first > a->first) {
            merged.emplace_back(b->first, b->second * scale);
            ++b;
        } else {
            GaussianRational c = std::move(a->second);
            c += b->second * scale;
            if (!c.is_zero()) {
                merged.emplace_back(a->first, std::move(c));
            }
            ++a;
            ++b;
        }
    }
    terms_ = std::move(merged);
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    add_scaled(o, GaussianRational(1));
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o)
{
    add_scaled(o, GaussianRational(-1));
    return *this;
}

Polynomial& Polynomial::operator*=(const GaussianRational& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) {
        t.second *= c;
    }
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    require_same_variables(a.vars_, b.vars_);
    if (a.is_zero() || b.is_zero()) {
        return Polynomial(a.vars_);
    }
    if (a.terms_.size() == 1 && a.terms_.front().first == Monomial{}) {
        return Polynomial(b) * a.terms_.front().second;
    }
    if (b.terms_.size() == 1 && b.terms_.front().first == Monomial{}) {
        return Polynomial(a) * b.terms_.front().second;
    }
    std::vector<Polynomial::Term> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            prod.emplace_back(mono_mul(ma, mb), ca * cb);
        }
    }
    normalize_terms(prod);
    Polynomial r(a.vars_);
    r.terms_ = std::move(prod);
    return r;
}

bool operator==(const Polynomial& a, const Polynomial& b)
{
    return same_variables(a.vars_, b.vars_) && a.terms_ == b.terms_;
}

Polynomial Polynomial::pow(unsigned k) const
{
    Polynomial result = constant(vars_, GaussianRational(1));
    Polynomial base = *this;
    while (k > 0) {
        if (k & 1U) {
            result = result * base;
        }
        k >>= 1U;
        if (k > 0) {
            base = base * base;
        }
    }
    return result;
}

Polynomial Polynomial::derivative(std::size_t index) const
{
    if (index >= vars_->size()) {
        throw std::invalid_argument("unknown variable index " + std::to_string(index));
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
        if (m[index] == 0) {
            continue;
        }
        Monomial d = m;
        --d[index];
        out.emplace_back(d, c * GaussianRational(static_cast<std::int64_t>(m[index])));
    }
    // Lowering one exponent preserves lex order among survivors.
    Polynomial r(vars_);
    r.terms_ = std::move(out);
    return r;
}

Polynomial Polynomial::conj() const
{
    Polynomial r(*this);
    for (auto& t : r.terms_) {
        t.second = t.second.conj();
    }
    return r;
}

GaussianRational Polynomial::evaluate(std::span<const Rational> point) const
{
    if (point.size() != vars_->size()) {
        throw std::invalid_argument("evaluation point has dimension " + std::to_string(point.size()) + ", expected " +
                                    std::to_string(vars_->size()));
    }
    GaussianRational sum;
    for (const auto& [m, c] : terms_) {
        Rational v(1);
        for (std::size_t i = 0; i < point.size(); ++i) {
            for (unsigned e = 0; e < m[i]; ++e) {
                v *= point[i];
            }
        }
        sum += c * GaussianRational(v);
    }
    return sum;
}

std::optional<Polynomial> Polynomial::exact_divide(const Polynomial& divisor) const
{
    require_same_variables(vars_, divisor.vars_);
    if (divisor.is_zero()) {
        throw std::domain_error("division by the zero polynomial");
    }
    if (is_zero()) {
        return Polynomial(vars_);
    }
    const auto& [lead_m, lead_c] = divisor.leading_term();
    const GaussianRational lead_inv = lead_c.inverse();
    if (divisor.terms_.size() == 1) {
        std::vector<Term> q;
        q.reserve(terms_.size());
        for (const auto& [m, c] : terms_) {
            if (!divides(lead_m, m)) {
                return std::nullopt;
            }
            q.emplace_back(mono_div(m, lead_m), c * lead_inv);
        }
        Polynomial r(vars_);
        r.terms_ = std::move(q);
        return r;
    }

    // The lowest terms must divide as well, and bound every quotient monomial
    // from below; this rejects most non-divisors before any reduction.
    const Monomial& low = terms_.back().first;
    const Monomial& divisor_low = divisor.terms_.back().first;
    if (!divides(divisor_low, low) || !divides(lead_m, terms_.front().first)) {
        return std::nullopt;
    }
    const Monomial floor = mono_div(low, divisor_low);

    std::map<Monomial, GaussianRational, std::greater<>> rem;
    for (const auto& t : terms_) {
        rem.emplace(t.first, t.second);
    }
    std::vector<Term> quotient;
    while (!rem.empty()) {
        auto top = rem.begin();
        if (!divides(lead_m, top->first)) {
            return std::nullopt;
        }
        const Monomial qm = mono_div(top->first, lead_m);
        if (qm < floor) {
            return std::nullopt;
        }
        const GaussianRational qc = top->second * lead_inv;
        for (const auto& [dm, dc] : divisor.terms_) {
            const Monomial m = mono_mul(qm, dm);
            auto [it, inserted] = rem.try_emplace(m);
            it->second -= qc * dc;
            if (it->second.is_zero()) {
                rem.erase(it);
            }
        }
        quotient.emplace_back(qm, qc);
    }
    Polynomial r(vars_);
    r.terms_ = std::move(quotient);
    return r;
}

std::strong_ordering canonical_compare(const Polynomial& a, const Polynomial& b)
{
    const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = a.terms_[i].first <=> b.terms_[i].first; c != 0) {
            return c;
        }
        if (auto c = lexicographic_compare(a.terms_[i].second, b.terms_[i].second); c != 0) {
            return c;
        }
    }
    return a.terms_.size() <=> b.terms_.size();
}

std::string monomial_to_string(const Monomial& m, const VariableList& vars)
{
    std::string s;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (m[i] == 0) {
            continue;
        }
        if (!s.empty()) {
            s += "*";
        }
        s += vars.name(i);
        if (m[i] > 1) {
            s += "^" + std::to_string(m[i]);
        }
    }
    return s;
}

std::string Polynomial::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string s;
    for (const auto& [m, c] : terms_) {
        const std::string mono = monomial_to_string(m, *vars_);
        // Purely real or purely imaginary coefficients carry their sign outside.
        const bool negative = c.is_real() ? sgn(c.re()) < 0 : sgn(c.re()) == 0 && sgn(c.im()) < 0;
        const GaussianRational mag = negative ? -c : c;
        if (s.empty()) {
            s += negative ? "-" : "";
        } else {
            s += negative ? " - " : " + ";
        }
        if (mono.empty()) {
            s += mag.to_string();
        } else if (mag.is_one()) {
            s += mono;
        } else {
            s += mag.to_string() + "*" + mono;
        }
    }
    return s;
}

} // namespace stardeform
