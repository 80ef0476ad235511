#include "stardeform/sampling.hpp"

namespace stardeform {

int Sampler::uniform(int lo, int hi)
{
    // Modulo reduction keeps the stream identical across standard libraries.
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
}

Rational Sampler::small_rational()
{
    return {uniform(-9, 9), uniform(1, 9)};
}

GaussianRational Sampler::small_scalar(bool complex)
{
    Rational re = small_rational();
    Rational im = complex && uniform(0, 1) == 1 ? small_rational() : Rational(0);
    return {re, im};
}

Polynomial Sampler::polynomial(const Variables& vars, unsigned max_degree, unsigned max_terms, bool complex)
{
    std::vector<Polynomial::Term> terms;
    const int count = uniform(1, static_cast<int>(max_terms));
    for (int k = 0; k < count; ++k) {
        Monomial m{};
        int budget = uniform(0, static_cast<int>(max_degree));
        for (std::size_t v = 0; v < vars->size() && budget > 0; ++v) {
            const int e = v + 1 == vars->size() ? budget : uniform(0, budget);
            m[v] = static_cast<std::uint16_t>(e);
            budget -= e;
        }
        terms.emplace_back(m, small_scalar(complex));
    }
    return Polynomial::from_terms(vars, std::move(terms));
}

Coefficient Sampler::coefficient(const Variables& vars, CoefficientDomain domain, unsigned max_degree,
                                 unsigned max_terms, bool complex)
{
    return Coefficient(polynomial(vars, max_degree, max_terms, complex), domain);
}

Series Sampler::series(const Variables& vars, CoefficientDomain domain, int order, unsigned max_degree,
                       unsigned max_terms, bool complex)
{
    std::vector<Coefficient> coeffs;
    for (int r = 0; r <= order; ++r) {
        coeffs.push_back(coefficient(vars, domain, max_degree, max_terms, complex));
    }
    return Series(std::move(coeffs));
}

} // namespace stardeform
