#pragma once

#include <cstdint>
#include <random>

#include "stardeform/coefficient.hpp"
#include "stardeform/series.hpp"

namespace stardeform {

// Seeded generator of small exact test data: polynomials of low degree with
// single-digit numerators and denominators. Deterministic for a given seed
// on a given standard library.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : engine_(seed) {}

    int uniform(int lo, int hi);
    Rational small_rational();
    GaussianRational small_scalar(bool complex);
    Polynomial polynomial(const Variables& vars, unsigned max_degree, unsigned max_terms, bool complex = false);
    Coefficient coefficient(const Variables& vars, CoefficientDomain domain, unsigned max_degree = 2,
                            unsigned max_terms = 3, bool complex = false);
    // Every coefficient of the series drawn independently.
    Series series(const Variables& vars, CoefficientDomain domain, int order, unsigned max_degree = 2,
                  unsigned max_terms = 3, bool complex = false);

private:
    std::mt19937_64 engine_;
};

} // namespace stardeform
