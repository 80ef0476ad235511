#include "stardeform/fixtures.hpp"

#include <stdexcept>

namespace stardeform {

StarMatrix bott_projection(const StarAlgebra& alg)
{
    if (alg.variables()->size() != 2) {
        throw std::invalid_argument("the Bott projection lives on R^2");
    }
    if (alg.domain() != CoefficientDomain::rational) {
        throw std::invalid_argument("the Bott projection needs rational-function coefficients");
    }
    const Coefficient x = alg.variable(0);
    const Coefficient p = alg.variable(1);
    const Coefficient i = alg.coefficient(GaussianRational::i());
    const Coefficient q = (alg.coefficient(1) + x * x + p * p).invert();
    return StarMatrix::classical(alg, 2, 2,
                                 {q, (x - i * p) * q, (x + i * p) * q, (x * x + p * p) * q});
}

StarMatrix diagonal_matrix(const StarAlgebra& alg, const std::vector<GaussianRational>& diagonal)
{
    StarMatrix m = StarMatrix::zero(alg, diagonal.size(), diagonal.size());
    for (std::size_t k = 0; k < diagonal.size(); ++k) {
        m(k, k) = alg.embed(alg.coefficient(diagonal[k]));
    }
    return m;
}

} // namespace stardeform
