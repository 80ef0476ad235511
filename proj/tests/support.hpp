#pragma once

#include <string>
#include <vector>

#include "stardeform/fixtures.hpp"
#include "stardeform/parse.hpp"
#include "stardeform/sampling.hpp"
#include "stardeform/star_matrix.hpp"

namespace stardeform::testing {

inline const Variables& xp()
{
    static const Variables v = make_variables({"x", "p"});
    return v;
}

inline StarAlgebra moyal(int order)
{
    return moyal_stack(1, standard_symplectic(1), order, xp());
}

inline StarAlgebra flat(int order)
{
    return moyal_stack(1, {{0, 0}, {0, 0}}, order, xp());
}

inline Series ser(const StarAlgebra& alg, const std::string& text)
{
    return parse_series(text, alg.variables(), alg.order(), alg.domain());
}

inline Coefficient coef(const StarAlgebra& alg, const std::string& text)
{
    return parse_coefficient(text, alg.variables(), alg.domain());
}

inline StarMatrix random_matrix(const StarAlgebra& alg, Sampler& s, std::size_t rows, std::size_t cols,
                                unsigned degree = 2, bool complex = true)
{
    StarMatrix m = StarMatrix::zero(alg, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = s.series(alg.variables(), alg.domain(), alg.order(), degree, 2, complex);
        }
    }
    return m;
}

inline StarMatrix random_classical_matrix(const StarAlgebra& alg, Sampler& s, std::size_t rows, std::size_t cols,
                                          unsigned degree = 2, bool complex = true)
{
    return random_matrix(alg, s, rows, cols, degree, complex).classical_part();
}

} // namespace stardeform::testing
