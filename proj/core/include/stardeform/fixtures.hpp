#pragma once

#include <vector>

#include "stardeform/star_matrix.hpp"

namespace stardeform {

// Rank-one Hermitian projection on R^2 with coordinates (x, p):
//   P0 = 1/(1 + x^2 + p^2) [[1, x - i p], [x + i p, x^2 + p^2]].
// Its trace is identically 1. Needs a two-variable rational algebra.
StarMatrix bott_projection(const StarAlgebra& alg);

// diag(d_1, ..., d_n) as an l-constant matrix.
StarMatrix diagonal_matrix(const StarAlgebra& alg, const std::vector<GaussianRational>& diagonal);

} // namespace stardeform
