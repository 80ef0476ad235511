#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stardeform/check.hpp"
#include "stardeform/series.hpp"
#include "stardeform/star_algebra.hpp"

namespace stardeform {

// Rectangular matrix of truncated series. Square matrices form M_n of the
// deformed algebra; columns (cols == 1) carry module elements. The algebra
// is passed to every operation that needs the star product.
class StarMatrix {
public:
    StarMatrix(std::size_t rows, std::size_t cols, const Series& fill);

    static StarMatrix zero(const StarAlgebra& alg, std::size_t rows, std::size_t cols);
    static StarMatrix identity(const StarAlgebra& alg, std::size_t n);
    // Unit column e_j of length n.
    static StarMatrix unit_column(const StarAlgebra& alg, std::size_t n, std::size_t j);
    // l-constant matrix from classical entries, row-major.
    static StarMatrix classical(const StarAlgebra& alg, std::size_t rows, std::size_t cols,
                                const std::vector<Coefficient>& entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    int order() const { return entries_.front().order(); }

    const Series& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    Series& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const std::vector<Series>& entries() const { return entries_; }

    // Matrix of the l^r coefficients, embedded as an l-constant matrix.
    StarMatrix coefficient_matrix(std::size_t r) const;
    StarMatrix classical_part() const { return coefficient_matrix(0); }
    // True when every entry has vanishing higher orders.
    bool is_classical() const;
    bool is_zero() const;
    // First l-order with a nonzero entry.
    std::optional<int> leading_order() const;

    StarMatrix operator-() const;
    StarMatrix& operator+=(const StarMatrix& o);
    StarMatrix& operator-=(const StarMatrix& o);
    StarMatrix& operator*=(const GaussianRational& c);
    StarMatrix& operator*=(const Coefficient& c);

    friend StarMatrix operator+(StarMatrix a, const StarMatrix& b) { return a += b; }
    friend StarMatrix operator-(StarMatrix a, const StarMatrix& b) { return a -= b; }
    friend StarMatrix operator*(StarMatrix a, const GaussianRational& c) { return a *= c; }
    friend StarMatrix operator*(const GaussianRational& c, StarMatrix a) { return a *= c; }
    friend bool operator==(const StarMatrix& a, const StarMatrix& b);

    // (M*)_ij = conj(M_ji)
    StarMatrix adjoint() const;
    StarMatrix shifted(int k) const;
    StarMatrix truncated(int order) const;
    // Entrywise map.
    StarMatrix map(const std::function<Series(const Series&)>& f) const;

    std::string to_string() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Series> entries_;
};

// Row-major series literals; throws ParseError on malformed entries.
StarMatrix parse_matrix(const StarAlgebra& alg, std::size_t rows, std::size_t cols,
                        const std::vector<std::string>& entries);

// (A star B)_ij = sum_k A_ik star B_kj. Throws std::invalid_argument on a
// dimension mismatch.
StarMatrix star(const StarAlgebra& alg, const StarMatrix& a, const StarMatrix& b);
// Product using only C_0, i.e. the Cauchy product of matrices.
StarMatrix classical_product(const StarMatrix& a, const StarMatrix& b);

// sum_i M_ii. For l-constant matrices this is the classical trace tr; for
// deformed matrices it is the star trace Str.
Series trace(const StarMatrix& m);

// Product used by the generic matrix procedures: the plain star product of
// M_n, or an induced product on a corner algebra.
using MatrixProduct = std::function<StarMatrix(const StarMatrix&, const StarMatrix&)>;
MatrixProduct star_product_of(const StarAlgebra& alg);

// Inverse of a classical matrix by the adjugate formula. Returns nullopt
// when the determinant is not invertible in the coefficient domain.
std::optional<StarMatrix> classical_inverse(const StarMatrix& m);
Series determinant(const StarMatrix& m);

// A star A^{-1} = A^{-1} star A = 1 by order recursion. Throws
// std::domain_error on a singular classical part.
StarMatrix mat_series_inverse(const StarAlgebra& alg, const StarMatrix& a);

// sum_k binom(-1/2, k) B^{star k}; requires B = O(l).
StarMatrix star_binomial_half_inverse(const StarAlgebra& alg, const StarMatrix& b);

// Throws std::invalid_argument unless p0 is l-constant with P0 P0 = P0.
void require_classical_idempotent(const StarMatrix& p0);

// P = 1/2 + (P0 - 1/2) star (1 + 4 (P0 star P0 - P0))^{-1/2}.
// With hermitian set, P0 must be Hermitian and the algebra flagged Hermitian.
StarMatrix deform_projection_fedosov(const StarAlgebra& alg, const StarMatrix& p0, bool hermitian);

// Order-by-order lift: with defect P star P - P = l^k E_k + O(l^(k+1)), adds
// l^k (E_k - P0 E_k - E_k P0). Throws std::logic_error if P0 E_k != E_k P0.
StarMatrix deform_projection_recursive(const StarAlgebra& alg, const StarMatrix& p0);

// U = P' star P + (1 - P') star (1 - P); U star P = P' star U.
StarMatrix idempotent_intertwiner(const StarAlgebra& alg, const StarMatrix& p, const StarMatrix& p_prime);

// L with L* star L = S, built as L = L0 + sum_k l^k L_k where
// L_k = 1/2 (b_k L0^{-1})* and b_k is the leading coefficient of
// S - L_(k-1)* star L_(k-1).
StarMatrix hermitian_factorization(const StarAlgebra& alg, const StarMatrix& s, const StarMatrix& l0);
// Same recursion for an arbitrary Hermitian product on a subalgebra whose
// classical multiplication is the matrix product; l0_inverse is the inverse
// of L0 inside that subalgebra.
StarMatrix hermitian_factorization(const MatrixProduct& product, const StarMatrix& s, const StarMatrix& l0,
                                   const StarMatrix& l0_inverse);

// Unitary U with classical part U0: the factorization of S = 1 with L0 = U0.
StarMatrix deform_unitary(const StarAlgebra& alg, const StarMatrix& u0);

} // namespace stardeform
