#pragma once

#include <utility>
#include <vector>

#include "stardeform/check.hpp"
#include "stardeform/module.hpp"

namespace stardeform {

// <x, y> = sum_i x_i* star y_i for columns of equal length. Throws
// std::invalid_argument on a length mismatch.
Series canonical_inner(const StarAlgebra& alg, const StarMatrix& x, const StarMatrix& y);

// The module P A^n with its inner product and Theta operators, either
// classically (P = P0, pointwise products) or in the deformed picture
// (P a deformed projection, star products).
class EquivalenceBimodule {
public:
    static EquivalenceBimodule classical(const StarAlgebra& alg, const StarMatrix& p0);
    static EquivalenceBimodule deformed(const DeformedModule& dm);

    const StarAlgebra& algebra() const { return alg_; }
    const StarMatrix& projection() const { return projection_; }
    bool is_deformed() const { return deformed_; }
    std::size_t rank() const { return projection_.rows(); }

    StarMatrix product(const StarMatrix& a, const StarMatrix& b) const;
    Series product(const Series& a, const Series& b) const;

    Series inner(const StarMatrix& x, const StarMatrix& y) const;
    StarMatrix act(const StarMatrix& x, const Series& a) const;
    // Theta_{x,y} z = x <y, z>
    StarMatrix theta(const StarMatrix& x, const StarMatrix& y, const StarMatrix& z) const;

    // P v, the image of an arbitrary column.
    StarMatrix project(const StarMatrix& v) const;
    // {P e_j}
    std::vector<StarMatrix> spanning_set() const;
    // P e_i tau
    StarMatrix generator(std::size_t i, const Series& tau) const;
    // sum_i P_ii
    Series trace() const;

private:
    EquivalenceBimodule(StarAlgebra alg, StarMatrix projection, bool deformed);

    StarAlgebra alg_;
    StarMatrix projection_;
    bool deformed_;
};

// tau* Str(P) tau = 1; classically this is tr P0 tau tau* = 1. The residual
// is reported on failure.
CheckReport verify_strongly_full(const EquivalenceBimodule& b, const Series& tau);

// tau = tau0 + O(l) with tau* star Str(P) star tau = 1, by adding
// -1/2 b_k tau0 l^k for the leading residual b_k. Throws
// std::invalid_argument unless tr P0 tau0 tau0* = 1.
Series deform_full_witness(const DeformedModule& dm, const Coefficient& tau0);

// sum_i Theta_{x, g_i} Theta_{g_i, y} = Theta_{x, y} on the spanning set and
// sum_i <g_i, g_i> = 1, where g_i = P e_i tau. Throws std::invalid_argument
// when a sample is not fixed by P.
CheckReport verify_nice_identities(const EquivalenceBimodule& b, const Series& tau,
                                   const std::vector<std::pair<StarMatrix, StarMatrix>>& samples);

// <Theta_{x,y} z, w> = <z, Theta_{y,x} w>.
CheckReport theta_adjointability(const EquivalenceBimodule& b, const StarMatrix& x, const StarMatrix& y,
                                 const StarMatrix& z, const StarMatrix& w);

} // namespace stardeform
