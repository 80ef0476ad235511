#pragma once

#include <cstddef>
#include <vector>

#include "stardeform/check.hpp"
#include "stardeform/star_matrix.hpp"

namespace stardeform {

// Deformation of the projective module P0 A^n. Elements are n x 1 columns
// x with P0 x = x in every l-order; the deformed picture is P star A^n, and
// the two are identified by I(x) = P star x.
class DeformedModule {
public:
    // Throws std::invalid_argument unless P has classical part P0 and
    // P star P = P.
    DeformedModule(StarAlgebra alg, StarMatrix p0, StarMatrix p);

    static DeformedModule fedosov(const StarAlgebra& alg, const StarMatrix& p0);
    static DeformedModule recursive(const StarAlgebra& alg, const StarMatrix& p0);

    const StarAlgebra& algebra() const { return alg_; }
    const StarMatrix& p0() const { return p0_; }
    const StarMatrix& p() const { return p_; }
    std::size_t rank() const { return p0_.rows(); }
    // P* = P.
    bool hermitian() const { return hermitian_; }

    // P0 x = x per l-order; throws std::invalid_argument otherwise.
    void require_element(const StarMatrix& x) const;
    // P0 L P0 = L per l-order; throws std::invalid_argument otherwise.
    void require_endomorphism(const StarMatrix& l) const;
    // P0 x, the projection of an arbitrary column into the module.
    StarMatrix project(const StarMatrix& x) const;
    // Spanning set {P0 e_j}.
    std::vector<StarMatrix> spanning_set() const;

private:
    StarAlgebra alg_;
    StarMatrix p0_;
    StarMatrix p_;
    bool hermitian_;
};

// I(B) = P star B star Q for B with P0 B Q0 = B; Q is an m x m idempotent.
StarMatrix iso_I(const DeformedModule& dm, const StarMatrix& q, const StarMatrix& b);
// The same map expanded through the cochains:
//   I_r(B) = sum_{i+j+k+m+s=r} C_m(C_k(P_i, B_s), Q_j).
StarMatrix iso_I_cochains(const DeformedModule& dm, const StarMatrix& q, const StarMatrix& b);
// Unique B in P0 M Q0 [[l]] with I(B) = L, by subtracting I of the leading
// coefficient order by order. Throws std::invalid_argument unless
// P star L star Q = L.
StarMatrix iso_I_inverse(const DeformedModule& dm, const StarMatrix& q, const StarMatrix& l);

// Identity of the right factor for modules over the algebra itself.
StarMatrix scalar_unit(const DeformedModule& dm);

// x . A = I^{-1}(P star x star A).
StarMatrix module_action(const DeformedModule& dm, const StarMatrix& x, const Series& a);
// h(x, y) = <P star x, P star y> = sum_i (P star x)_i* star (P star y)_i.
Series deformed_metric(const DeformedModule& dm, const StarMatrix& x, const StarMatrix& y);

// Endomorphisms are series in P0 M_n(A) P0 acting through I.
// L star' S = I^{-1}(I(L) star I(S)) with Q = P.
StarMatrix induced_endo_product(const DeformedModule& dm, const StarMatrix& l, const StarMatrix& s);
// G |> x = I^{-1}(I(G) star I(x)).
StarMatrix endo_action(const DeformedModule& dm, const StarMatrix& g, const StarMatrix& x);
// Unit of star', I^{-1}(P). Its classical part is P0 but it differs from
// P0 at higher orders whenever P star P0 star P != P.
StarMatrix endo_unit(const DeformedModule& dm);
// Inverse with respect to star'.
StarMatrix endo_inverse(const DeformedModule& dm, const StarMatrix& g);

// Module map between two deformations of the same P0, stored in the
// deformed picture: x |-> I_target^{-1}(forward star I_source(x)), with
// forward in P_target M_n P_source and backward its inverse.
struct ModuleMap {
    DeformedModule source;
    DeformedModule target;
    StarMatrix forward;
    StarMatrix backward;

    StarMatrix apply(const StarMatrix& x) const;
    StarMatrix apply_inverse(const StarMatrix& y) const;
};

ModuleMap compose(const ModuleMap& second, const ModuleMap& first);

// T = I'^{-1} o U o I with U = idempotent_intertwiner(P, P').
ModuleMap module_equivalence(const DeformedModule& dm, const DeformedModule& dm_prime);

struct HermitianEquivalence {
    // Module equivalence before the metric correction.
    ModuleMap plain;
    // G in P0 M P0 [[l]] with h'(T x, T y) = h(x, G |> y).
    StarMatrix metric_pullback;
    // W with W* star' W = G.
    StarMatrix factor;
    // T o W^{-1}, an isometry h'(T_iso x, T_iso y) = h(x, y).
    ModuleMap isometric;
    // h'(T x, T y) = h(x, G |> y) on the spanning set.
    CheckReport pullback_check;
};

HermitianEquivalence hermitian_equivalence(const DeformedModule& dm, const DeformedModule& dm_prime);

struct DeformedIsometry {
    // Deformed unitary with classical part V0.
    StarMatrix unitary;
    // P' = U star P star U*.
    StarMatrix rotated_projection;
    // V = T^{-1} o U as an endomorphism series in P0 M P0 [[l]].
    StarMatrix endomorphism;
};

// Deforms a unitary V0 commuting with P0 into an isometry of the module.
DeformedIsometry deform_isometry(const DeformedModule& dm, const StarMatrix& v0);

} // namespace stardeform
