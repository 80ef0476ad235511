#pragma once

#include <vector>

#include "stardeform/module.hpp"

namespace stardeform {

// {f, g} = (1/i)(C_1(f, g) - C_1(g, f)).
Coefficient poisson_bracket(const StarAlgebra& alg, const Coefficient& f, const Coefficient& g);

// Matrix version on classical parts, with C_1(L, S)_ij = sum_r C_1(L_ir, S_rj).
// The result is l-constant.
StarMatrix poisson_bracket(const StarAlgebra& alg, const StarMatrix& l, const StarMatrix& s);

// C_1 of l-constant matrices, entrywise as above.
StarMatrix first_order_cochain(const StarAlgebra& alg, const StarMatrix& l, const StarMatrix& s);

// Throws std::invalid_argument unless C_1 is skew-symmetric.
void require_skew_first_order(const StarAlgebra& alg);

// Derivation sum_a X^a d_a with coefficient components.
class VectorField {
public:
    explicit VectorField(std::vector<Coefficient> components);

    const std::vector<Coefficient>& components() const { return components_; }

    Coefficient apply(const Coefficient& f) const;
    // Entrywise on the classical part; the result is l-constant.
    StarMatrix apply(const StarMatrix& m) const;

    VectorField operator-() const;
    friend bool operator==(const VectorField&, const VectorField&);

private:
    std::vector<Coefficient> components_;
};

// [X, Y] with components X(Y^a) - Y(X^a).
VectorField commutator(const VectorField& x, const VectorField& y);

// X_f = {., f}, so that X_f(g) = {g, f}; components X_f^a = {x^a, f}.
VectorField hamiltonian_vector_field(const StarAlgebra& alg, const Coefficient& f);

// {x, A}_E = P0 {x, A} with the componentwise bracket. Throws
// std::invalid_argument when C_1 is not skew-symmetric.
StarMatrix module_bracket(const DeformedModule& dm, const StarMatrix& x, const Coefficient& a);

// (2/i) R_1(x, A), read off from the first-order term of x . A.
StarMatrix module_bracket_from_action(const DeformedModule& dm, const StarMatrix& x, const Coefficient& a);

// R_E(A1, A2) x = {{x, A1}_E, A2}_E - {{x, A2}_E, A1}_E - {x, {A1, A2}}_E.
StarMatrix module_curvature(const DeformedModule& dm, const Coefficient& a1, const Coefficient& a2,
                            const StarMatrix& x);

// Grassmann connection nabla = P0 o d on the image of P0.
class LeviCivitaConnection {
public:
    // Throws std::invalid_argument unless p0 is an l-constant idempotent.
    explicit LeviCivitaConnection(StarMatrix p0);

    const StarMatrix& p0() const { return p0_; }

    StarMatrix covariant_derivative(const VectorField& v, const StarMatrix& x) const;
    // nabla_X nabla_Y x - nabla_Y nabla_X x - nabla_[X,Y] x
    StarMatrix curvature(const VectorField& x_field, const VectorField& y_field, const StarMatrix& x) const;

private:
    StarMatrix p0_;
};

struct FibredBracket {
    // (1/i)(B_1(L0, u) - B_1(u, L0)) from the first-order term of the
    // induced product.
    StarMatrix from_product;
    // P0 {L0, u} P0.
    StarMatrix projected;

    bool agree() const { return from_product == projected; }
};

// Bracket of an endomorphism L0 in P0 M_n P0 with a central element
// u = f P0. Throws std::invalid_argument if u is not of that form.
FibredBracket fibred_bracket(const DeformedModule& dm, const StarMatrix& l0, const StarMatrix& u);

} // namespace stardeform
