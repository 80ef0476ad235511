#include "stardeform/module.hpp"

#include <stdexcept>

namespace stardeform {

namespace {

StarMatrix as_matrix(const Series& a)
{
    return {1, 1, a};
}

// sum_c C_k(X_ac, Y_cb) on the l^s and l^t coefficients of X and Y.
StarMatrix cochain_product(const StarAlgebra& alg, std::size_t k, const StarMatrix& x, std::size_t s,
                           const StarMatrix& y, std::size_t t)
{
    StarMatrix out = StarMatrix::zero(alg, x.rows(), y.cols());
    for (std::size_t a = 0; a < x.rows(); ++a) {
        for (std::size_t b = 0; b < y.cols(); ++b) {
            Coefficient acc = alg.coefficient(0);
            for (std::size_t c = 0; c < x.cols(); ++c) {
                const Coefficient& f = x(a, c)[s];
                const Coefficient& g = y(c, b)[t];
                if (!f.is_zero() && !g.is_zero()) {
                    acc += alg.apply_cochain(k, f, g);
                }
            }
            out(a, b) = alg.embed(acc);
        }
    }
    return out;
}

} // namespace

DeformedModule::DeformedModule(StarAlgebra alg, StarMatrix p0, StarMatrix p) :
    alg_(std::move(alg)), p0_(std::move(p0)), p_(std::move(p))
{
    require_classical_idempotent(p0_);
    if (!(p_.classical_part() == p0_)) {
        throw std::invalid_argument("deformed projection does not have classical part P0");
    }
    if (!(star(alg_, p_, p_) == p_)) {
        throw std::invalid_argument("deformed projection is not idempotent");
    }
    hermitian_ = p_.adjoint() == p_;
}

DeformedModule DeformedModule::fedosov(const StarAlgebra& alg, const StarMatrix& p0)
{
    const bool hermitian = p0.adjoint() == p0 && alg.stack().hermitian_flag;
    return {alg, p0, deform_projection_fedosov(alg, p0, hermitian)};
}

DeformedModule DeformedModule::recursive(const StarAlgebra& alg, const StarMatrix& p0)
{
    return {alg, p0, deform_projection_recursive(alg, p0)};
}

void DeformedModule::require_element(const StarMatrix& x) const
{
    if (x.rows() != rank() || x.cols() != 1) {
        throw std::invalid_argument("module element must be a column of length " + std::to_string(rank()));
    }
    if (!(classical_product(p0_, x) == x)) {
        throw std::invalid_argument("column does not satisfy P0 x = x");
    }
}

void DeformedModule::require_endomorphism(const StarMatrix& l) const
{
    if (l.rows() != rank() || l.cols() != rank()) {
        throw std::invalid_argument("endomorphism must be " + std::to_string(rank()) + "x" + std::to_string(rank()));
    }
    if (!(classical_product(classical_product(p0_, l), p0_) == l)) {
        throw std::invalid_argument("matrix does not satisfy P0 L P0 = L");
    }
}

StarMatrix DeformedModule::project(const StarMatrix& x) const
{
    return classical_product(p0_, x);
}

std::vector<StarMatrix> DeformedModule::spanning_set() const
{
    std::vector<StarMatrix> out;
    for (std::size_t j = 0; j < rank(); ++j) {
        out.push_back(project(StarMatrix::unit_column(alg_, rank(), j)));
    }
    return out;
}

StarMatrix iso_I(const DeformedModule& dm, const StarMatrix& q, const StarMatrix& b)
{
    const auto& alg = dm.algebra();
    if (b.rows() != dm.rank() || b.cols() != q.rows()) {
        throw std::invalid_argument("I needs an n x m argument");
    }
    const StarMatrix q0 = q.classical_part();
    if (!(classical_product(dm.p0(), classical_product(b, q0)) == b)) {
        throw std::invalid_argument("argument of I does not satisfy P0 B Q0 = B");
    }
    return star(alg, dm.p(), star(alg, b, q));
}

StarMatrix iso_I_cochains(const DeformedModule& dm, const StarMatrix& q, const StarMatrix& b)
{
    const auto& alg = dm.algebra();
    const auto n = static_cast<std::size_t>(alg.order());
    StarMatrix out = StarMatrix::zero(alg, b.rows(), q.cols());
    for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t s = 0; i + s <= n; ++s) {
            for (std::size_t k = 0; i + s + k <= n; ++k) {
                const StarMatrix inner = cochain_product(alg, k, dm.p(), i, b, s);
                if (inner.is_zero()) {
                    continue;
                }
                for (std::size_t j = 0; i + s + k + j <= n; ++j) {
                    for (std::size_t m = 0; i + s + k + j + m <= n; ++m) {
                        out += cochain_product(alg, m, inner, 0, q, j).shifted(static_cast<int>(i + s + k + j + m));
                    }
                }
            }
        }
    }
    return out;
}

StarMatrix iso_I_inverse(const DeformedModule& dm, const StarMatrix& q, const StarMatrix& l)
{
    const auto& alg = dm.algebra();
    if (l.rows() != dm.rank() || l.cols() != q.rows()) {
        throw std::invalid_argument("I^-1 needs an n x m argument");
    }
    const StarMatrix q0 = q.classical_part();
    StarMatrix s = StarMatrix::zero(alg, l.rows(), l.cols());
    // rest = L - I(s); adding l^r C to s changes it by I(l^r C), whose
    // classical part cancels the order-r coefficient when C is in P0 M Q0.
    StarMatrix rest = l;
    for (int r = 0; r <= alg.order(); ++r) {
        const StarMatrix c = rest.coefficient_matrix(static_cast<std::size_t>(r));
        if (c.is_zero()) {
            continue;
        }
        if (!(classical_product(dm.p0(), classical_product(c, q0)) == c)) {
            throw std::invalid_argument("argument of I^-1 is not in P star M star Q (order " + std::to_string(r) +
                                        ")");
        }
        const StarMatrix step = c.shifted(r);
        s += step;
        rest -= star(alg, dm.p(), star(alg, step, q));
    }
    return s;
}

StarMatrix scalar_unit(const DeformedModule& dm)
{
    return StarMatrix::identity(dm.algebra(), 1);
}

StarMatrix module_action(const DeformedModule& dm, const StarMatrix& x, const Series& a)
{
    dm.require_element(x);
    const auto& alg = dm.algebra();
    return iso_I_inverse(dm, scalar_unit(dm), star(alg, dm.p(), star(alg, x, as_matrix(a))));
}

Series deformed_metric(const DeformedModule& dm, const StarMatrix& x, const StarMatrix& y)
{
    dm.require_element(x);
    dm.require_element(y);
    const auto& alg = dm.algebra();
    return star(alg, star(alg, dm.p(), x).adjoint(), star(alg, dm.p(), y))(0, 0);
}

StarMatrix induced_endo_product(const DeformedModule& dm, const StarMatrix& l, const StarMatrix& s)
{
    dm.require_endomorphism(l);
    dm.require_endomorphism(s);
    return iso_I_inverse(dm, dm.p(), star(dm.algebra(), iso_I(dm, dm.p(), l), iso_I(dm, dm.p(), s)));
}

StarMatrix endo_action(const DeformedModule& dm, const StarMatrix& g, const StarMatrix& x)
{
    dm.require_endomorphism(g);
    dm.require_element(x);
    const StarMatrix unit = scalar_unit(dm);
    return iso_I_inverse(dm, unit, star(dm.algebra(), iso_I(dm, dm.p(), g), iso_I(dm, unit, x)));
}

StarMatrix endo_unit(const DeformedModule& dm)
{
    return iso_I_inverse(dm, dm.p(), dm.p());
}

StarMatrix endo_inverse(const DeformedModule& dm, const StarMatrix& g)
{
    const auto& alg = dm.algebra();
    const StarMatrix one = StarMatrix::identity(alg, dm.rank());
    // I(G) + (1 - P) is block diagonal, so its inverse restricts to the corner.
    const StarMatrix full = mat_series_inverse(alg, iso_I(dm, dm.p(), g) + one - dm.p());
    return iso_I_inverse(dm, dm.p(), star(alg, dm.p(), star(alg, full, dm.p())));
}

StarMatrix ModuleMap::apply(const StarMatrix& x) const
{
    const StarMatrix unit = scalar_unit(source);
    return iso_I_inverse(target, unit, star(source.algebra(), forward, iso_I(source, unit, x)));
}

StarMatrix ModuleMap::apply_inverse(const StarMatrix& y) const
{
    const StarMatrix unit = scalar_unit(target);
    return iso_I_inverse(source, unit, star(target.algebra(), backward, iso_I(target, unit, y)));
}

ModuleMap compose(const ModuleMap& second, const ModuleMap& first)
{
    const auto& alg = first.source.algebra();
    if (!(second.source.p() == first.target.p())) {
        throw std::invalid_argument("module maps are not composable");
    }
    return {first.source, second.target, star(alg, second.forward, first.forward),
            star(alg, first.backward, second.backward)};
}

namespace {

void require_same_classical_data(const DeformedModule& a, const DeformedModule& b)
{
    if (a.rank() != b.rank() || !(a.p0() == b.p0())) {
        throw std::invalid_argument("modules do not deform the same P0");
    }
    if (a.algebra().order() != b.algebra().order() || !same_variables(a.algebra().variables(), b.algebra().variables())) {
        throw std::invalid_argument("modules live over different algebras");
    }
}

} // namespace

ModuleMap module_equivalence(const DeformedModule& dm, const DeformedModule& dm_prime)
{
    require_same_classical_data(dm, dm_prime);
    const auto& alg = dm.algebra();
    const StarMatrix u = idempotent_intertwiner(alg, dm.p(), dm_prime.p());
    const StarMatrix u_inv = mat_series_inverse(alg, u);
    return {dm, dm_prime, star(alg, u, dm.p()), star(alg, u_inv, dm_prime.p())};
}

HermitianEquivalence hermitian_equivalence(const DeformedModule& dm, const DeformedModule& dm_prime)
{
    if (!dm.hermitian() || !dm_prime.hermitian()) {
        throw std::invalid_argument("isometric equivalence needs Hermitian deformations");
    }
    const auto& alg = dm.algebra();
    ModuleMap t = module_equivalence(dm, dm_prime);

    // h'(T x, T y) = I(x)* star H star I(y) with H = F* star F.
    const StarMatrix h = star(alg, t.forward.adjoint(), t.forward);
    StarMatrix g = iso_I_inverse(dm, dm.p(), h);

    CheckReport check{.name = "metric pullback"};
    const auto basis = dm.spanning_set();
    for (std::size_t j = 0; j < basis.size(); ++j) {
        for (std::size_t k = 0; k < basis.size(); ++k) {
            ++check.cases;
            expect_equal(check, "basis (" + std::to_string(j + 1) + ", " + std::to_string(k + 1) + ")",
                         deformed_metric(dm_prime, t.apply(basis[j]), t.apply(basis[k])),
                         deformed_metric(dm, basis[j], endo_action(dm, g, basis[k])));
        }
    }

    const MatrixProduct endo_product = [&dm](const StarMatrix& a, const StarMatrix& b) {
        return induced_endo_product(dm, a, b);
    };
    StarMatrix w = hermitian_factorization(endo_product, g, dm.p0(), dm.p0());
    const StarMatrix w_inv = endo_inverse(dm, w);
    const ModuleMap w_inv_map{dm, dm, iso_I(dm, dm.p(), w_inv), iso_I(dm, dm.p(), w)};
    ModuleMap isometric = compose(t, w_inv_map);
    return {std::move(t), std::move(g), std::move(w), std::move(isometric), std::move(check)};
}

DeformedIsometry deform_isometry(const DeformedModule& dm, const StarMatrix& v0)
{
    if (!dm.hermitian()) {
        throw std::invalid_argument("isometries need a Hermitian deformation");
    }
    if (!(classical_product(v0, dm.p0()) == classical_product(dm.p0(), v0))) {
        throw std::invalid_argument("V0 does not commute with P0");
    }
    const auto& alg = dm.algebra();
    StarMatrix u = deform_unitary(alg, v0);
    StarMatrix p_prime = star(alg, star(alg, u, dm.p()), u.adjoint());
    const DeformedModule rotated(alg, dm.p0(), p_prime);
    const HermitianEquivalence eq = hermitian_equivalence(dm, rotated);
    // U maps P star A^n onto P' star A^n; pull back along the isometry.
    const StarMatrix v_hat = star(alg, eq.isometric.backward, star(alg, u, dm.p()));
    return {std::move(u), std::move(p_prime), iso_I_inverse(dm, dm.p(), v_hat)};
}

} // namespace stardeform
