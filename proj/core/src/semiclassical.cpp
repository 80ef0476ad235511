#include "stardeform/semiclassical.hpp"

#include <stdexcept>

namespace stardeform {

namespace {

const GaussianRational& minus_i()
{
    static const GaussianRational v(Rational(0), Rational(-1));
    return v;
}

void require_classical(const StarMatrix& m, const char* what)
{
    if (!m.is_classical()) {
        throw std::invalid_argument(std::string(what) + " must be l-constant");
    }
}

} // namespace

Coefficient poisson_bracket(const StarAlgebra& alg, const Coefficient& f, const Coefficient& g)
{
    return (alg.apply_cochain(1, f, g) - alg.apply_cochain(1, g, f)) * minus_i();
}

StarMatrix first_order_cochain(const StarAlgebra& alg, const StarMatrix& l, const StarMatrix& s)
{
    if (l.cols() != s.rows()) {
        throw std::invalid_argument("matrix dimension mismatch in C_1");
    }
    std::vector<Coefficient> out;
    out.reserve(l.rows() * s.cols());
    for (std::size_t i = 0; i < l.rows(); ++i) {
        for (std::size_t j = 0; j < s.cols(); ++j) {
            Coefficient acc = alg.coefficient(0);
            for (std::size_t r = 0; r < l.cols(); ++r) {
                acc += alg.apply_cochain(1, l(i, r)[0], s(r, j)[0]);
            }
            out.push_back(std::move(acc));
        }
    }
    return StarMatrix::classical(alg, l.rows(), s.cols(), out);
}

StarMatrix poisson_bracket(const StarAlgebra& alg, const StarMatrix& l, const StarMatrix& s)
{
    return (first_order_cochain(alg, l, s) - first_order_cochain(alg, s, l)) * minus_i();
}

void require_skew_first_order(const StarAlgebra& alg)
{
    if (!alg.cochain(1).is_skew_symmetric()) {
        throw std::invalid_argument("C_1 is not skew-symmetric");
    }
}

VectorField::VectorField(std::vector<Coefficient> components) : components_(std::move(components))
{
    if (components_.empty()) {
        throw std::invalid_argument("vector field needs at least one component");
    }
    for (const auto& c : components_) {
        require_same_variables(c.variables(), components_.front().variables());
    }
    if (components_.size() != components_.front().variables()->size()) {
        throw std::invalid_argument("vector field needs one component per variable");
    }
}

Coefficient VectorField::apply(const Coefficient& f) const
{
    Coefficient acc = f.zero();
    for (std::size_t a = 0; a < components_.size(); ++a) {
        if (!components_[a].is_zero()) {
            acc += components_[a] * f.partial_derivative(a);
        }
    }
    return acc;
}

StarMatrix VectorField::apply(const StarMatrix& m) const
{
    StarMatrix out = m.classical_part();
    for (std::size_t i = 0; i < out.rows(); ++i) {
        for (std::size_t j = 0; j < out.cols(); ++j) {
            out(i, j)[0] = apply(m(i, j)[0]);
        }
    }
    return out;
}

VectorField VectorField::operator-() const
{
    std::vector<Coefficient> c;
    c.reserve(components_.size());
    for (const auto& x : components_) {
        c.push_back(-x);
    }
    return VectorField(std::move(c));
}

bool operator==(const VectorField& a, const VectorField& b)
{
    return a.components_ == b.components_;
}

VectorField commutator(const VectorField& x, const VectorField& y)
{
    if (x.components().size() != y.components().size()) {
        throw std::invalid_argument("vector fields on different spaces");
    }
    std::vector<Coefficient> c;
    c.reserve(x.components().size());
    for (std::size_t a = 0; a < x.components().size(); ++a) {
        c.push_back(x.apply(y.components()[a]) - y.apply(x.components()[a]));
    }
    return VectorField(std::move(c));
}

VectorField hamiltonian_vector_field(const StarAlgebra& alg, const Coefficient& f)
{
    std::vector<Coefficient> c;
    c.reserve(alg.variables()->size());
    for (std::size_t a = 0; a < alg.variables()->size(); ++a) {
        c.push_back(poisson_bracket(alg, alg.variable(a), f));
    }
    return VectorField(std::move(c));
}

StarMatrix module_bracket(const DeformedModule& dm, const StarMatrix& x, const Coefficient& a)
{
    const auto& alg = dm.algebra();
    require_skew_first_order(alg);
    require_classical(x, "module element");
    dm.require_element(x);
    const StarMatrix bracket = x.map([&](const Series& xi) { return alg.embed(poisson_bracket(alg, xi[0], a)); });
    return classical_product(dm.p0(), bracket);
}

StarMatrix module_bracket_from_action(const DeformedModule& dm, const StarMatrix& x, const Coefficient& a)
{
    const auto& alg = dm.algebra();
    require_skew_first_order(alg);
    require_classical(x, "module element");
    const StarMatrix r1 = module_action(dm, x, alg.embed(a)).coefficient_matrix(1);
    return r1 * (GaussianRational(2) * minus_i());
}

StarMatrix module_curvature(const DeformedModule& dm, const Coefficient& a1, const Coefficient& a2,
                            const StarMatrix& x)
{
    const auto& alg = dm.algebra();
    return module_bracket(dm, module_bracket(dm, x, a1), a2) - module_bracket(dm, module_bracket(dm, x, a2), a1) -
           module_bracket(dm, x, poisson_bracket(alg, a1, a2));
}

LeviCivitaConnection::LeviCivitaConnection(StarMatrix p0) : p0_(std::move(p0))
{
    require_classical_idempotent(p0_);
}

StarMatrix LeviCivitaConnection::covariant_derivative(const VectorField& v, const StarMatrix& x) const
{
    require_classical(x, "section");
    if (x.rows() != p0_.rows() || x.cols() != 1) {
        throw std::invalid_argument("section must be a column of length " + std::to_string(p0_.rows()));
    }
    return classical_product(p0_, v.apply(x));
}

StarMatrix LeviCivitaConnection::curvature(const VectorField& x_field, const VectorField& y_field,
                                           const StarMatrix& x) const
{
    return covariant_derivative(x_field, covariant_derivative(y_field, x)) -
           covariant_derivative(y_field, covariant_derivative(x_field, x)) -
           covariant_derivative(commutator(x_field, y_field), x);
}

FibredBracket fibred_bracket(const DeformedModule& dm, const StarMatrix& l0, const StarMatrix& u)
{
    const auto& alg = dm.algebra();
    require_skew_first_order(alg);
    require_classical(l0, "endomorphism");
    require_classical(u, "central element");
    dm.require_endomorphism(l0);

    // u = f P0 with f read off from the first nonzero entry of P0.
    const StarMatrix& p0 = dm.p0();
    bool central = false;
    if (u.rows() == p0.rows() && u.cols() == p0.cols()) {
        for (std::size_t k = 0; k < p0.entries().size() && !central; ++k) {
            const Coefficient& p = p0.entries()[k][0];
            if (p.is_zero()) {
                continue;
            }
            const Coefficient f = u.entries()[k][0].lifted(CoefficientDomain::rational) *
                                  p.lifted(CoefficientDomain::rational).invert();
            central = true;
            for (std::size_t m = 0; m < p0.entries().size() && central; ++m) {
                central = f * p0.entries()[m][0] == u.entries()[m][0];
            }
        }
    }
    if (!central) {
        throw std::invalid_argument("element is not of the form f P0");
    }

    const StarMatrix lu = induced_endo_product(dm, l0, u).coefficient_matrix(1);
    const StarMatrix ul = induced_endo_product(dm, u, l0).coefficient_matrix(1);
    return {(lu - ul) * minus_i(), classical_product(classical_product(p0, poisson_bracket(alg, l0, u)), p0)};
}

} // namespace stardeform
