#include "stardeform/morita.hpp"

#include <stdexcept>

namespace stardeform {

namespace {

StarMatrix as_matrix(const Series& a)
{
    return {1, 1, a};
}

void require_column(const StarMatrix& x, std::size_t n)
{
    if (x.rows() != n || x.cols() != 1) {
        throw std::invalid_argument("expected a column of length " + std::to_string(n) + ", got " +
                                    std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
    }
}

} // namespace

Series canonical_inner(const StarAlgebra& alg, const StarMatrix& x, const StarMatrix& y)
{
    require_column(x, x.rows());
    require_column(y, x.rows());
    return star(alg, x.adjoint(), y)(0, 0);
}

EquivalenceBimodule::EquivalenceBimodule(StarAlgebra alg, StarMatrix projection, bool deformed) :
    alg_(std::move(alg)), projection_(std::move(projection)), deformed_(deformed)
{
}

EquivalenceBimodule EquivalenceBimodule::classical(const StarAlgebra& alg, const StarMatrix& p0)
{
    require_classical_idempotent(p0);
    if (!(p0.adjoint() == p0)) {
        throw std::invalid_argument("P0 is not Hermitian");
    }
    return {alg, p0, false};
}

EquivalenceBimodule EquivalenceBimodule::deformed(const DeformedModule& dm)
{
    if (!dm.hermitian()) {
        throw std::invalid_argument("the deformed projection is not Hermitian");
    }
    return {dm.algebra(), dm.p(), true};
}

StarMatrix EquivalenceBimodule::product(const StarMatrix& a, const StarMatrix& b) const
{
    return deformed_ ? star(alg_, a, b) : classical_product(a, b);
}

Series EquivalenceBimodule::product(const Series& a, const Series& b) const
{
    return deformed_ ? alg_.star(a, b) : cauchy_product(a, b);
}

Series EquivalenceBimodule::inner(const StarMatrix& x, const StarMatrix& y) const
{
    require_column(x, rank());
    require_column(y, rank());
    return product(x.adjoint(), y)(0, 0);
}

StarMatrix EquivalenceBimodule::act(const StarMatrix& x, const Series& a) const
{
    return product(x, as_matrix(a));
}

StarMatrix EquivalenceBimodule::theta(const StarMatrix& x, const StarMatrix& y, const StarMatrix& z) const
{
    return act(x, inner(y, z));
}

StarMatrix EquivalenceBimodule::project(const StarMatrix& v) const
{
    require_column(v, rank());
    return product(projection_, v);
}

std::vector<StarMatrix> EquivalenceBimodule::spanning_set() const
{
    std::vector<StarMatrix> out;
    for (std::size_t j = 0; j < rank(); ++j) {
        out.push_back(project(StarMatrix::unit_column(alg_, rank(), j)));
    }
    return out;
}

StarMatrix EquivalenceBimodule::generator(std::size_t i, const Series& tau) const
{
    return act(project(StarMatrix::unit_column(alg_, rank(), i)), tau);
}

Series EquivalenceBimodule::trace() const
{
    return stardeform::trace(projection_);
}

CheckReport verify_strongly_full(const EquivalenceBimodule& b, const Series& tau)
{
    CheckReport report{.name = "strong fullness"};
    ++report.cases;
    if (!b.is_deformed() && !StarMatrix(1, 1, tau).is_classical()) {
        report.fail("tau", std::nullopt, "classical witness must be l-constant");
        return report;
    }
    const Series lhs = b.product(b.product(tau.conj(), b.trace()), tau);
    expect_equal(report, "tau* tr P tau", lhs, b.algebra().one());
    return report;
}

Series deform_full_witness(const DeformedModule& dm, const Coefficient& tau0)
{
    const auto& alg = dm.algebra();
    const Series t0 = alg.embed(tau0);
    const Series s0 = trace(dm.p0());
    if (!(s0 * tau0 * tau0.conj() == alg.one())) {
        throw std::invalid_argument("classical witness does not satisfy tr P0 tau0 tau0* = 1");
    }
    const Series s = trace(dm.p());
    Series tau = t0;
    for (int k = 1; k <= alg.order(); ++k) {
        const Series rest = alg.star(alg.star(tau.conj(), s), tau) - alg.one();
        const auto b = static_cast<std::size_t>(k);
        if (rest[b].is_zero()) {
            continue;
        }
        // The change at order k is tr P0 (tau0* t + t* tau0) = -b_k.
        tau[b] += rest[b] * tau0 * GaussianRational(Rational(-1, 2));
    }
    return tau;
}

CheckReport verify_nice_identities(const EquivalenceBimodule& b, const Series& tau,
                                   const std::vector<std::pair<StarMatrix, StarMatrix>>& samples)
{
    CheckReport report{.name = b.is_deformed() ? "nice identities (deformed)" : "nice identities (classical)"};
    std::vector<StarMatrix> gens;
    for (std::size_t i = 0; i < b.rank(); ++i) {
        gens.push_back(b.generator(i, tau));
    }

    ++report.cases;
    Series sum = b.algebra().zero();
    for (const auto& g : gens) {
        sum += b.inner(g, g);
    }
    expect_equal(report, "NiceII", sum, b.algebra().one());

    const auto basis = b.spanning_set();
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const auto& [x, y] = samples[k];
        if (!(b.project(x) == x) || !(b.project(y) == y)) {
            throw std::invalid_argument("sample " + std::to_string(k + 1) + " is not in the module");
        }
        for (std::size_t j = 0; j < basis.size(); ++j) {
            ++report.cases;
            StarMatrix lhs = StarMatrix::zero(b.algebra(), b.rank(), 1);
            for (const auto& g : gens) {
                lhs += b.theta(x, g, b.theta(g, y, basis[j]));
            }
            expect_equal(report, "NiceI sample " + std::to_string(k + 1) + " basis " + std::to_string(j + 1), lhs,
                         b.theta(x, y, basis[j]));
        }
    }
    return report;
}

CheckReport theta_adjointability(const EquivalenceBimodule& b, const StarMatrix& x, const StarMatrix& y,
                                 const StarMatrix& z, const StarMatrix& w)
{
    CheckReport report{.name = "theta adjointability"};
    ++report.cases;
    expect_equal(report, "<Theta_{x,y} z, w> = <z, Theta_{y,x} w>", b.inner(b.theta(x, y, z), w),
                 b.inner(z, b.theta(y, x, w)));
    return report;
}

} // namespace stardeform
