#include <gtest/gtest.h>

#include <stdexcept>

#include "stardeform/semiclassical.hpp"
#include "support.hpp"

using namespace stardeform;
using namespace stardeform::testing;

namespace {

// Bracket of a constant Poisson tensor, written out with partial derivatives.
Coefficient theta_bracket(const std::vector<std::vector<Rational>>& theta, const Coefficient& f, const Coefficient& g)
{
    Coefficient acc = f.zero();
    for (std::size_t a = 0; a < theta.size(); ++a) {
        for (std::size_t b = 0; b < theta.size(); ++b) {
            if (theta[a][b] != 0) {
                acc += f.partial_derivative(a) * g.partial_derivative(b) * GaussianRational(theta[a][b]);
            }
        }
    }
    return acc;
}

StarMatrix column(const StarAlgebra& alg, const std::vector<Coefficient>& entries)
{
    return StarMatrix::classical(alg, entries.size(), 1, entries);
}

StarMatrix scaled(const StarMatrix& x, const Coefficient& g)
{
    return x.map([&](const Series& s) { return s * g; });
}

// P0 (X P0)(Y P0) - P0 (Y P0)(X P0), the curvature of the projected connection
// as a matrix, with X and Y applied entrywise through their components.
StarMatrix grassmann_curvature(const StarAlgebra& alg, const StarMatrix& p0, const std::vector<Coefficient>& xs,
                               const std::vector<Coefficient>& ys)
{
    auto along = [&](const std::vector<Coefficient>& v) {
        return p0.map([&](const Series& s) {
            Coefficient acc = alg.coefficient(0);
            for (std::size_t a = 0; a < v.size(); ++a) {
                acc += v[a] * s[0].partial_derivative(a);
            }
            return alg.embed(acc);
        });
    };
    const StarMatrix dx = along(xs);
    const StarMatrix dy = along(ys);
    return classical_product(p0, classical_product(dx, dy) - classical_product(dy, dx));
}

Coefficient random_coefficient(const StarAlgebra& alg, Sampler& s, unsigned degree = 2)
{
    return s.coefficient(alg.variables(), alg.domain(), degree, 3, true);
}

class Semiclassical : public ::testing::Test {
protected:
    StarAlgebra alg = moyal(3);
    DeformedModule bott = DeformedModule::fedosov(alg, bott_projection(alg));
    Coefficient x = alg.variable(0);
    Coefficient p = alg.variable(1);

    StarMatrix random_element(Sampler& s, unsigned degree = 1) const
    {
        return bott.project(random_classical_matrix(alg, s, 2, 1, degree));
    }
};

} // namespace

TEST_F(Semiclassical, CanonicalBracket)
{
    EXPECT_EQ(alg.apply_cochain(1, x, p), alg.coefficient(GaussianRational(Rational(0), Rational(1, 2))));
    EXPECT_EQ(alg.apply_cochain(1, p, x), alg.coefficient(GaussianRational(Rational(0), Rational(-1, 2))));
    EXPECT_EQ(poisson_bracket(alg, x, p), alg.coefficient(1));
    EXPECT_EQ(poisson_bracket(alg, x * x, p), x * GaussianRational(2));
    EXPECT_TRUE(poisson_bracket(alg, x * p, x * p).is_zero());
}

TEST_F(Semiclassical, BracketIsPoisson)
{
    const auto theta = standard_symplectic(1);
    Sampler s(6001);
    for (int k = 0; k < 30; ++k) {
        const auto f = random_coefficient(alg, s);
        const auto g = random_coefficient(alg, s);
        const auto h = random_coefficient(alg, s);
        const auto fg = poisson_bracket(alg, f, g);
        EXPECT_EQ(fg, theta_bracket(theta, f, g));
        EXPECT_EQ(fg, -poisson_bracket(alg, g, f));
        EXPECT_EQ(fg.conj(), poisson_bracket(alg, f.conj(), g.conj()));
        EXPECT_EQ(poisson_bracket(alg, f, g * h), poisson_bracket(alg, f, g) * h + g * poisson_bracket(alg, f, h));
        const auto jacobi = poisson_bracket(alg, f, poisson_bracket(alg, g, h)) +
                            poisson_bracket(alg, g, poisson_bracket(alg, h, f)) +
                            poisson_bracket(alg, h, poisson_bracket(alg, f, g));
        EXPECT_TRUE(jacobi.is_zero());
    }
}

TEST(SemiclassicalTensor, GeneralConstantTensor)
{
    const std::vector<std::vector<Rational>> theta = {
        {0, 2, Rational(1, 3), 0}, {-2, 0, 0, -1}, {Rational(-1, 3), 0, 0, 5}, {0, 1, -5, 0}};
    const auto alg = moyal_stack(2, theta, 2);
    Sampler s(6002);
    for (int k = 0; k < 20; ++k) {
        const auto f = s.coefficient(alg.variables(), alg.domain(), 2, 3, true);
        const auto g = s.coefficient(alg.variables(), alg.domain(), 2, 3, true);
        EXPECT_EQ(poisson_bracket(alg, f, g), theta_bracket(theta, f, g));
    }
}

TEST_F(Semiclassical, HamiltonianVectorFields)
{
    const auto xx = hamiltonian_vector_field(alg, x);
    EXPECT_TRUE(xx.components()[0].is_zero());
    EXPECT_EQ(xx.components()[1], alg.coefficient(-1));
    Sampler s(6003);
    for (int k = 0; k < 20; ++k) {
        const auto f = random_coefficient(alg, s);
        const auto g = random_coefficient(alg, s);
        const auto h = random_coefficient(alg, s);
        EXPECT_EQ(hamiltonian_vector_field(alg, f).apply(g), poisson_bracket(alg, g, f));
        // X_{f,g} = -[X_f, X_g] by the Jacobi identity.
        EXPECT_EQ(commutator(hamiltonian_vector_field(alg, f), hamiltonian_vector_field(alg, g)),
                  -hamiltonian_vector_field(alg, poisson_bracket(alg, f, g)));
        const auto xf = hamiltonian_vector_field(alg, f);
        EXPECT_EQ(xf.apply(g * h), xf.apply(g) * h + g * xf.apply(h));
    }
    EXPECT_THROW((void)VectorField({x}), std::invalid_argument);
}

TEST_F(Semiclassical, ModuleBracketOnFreeRankOne)
{
    const DeformedModule free(alg, StarMatrix::identity(alg, 1), StarMatrix::identity(alg, 1));
    Sampler s(6004);
    for (int k = 0; k < 10; ++k) {
        const auto a = random_coefficient(alg, s);
        const auto f = random_coefficient(alg, s);
        EXPECT_EQ(module_bracket(free, column(alg, {a}), f), column(alg, {poisson_bracket(alg, a, f)}));
    }
}

TEST_F(Semiclassical, ModuleBracketMatchesFirstOrderAction)
{
    Sampler s(6005);
    for (int k = 0; k < 10; ++k) {
        const auto e = random_element(s, 2);
        const auto a = random_coefficient(alg, s);
        EXPECT_EQ(module_bracket(bott, e, a), module_bracket_from_action(bott, e, a));
        EXPECT_TRUE(module_bracket(bott, e, alg.coefficient(1)).is_zero());
    }
}

TEST_F(Semiclassical, ModuleBracketLeibnizRules)
{
    Sampler s(6006);
    for (int k = 0; k < 20; ++k) {
        const auto e = random_element(s, 2);
        const auto f = random_coefficient(alg, s);
        const auto g = random_coefficient(alg, s);
        EXPECT_EQ(module_bracket(bott, scaled(e, g), f),
                  scaled(module_bracket(bott, e, f), g) + scaled(e, poisson_bracket(alg, g, f)));
        EXPECT_EQ(module_bracket(bott, e, f * g),
                  scaled(module_bracket(bott, e, f), g) + scaled(module_bracket(bott, e, g), f));
    }
}

TEST(SemiclassicalErrors, NonSkewFirstOrderCochainIsRejected)
{
    CochainStack stack;
    stack.dim = 2;
    stack.cochains = {Cochain::pointwise(), Cochain({{GaussianRational(1), unit_index(0), unit_index(0)}})};
    stack.vey_orders = {0, 1};
    const StarAlgebra alg(xp(), CoefficientDomain::rational, 2, stack);
    const DeformedModule free(alg, StarMatrix::identity(alg, 1), StarMatrix::identity(alg, 1));
    EXPECT_THROW(require_skew_first_order(alg), std::invalid_argument);
    EXPECT_THROW((void)module_bracket(free, StarMatrix::identity(alg, 1), alg.variable(0)), std::invalid_argument);
}

TEST_F(Semiclassical, LeviCivitaConnection)
{
    const LeviCivitaConnection nabla(bott.p0());
    Sampler s(6007);
    for (const auto& f : {x, p, x * p}) {
        for (int k = 0; k < 5; ++k) {
            const auto e = random_element(s, 2);
            EXPECT_EQ(nabla.covariant_derivative(hamiltonian_vector_field(alg, f), e), module_bracket(bott, e, f));
        }
    }
    for (int k = 0; k < 10; ++k) {
        const auto e = random_element(s, 2);
        const auto g = random_coefficient(alg, s);
        const VectorField v({random_coefficient(alg, s, 1), random_coefficient(alg, s, 1)});
        EXPECT_EQ(nabla.covariant_derivative(v, scaled(e, g)),
                  scaled(nabla.covariant_derivative(v, e), g) + scaled(e, v.apply(g)));
    }
}

TEST_F(Semiclassical, ConstantProjectionIsFlat)
{
    const auto p0 = diagonal_matrix(alg, {1, 0});
    const auto dm = DeformedModule::fedosov(alg, p0);
    EXPECT_EQ(dm.p(), p0);
    const LeviCivitaConnection nabla(p0);
    Sampler s(6008);
    for (int k = 0; k < 5; ++k) {
        const auto e = dm.project(random_classical_matrix(alg, s, 2, 1, 2));
        const VectorField v({random_coefficient(alg, s, 1), random_coefficient(alg, s, 1)});
        const VectorField w({random_coefficient(alg, s, 1), random_coefficient(alg, s, 1)});
        EXPECT_EQ(nabla.covariant_derivative(v, e), v.apply(e));
        EXPECT_TRUE(nabla.curvature(v, w, e).is_zero());
        EXPECT_TRUE(module_curvature(dm, random_coefficient(alg, s), random_coefficient(alg, s), e).is_zero());
    }
}

TEST_F(Semiclassical, BottCurvatureGolden)
{
    const auto e1 = bott.project(StarMatrix::unit_column(alg, 2, 0));
    const auto oracle = classical_product(
        grassmann_curvature(alg, bott.p0(), hamiltonian_vector_field(alg, x).components(),
                            hamiltonian_vector_field(alg, p).components()),
        e1);
    const auto golden = parse_matrix(alg, 2, 1, {"(2*i)/(1 + x^2 + p^2)^3", "(2*i*x - 2*p)/(1 + x^2 + p^2)^3"});
    ASSERT_EQ(oracle, golden);

    const LeviCivitaConnection nabla(bott.p0());
    const auto connection = nabla.curvature(hamiltonian_vector_field(alg, x), hamiltonian_vector_field(alg, p), e1);
    const auto module = module_curvature(bott, x, p, e1);
    EXPECT_FALSE(module.is_zero());
    EXPECT_EQ(connection, golden);
    // The bracket curvature is the connection curvature with the opposite sign.
    EXPECT_EQ(module, -golden);
    EXPECT_FALSE(module == connection);
}

TEST_F(Semiclassical, CurvatureOnHamiltonianPairs)
{
    const LeviCivitaConnection nabla(bott.p0());
    Sampler s(6009);
    const std::vector<std::pair<Coefficient, Coefficient>> pairs = {{x, p}, {x * x, p}, {x, x * p}};
    for (const auto& [f, g] : pairs) {
        const auto xf = hamiltonian_vector_field(alg, f);
        const auto xg = hamiltonian_vector_field(alg, g);
        const auto matrix = grassmann_curvature(alg, bott.p0(), xf.components(), xg.components());
        for (int k = 0; k < 3; ++k) {
            const auto e = random_element(s, 1);
            const auto connection = nabla.curvature(xf, xg, e);
            EXPECT_EQ(connection, classical_product(matrix, e));
            EXPECT_EQ(module_curvature(bott, f, g, e), -connection);
            EXPECT_TRUE(nabla.curvature(xf, xf, e).is_zero());
        }
    }
}

TEST_F(Semiclassical, CurvatureIsLinearAndAntisymmetric)
{
    Sampler s(6010);
    for (int k = 0; k < 5; ++k) {
        const auto e = random_element(s, 1);
        const auto f = random_coefficient(alg, s, 1);
        const auto g = random_coefficient(alg, s, 1);
        const auto h = random_coefficient(alg, s, 1);
        EXPECT_EQ(module_curvature(bott, f, g, scaled(e, h)), scaled(module_curvature(bott, f, g, e), h));
        EXPECT_EQ(module_curvature(bott, f, g, e), -module_curvature(bott, g, f, e));
        EXPECT_TRUE(module_curvature(bott, f, f, e).is_zero());
    }
}

TEST_F(Semiclassical, FibredBracketOnCenter)
{
    const auto& p0 = bott.p0();
    const auto fp = scaled(p0, x);
    const auto gp = scaled(p0, p);
    const auto b = fibred_bracket(bott, fp, gp);
    EXPECT_TRUE(b.agree());
    EXPECT_EQ(b.projected, p0);
    EXPECT_EQ(b.from_product, scaled(p0, poisson_bracket(alg, x, p)));

    const auto unit = fibred_bracket(bott, fp, p0);
    EXPECT_TRUE(unit.agree());
    EXPECT_TRUE(unit.from_product.is_zero());
    EXPECT_THROW((void)fibred_bracket(bott, fp, StarMatrix::identity(alg, 2)), std::invalid_argument);
}

TEST_F(Semiclassical, FibredBracketOnEndomorphisms)
{
    Sampler s(6011);
    const auto& p0 = bott.p0();
    for (int k = 0; k < 2; ++k) {
        const auto l0 = classical_product(classical_product(p0, random_classical_matrix(alg, s, 2, 2, 1)), p0);
        const auto u = scaled(p0, random_coefficient(alg, s, 1));
        const auto b = fibred_bracket(bott, l0, u);
        EXPECT_TRUE(b.agree());
        EXPECT_EQ(induced_endo_product(bott, l0, u).coefficient_matrix(1),
                  classical_product(classical_product(p0, first_order_cochain(alg, l0, u)), p0));
    }
}

TEST_F(Semiclassical, FibredBracketForConstantProjection)
{
    const auto p0 = diagonal_matrix(alg, {1, 0});
    const auto dm = DeformedModule::fedosov(alg, p0);
    const auto theta = standard_symplectic(1);
    Sampler s(6012);
    for (int k = 0; k < 5; ++k) {
        const auto l0 = classical_product(classical_product(p0, random_classical_matrix(alg, s, 2, 2, 2)), p0);
        const auto f = random_coefficient(alg, s);
        const auto b = fibred_bracket(dm, l0, scaled(p0, f));
        EXPECT_TRUE(b.agree());
        // Only the (1, 1) corner survives: {L_11, f}.
        const auto expected = StarMatrix::classical(
            alg, 2, 2, {theta_bracket(theta, l0(0, 0)[0], f), alg.coefficient(0), alg.coefficient(0), alg.coefficient(0)});
        EXPECT_EQ(b.projected, expected);
    }
}
