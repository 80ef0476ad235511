#include <gtest/gtest.h>

#include <stdexcept>

#include "stardeform/module.hpp"
#include "support.hpp"

using namespace stardeform;
using namespace stardeform::testing;

namespace {

// Random module element P0 v for a polynomial column v.
StarMatrix random_element(const DeformedModule& dm, Sampler& s, unsigned degree = 1)
{
    return dm.project(random_classical_matrix(dm.algebra(), s, dm.rank(), 1, degree));
}

Series random_scalar(const StarAlgebra& alg, Sampler& s, unsigned degree = 1)
{
    return s.series(alg.variables(), alg.domain(), alg.order(), degree, 2, true);
}

// First-order cochain applied entrywise: (C_1(X, Y))_ab = sum_c C_1(X_ac, Y_cb).
StarMatrix c1_matrix(const StarAlgebra& alg, const StarMatrix& x, const StarMatrix& y)
{
    StarMatrix out = StarMatrix::zero(alg, x.rows(), y.cols());
    for (std::size_t a = 0; a < x.rows(); ++a) {
        for (std::size_t b = 0; b < y.cols(); ++b) {
            Coefficient acc = alg.coefficient(0);
            for (std::size_t c = 0; c < x.cols(); ++c) {
                acc += alg.apply_cochain(1, x(a, c)[0], y(c, b)[0]);
            }
            out(a, b) = alg.embed(acc);
        }
    }
    return out;
}

class BottModule : public ::testing::Test {
protected:
    StarAlgebra alg = moyal(3);
    DeformedModule dm = DeformedModule::fedosov(alg, bott_projection(alg));
};

} // namespace

TEST_F(BottModule, IsHermitian)
{
    EXPECT_TRUE(dm.hermitian());
    EXPECT_THROW((void)DeformedModule(alg, bott_projection(alg), bott_projection(alg)), std::invalid_argument);
}

TEST_F(BottModule, IsomorphismMatchesCochainExpansion)
{
    const auto q = diagonal_matrix(alg, {1, 0});
    Sampler s(5001);
    for (int k = 0; k < 5; ++k) {
        StarMatrix b = classical_product(classical_product(dm.p0(), random_matrix(alg, s, 2, 2, 1)), q);
        EXPECT_EQ(iso_I(dm, q, b), iso_I_cochains(dm, q, b));
        EXPECT_EQ(iso_I(dm, q, b).classical_part(), b.classical_part());
    }
    EXPECT_THROW((void)iso_I(dm, q, StarMatrix::identity(alg, 2)), std::invalid_argument);
}

TEST_F(BottModule, IsomorphismRoundTrip)
{
    const auto unit = scalar_unit(dm);
    Sampler s(5002);
    for (int k = 0; k < 30; ++k) {
        const StarMatrix b = classical_product(dm.p0(), random_matrix(alg, s, 2, 1, 1));
        const auto l = iso_I(dm, unit, b);
        EXPECT_EQ(iso_I_inverse(dm, unit, l), b) << "sample " << k;
        EXPECT_EQ(iso_I(dm, unit, iso_I_inverse(dm, unit, l)), l);
    }
    EXPECT_EQ(iso_I_inverse(dm, unit, StarMatrix::zero(alg, 2, 1)), StarMatrix::zero(alg, 2, 1));
    EXPECT_THROW((void)iso_I_inverse(dm, unit, StarMatrix::unit_column(alg, 2, 0)), std::invalid_argument);
}

TEST_F(BottModule, RightModuleLaw)
{
    Sampler s(5003);
    for (int k = 0; k < 10; ++k) {
        const auto x = random_element(dm, s);
        const auto a = random_scalar(alg, s);
        const auto b = random_scalar(alg, s);
        EXPECT_EQ(module_action(dm, module_action(dm, x, a), b), module_action(dm, x, alg.star(a, b)));
        EXPECT_EQ(module_action(dm, x, alg.one()), x);
        EXPECT_EQ(module_action(dm, x, a).classical_part(), classical_product(x, StarMatrix(1, 1, a)).classical_part());
    }
}

TEST_F(BottModule, FirstOrderActionTerm)
{
    Sampler s(5004);
    for (int k = 0; k < 10; ++k) {
        const auto x = random_element(dm, s, 2);
        const auto a = alg.embed(s.coefficient(alg.variables(), alg.domain(), 2, 3, true));
        const auto r1 = module_action(dm, x, a).coefficient_matrix(1);
        EXPECT_EQ(r1, classical_product(dm.p0(), c1_matrix(alg, x, StarMatrix(1, 1, a))));
    }
}

TEST_F(BottModule, MetricLaws)
{
    Sampler s(5005);
    for (int k = 0; k < 10; ++k) {
        const auto x = random_element(dm, s);
        const auto y = random_element(dm, s);
        const auto a = random_scalar(alg, s);
        EXPECT_EQ(deformed_metric(dm, x, module_action(dm, y, a)), alg.star(deformed_metric(dm, x, y), a));
        EXPECT_EQ(deformed_metric(dm, module_action(dm, x, a), y), alg.star(a.conj(), deformed_metric(dm, x, y)));
        EXPECT_EQ(deformed_metric(dm, x, y).conj(), deformed_metric(dm, y, x));
    }
}

TEST_F(BottModule, MetricIsPositiveAtSamplePoints)
{
    Sampler s(5006);
    const auto x = random_element(dm, s);
    const auto hxx = deformed_metric(dm, x, x);
    for (int k = 0; k < 10; ++k) {
        const Rational pt[] = {s.small_rational(), s.small_rational()};
        const auto values = hxx.evaluate_at(pt);
        EXPECT_GE(series_sign(values), 0);
        EXPECT_EQ(series_sign(values) == 0, values[0].is_zero());
    }
}

TEST_F(BottModule, InducedEndomorphismProduct)
{
    Sampler s(5007);
    const auto p0 = dm.p0();
    auto endo = [&](unsigned degree) {
        return classical_product(classical_product(p0, random_classical_matrix(alg, s, 2, 2, degree)), p0);
    };
    const auto unit = endo_unit(dm);
    EXPECT_EQ(unit.classical_part(), p0);
    EXPECT_FALSE(unit == p0);
    EXPECT_EQ(unit.adjoint(), unit);
    for (int k = 0; k < 3; ++k) {
        const auto l = endo(1);
        const auto m = endo(1);
        const auto n = endo(1);
        const auto lm = induced_endo_product(dm, l, m);
        EXPECT_EQ(lm.coefficient_matrix(1), classical_product(classical_product(p0, c1_matrix(alg, l, m)), p0));
        EXPECT_EQ(induced_endo_product(dm, lm, n), induced_endo_product(dm, l, induced_endo_product(dm, m, n)));
        EXPECT_EQ(lm.adjoint(), induced_endo_product(dm, m.adjoint(), l.adjoint()));
        EXPECT_EQ(induced_endo_product(dm, unit, l), l);
        EXPECT_EQ(induced_endo_product(dm, l, unit), l);
    }
}

TEST_F(BottModule, EquivalenceOfFedosovAndRecursive)
{
    const auto other = DeformedModule::recursive(alg, dm.p0());
    const auto t = module_equivalence(dm, other);
    Sampler s(5008);
    for (int k = 0; k < 5; ++k) {
        const auto x = random_element(dm, s);
        const auto a = random_scalar(alg, s);
        EXPECT_EQ(t.apply(module_action(dm, x, a)), module_action(other, t.apply(x), a));
        EXPECT_EQ(t.apply(x).classical_part(), x.classical_part());
        EXPECT_EQ(t.apply_inverse(t.apply(x)), x);
    }
    const auto self = module_equivalence(dm, dm);
    const auto x = random_element(dm, s);
    EXPECT_EQ(self.apply(x), x);
}

TEST_F(BottModule, IsometricEquivalence)
{
    const auto other = DeformedModule::recursive(alg, dm.p0());
    ASSERT_TRUE(other.hermitian());
    const auto eq = hermitian_equivalence(dm, other);
    EXPECT_TRUE(eq.pullback_check.passed());
    EXPECT_EQ(eq.metric_pullback.classical_part(), dm.p0());
    EXPECT_EQ(eq.metric_pullback.adjoint(), eq.metric_pullback);
    EXPECT_EQ(induced_endo_product(dm, eq.factor.adjoint(), eq.factor), eq.metric_pullback);
    Sampler s(5009);
    for (int k = 0; k < 5; ++k) {
        const auto x = random_element(dm, s);
        const auto y = random_element(dm, s);
        const auto a = random_scalar(alg, s);
        const auto& t = eq.isometric;
        EXPECT_EQ(deformed_metric(other, t.apply(x), t.apply(y)), deformed_metric(dm, x, y));
        EXPECT_EQ(t.apply(module_action(dm, x, a)), module_action(other, t.apply(x), a));
    }
}

TEST_F(BottModule, SelfEquivalenceIsTrivial)
{
    const auto eq = hermitian_equivalence(dm, dm);
    EXPECT_EQ(eq.metric_pullback, endo_unit(dm));
    EXPECT_EQ(eq.factor, endo_unit(dm));
    Sampler s(5010);
    const auto x = random_element(dm, s);
    EXPECT_EQ(eq.isometric.apply(x), x);
}

TEST_F(BottModule, DeformedIsometries)
{
    Sampler s(5011);
    const auto p0 = dm.p0();
    const auto id = StarMatrix::identity(alg, 2);
    const std::vector<StarMatrix> unitaries = {
        diagonal_matrix(alg, {GaussianRational::i(), GaussianRational::i()}),
        p0 * GaussianRational(2) - id,
        p0 * GaussianRational::i() + (id - p0),
    };
    for (const auto& v0 : unitaries) {
        const auto iso = deform_isometry(dm, v0);
        const auto& v = iso.endomorphism;
        EXPECT_EQ(v.classical_part(), classical_product(v0, p0));
        for (int k = 0; k < 3; ++k) {
            const auto x = random_element(dm, s);
            const auto y = random_element(dm, s);
            EXPECT_EQ(deformed_metric(dm, endo_action(dm, v, x), endo_action(dm, v, y)), deformed_metric(dm, x, y));
        }
    }
    const auto trivial = deform_isometry(dm, id);
    EXPECT_EQ(trivial.endomorphism, endo_unit(dm));
    EXPECT_EQ(trivial.rotated_projection, dm.p());
    EXPECT_THROW((void)deform_isometry(dm, parse_matrix(alg, 2, 2, {"0", "1", "1", "0"})), std::invalid_argument);
}

TEST(ModuleDegeneration, FlatTensorIsClassical)
{
    const auto alg = flat(3);
    const auto p0 = bott_projection(alg);
    const auto dm = DeformedModule::fedosov(alg, p0);
    EXPECT_EQ(dm.p(), p0);
    Sampler s(5012);
    const auto x = dm.project(random_classical_matrix(alg, s, 2, 1, 1));
    const auto y = dm.project(random_classical_matrix(alg, s, 2, 1, 1));
    const auto a = s.series(alg.variables(), alg.domain(), 3, 1, 2, true);
    EXPECT_EQ(iso_I(dm, scalar_unit(dm), x), x);
    EXPECT_EQ(module_action(dm, x, a), classical_product(x, StarMatrix(1, 1, a)));
    EXPECT_EQ(deformed_metric(dm, x, y), classical_product(x.adjoint(), y)(0, 0));
    const auto v0 = p0 * GaussianRational(2) - StarMatrix::identity(alg, 2);
    EXPECT_EQ(deform_isometry(dm, v0).endomorphism, classical_product(v0, p0));
    const auto eq = module_equivalence(dm, DeformedModule::recursive(alg, p0));
    EXPECT_EQ(eq.apply(x), x);
}

TEST(ModuleDegeneration, FreeRankOne)
{
    const auto alg = moyal(3);
    const auto dm = DeformedModule::fedosov(alg, StarMatrix::identity(alg, 1));
    Sampler s(5013);
    const auto x = random_classical_matrix(alg, s, 1, 1, 2);
    const auto a = s.series(alg.variables(), alg.domain(), 3, 2, 2, true);
    EXPECT_EQ(module_action(dm, x, a), star(alg, x, StarMatrix(1, 1, a)));
}
