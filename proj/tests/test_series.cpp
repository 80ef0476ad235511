#include <gtest/gtest.h>

#include <stdexcept>

#include "stardeform/parse.hpp"
#include "stardeform/sampling.hpp"
#include "stardeform/series.hpp"

using namespace stardeform;

namespace {

const Variables kXP = make_variables({"x", "p"});

Series parse(const char* text, int order = 2)
{
    return parse_series(text, kXP, order);
}

} // namespace

TEST(Series, CauchyProduct)
{
    EXPECT_EQ(cauchy_product(parse("1 + l*x"), parse("1 - l*x")), parse("1 - l^2*x^2"));
}

TEST(Series, ClassicalPartAndTruncation)
{
    EXPECT_EQ(parse("3 + l*p").classical_part(), parse_coefficient("3", kXP));
    EXPECT_EQ(parse("1 + l + l^2").truncated(1), parse("1 + l", 1));
    EXPECT_THROW((void)(parse("1", 1) + parse("1", 2)), std::invalid_argument);
}

TEST(Series, Sign)
{
    EXPECT_EQ(series_sign(parse("0 + 0*l + 3*l^2")), 1);
    EXPECT_EQ(series_sign(parse("-1/2 + 7*l")), -1);
    EXPECT_EQ(series_sign(parse("0")), 0);
    EXPECT_THROW((void)series_sign(parse("i*l")), std::domain_error);
    EXPECT_THROW((void)series_sign(parse("x*l")), std::domain_error);
}

TEST(SeriesProperties, CommutativeUnitalRing)
{
    Sampler s(2001);
    const auto one = Series::one(kXP, CoefficientDomain::polynomial, 3);
    for (int k = 0; k < 30; ++k) {
        const auto f = s.series(kXP, CoefficientDomain::polynomial, 3, 2, 2, true);
        const auto g = s.series(kXP, CoefficientDomain::polynomial, 3, 2, 2, true);
        const auto h = s.series(kXP, CoefficientDomain::polynomial, 3, 2, 2, true);
        EXPECT_EQ(cauchy_product(f, g), cauchy_product(g, f));
        EXPECT_EQ(cauchy_product(cauchy_product(f, g), h), cauchy_product(f, cauchy_product(g, h)));
        EXPECT_EQ(cauchy_product(f, g + h), cauchy_product(f, g) + cauchy_product(f, h));
        EXPECT_EQ(cauchy_product(one, f), f);
    }
}

TEST(SeriesProperties, SignIsATotalOrder)
{
    Sampler s(2002);
    const auto vars = make_indexed_variables(1);
    auto real_series = [&] {
        std::vector<Coefficient> c;
        for (int r = 0; r <= 3; ++r) {
            // Mostly zeros so that leading orders vary.
            const auto v = s.uniform(0, 2) == 0 ? GaussianRational(s.small_rational()) : GaussianRational(0);
            c.push_back(Coefficient::constant(vars, CoefficientDomain::polynomial, v));
        }
        return Series(std::move(c));
    };
    for (int k = 0; k < 200; ++k) {
        const auto f = real_series();
        const auto g = real_series();
        const int d = series_sign(f - g);
        const int lt = d < 0;
        const int eq = d == 0;
        const int gt = d > 0;
        EXPECT_EQ(lt + eq + gt, 1);
        EXPECT_EQ(eq == 1, f == g);
        // Leading terms must survive truncation for the product to stay positive.
        if (series_sign(f) > 0 && series_sign(g) > 0 && *f.leading_order() + *g.leading_order() <= 3) {
            EXPECT_GT(series_sign(cauchy_product(f, g)), 0);
            EXPECT_GT(series_sign(f + g), 0);
        }
    }
}
