#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stardeform/check.hpp"
#include "stardeform/coefficient.hpp"
#include "stardeform/series.hpp"

namespace stardeform {

// Derivative counts per variable.
using MultiIndex = Monomial;

std::size_t order_of(const MultiIndex& alpha);
MultiIndex unit_index(std::size_t variable);

// Partial derivative d^alpha of a coefficient.
Coefficient derivative(const Coefficient& c, const MultiIndex& alpha);

// weight * (d^left f) * (d^right g)
struct BidifferentialTerm {
    GaussianRational weight;
    MultiIndex left{};
    MultiIndex right{};
};

// Bilinear cochain given extensionally as a finite sum of bidifferential
// terms. Terms with the same (left, right) pair are merged; zero weights
// are dropped, so the list is canonical.
class Cochain {
public:
    Cochain() = default;
    explicit Cochain(std::vector<BidifferentialTerm> terms);

    static Cochain pointwise();

    const std::vector<BidifferentialTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    Coefficient apply(const Coefficient& f, const Coefficient& g) const;
    // Maximal derivative order in the (left, right) slots.
    std::pair<std::size_t, std::size_t> max_orders() const;
    // C(f, g) = -C(g, f) as an operator identity.
    bool is_skew_symmetric() const;

    friend bool operator==(const Cochain&, const Cochain&);

private:
    std::vector<BidifferentialTerm> terms_;
};

struct CochainStack {
    std::size_t dim = 0;
    // cochains[r] = C_r; cochains[0] must be pointwise multiplication.
    std::vector<Cochain> cochains;
    bool hermitian_flag = false;
    // Declared differential order of C_r in each argument.
    std::vector<std::size_t> vey_orders;
};

// Lazily cached partial derivatives of the coefficients of one series.
// A helper for repeated star products; not shareable across threads.
class Jet {
public:
    explicit Jet(const Series& s) : series_(&s), cache_(s.coefficients().size()) {}

    const Series& series() const { return *series_; }
    const Coefficient& derivative(std::size_t r, const MultiIndex& alpha) const;

private:
    const Series* series_;
    mutable std::vector<std::map<MultiIndex, Coefficient>> cache_;
};

// The deformed algebra (A[[l]], star) truncated at order N.
class StarAlgebra {
public:
    StarAlgebra(Variables vars, CoefficientDomain domain, int order, CochainStack stack, std::string kind = "custom");

    const Variables& variables() const { return vars_; }
    CoefficientDomain domain() const { return domain_; }
    int order() const { return order_; }
    const CochainStack& stack() const { return stack_; }
    const std::string& kind() const { return kind_; }
    // C_r, or the empty cochain beyond the stack.
    const Cochain& cochain(std::size_t r) const;
    // Poisson tensor for Moyal-type algebras.
    const std::optional<std::vector<std::vector<Rational>>>& poisson_tensor() const { return theta_; }
    void set_poisson_tensor(std::vector<std::vector<Rational>> theta) { theta_ = std::move(theta); }

    Series zero() const { return Series::zero(vars_, domain_, order_); }
    Series one() const { return Series::one(vars_, domain_, order_); }
    Series embed(const Coefficient& c) const;
    Coefficient coefficient(GaussianRational c) const { return Coefficient::constant(vars_, domain_, std::move(c)); }
    Coefficient variable(std::size_t index) const { return Coefficient::variable(vars_, domain_, index); }

    // Throws std::invalid_argument unless s matches the variables and order.
    void require_compatible(const Series& s) const;

    // (f star g)_r = sum_{s+t+u=r} C_u(f_s, g_t)
    Series star(const Series& f, const Series& g) const;
    Series star(const Jet& f, const Jet& g) const;
    // Adds f star g into acc.
    void star_accumulate(Series& acc, const Jet& f, const Jet& g) const;
    // Same, collecting the l^r coefficient into acc[r].
    void star_accumulate(std::vector<CoefficientSum>& acc, const Jet& f, const Jet& g) const;
    std::vector<CoefficientSum> star_accumulator(CoefficientDomain domain) const;

    // Classical bidifferential cochain on coefficients.
    Coefficient apply_cochain(std::size_t r, const Coefficient& f, const Coefficient& g) const;

private:
    Variables vars_;
    CoefficientDomain domain_;
    int order_;
    CochainStack stack_;
    std::string kind_;
    std::optional<std::vector<std::vector<Rational>>> theta_;
    Cochain empty_;
};

inline Series star_mul(const StarAlgebra& alg, const Series& f, const Series& g)
{
    return alg.star(f, g);
}

// Moyal-Weyl product for a constant antisymmetric Poisson tensor theta of
// size 2n x 2n:
//   C_r(f, g) = (1/r!) (i/2)^r theta^{i1 j1}...theta^{ir jr} (d_{i1..ir} f)(d_{j1..jr} g).
// Variables default to x1..x2n. Throws std::invalid_argument if theta is
// not antisymmetric.
StarAlgebra moyal_stack(std::size_t n, const std::vector<std::vector<Rational>>& theta, int order,
                        Variables vars = nullptr, CoefficientDomain domain = CoefficientDomain::rational);

// Standard symplectic tensor ((0, 1), (-1, 0)) on R^2n in (x1..xn, p1..pn) order.
std::vector<std::vector<Rational>> standard_symplectic(std::size_t n);

using Triple = std::array<Series, 3>;

// (f g) h against f (g h), exactly per order.
CheckReport check_associativity(const StarAlgebra& alg, const std::vector<Triple>& samples);
// conj(f g) against conj(g) conj(f).
CheckReport check_hermitian(const StarAlgebra& alg, const std::vector<std::pair<Series, Series>>& samples);
// 1 f = f 1 = f.
CheckReport check_unit(const StarAlgebra& alg, const std::vector<Series>& samples);

struct VeyReport {
    // Per r: maximal derivative order in (left, right).
    std::vector<std::pair<std::size_t, std::size_t>> orders;
    CheckReport report;
    bool vey_type() const { return report.passed(); }
};

// C_r must be differential of order at most r in each argument, and at most
// the declared vey_orders[r].
VeyReport check_vey(const StarAlgebra& alg);

// sum_k c_k(x) d^alpha_k
class DifferentialOperator {
public:
    DifferentialOperator() = default;
    explicit DifferentialOperator(std::vector<std::pair<Coefficient, MultiIndex>> terms) : terms_(std::move(terms)) {}

    static DifferentialOperator laplacian(const Variables& vars, CoefficientDomain domain);

    const std::vector<std::pair<Coefficient, MultiIndex>>& terms() const { return terms_; }
    bool is_identity() const;
    Coefficient apply(const Coefficient& f) const;

private:
    std::vector<std::pair<Coefficient, MultiIndex>> terms_;
};

// T = id + sum_{r>=1} T_r l^r, acting coefficientwise on series.
class EquivalenceTransform {
public:
    // maps[k] = T_{k+1}.
    explicit EquivalenceTransform(std::vector<DifferentialOperator> maps) : maps_(std::move(maps)) {}
    // components[0] = T_0 must be the identity; throws std::invalid_argument otherwise.
    static EquivalenceTransform from_components(std::vector<DifferentialOperator> components);

    const std::vector<DifferentialOperator>& maps() const { return maps_; }

    Series apply(const Series& f) const;
    // Solves T(g) = f order by order.
    Series apply_inverse(const Series& f) const;

private:
    std::vector<DifferentialOperator> maps_;
};

// f star_1 g = T^{-1}(T(f) star_2 T(g)).
Series transported_star(const EquivalenceTransform& t, const StarAlgebra& alg2, const Series& f, const Series& g);

// Two-sided inverse by order recursion; requires an invertible classical part.
Series star_inverse(const StarAlgebra& alg, const Series& f);

// Coefficient binom(-1/2, k).
Rational binomial_minus_half(unsigned k);

// sum_k binom(-1/2, k) B^{star k}, i.e. the principal inverse square root of
// 1 + B. Requires B = O(l).
Series star_binomial_half_inverse(const StarAlgebra& alg, const Series& b);

} // namespace stardeform
