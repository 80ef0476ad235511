#include "stardeform/star_algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace stardeform {

std::size_t order_of(const MultiIndex& alpha)
{
    std::size_t n = 0;
    for (auto a : alpha) {
        n += a;
    }
    return n;
}

MultiIndex unit_index(std::size_t variable)
{
    MultiIndex m{};
    m.at(variable) = 1;
    return m;
}

Coefficient derivative(const Coefficient& c, const MultiIndex& alpha)
{
    Coefficient out = c;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        for (unsigned k = 0; k < alpha[i]; ++k) {
            if (out.is_zero()) {
                return out;
            }
            out = out.partial_derivative(i);
        }
    }
    return out;
}

Cochain::Cochain(std::vector<BidifferentialTerm> terms)
{
    std::map<std::pair<MultiIndex, MultiIndex>, GaussianRational> merged;
    for (auto& t : terms) {
        merged[{t.left, t.right}] += t.weight;
    }
    for (auto& [key, w] : merged) {
        if (!w.is_zero()) {
            terms_.push_back({std::move(w), key.first, key.second});
        }
    }
}

Cochain Cochain::pointwise()
{
    return Cochain({BidifferentialTerm{GaussianRational(1), {}, {}}});
}

Coefficient Cochain::apply(const Coefficient& f, const Coefficient& g) const
{
    Coefficient out = f.zero().lifted(g.domain());
    for (const auto& t : terms_) {
        Coefficient df = derivative(f, t.left);
        if (df.is_zero()) {
            continue;
        }
        Coefficient dg = derivative(g, t.right);
        if (dg.is_zero()) {
            continue;
        }
        out += df * dg * t.weight;
    }
    return out;
}

std::pair<std::size_t, std::size_t> Cochain::max_orders() const
{
    std::size_t l = 0;
    std::size_t r = 0;
    for (const auto& t : terms_) {
        l = std::max(l, order_of(t.left));
        r = std::max(r, order_of(t.right));
    }
    return {l, r};
}

bool Cochain::is_skew_symmetric() const
{
    for (const auto& t : terms_) {
        auto mirror = std::find_if(terms_.begin(), terms_.end(), [&](const BidifferentialTerm& u) {
            return u.left == t.right && u.right == t.left;
        });
        if (mirror == terms_.end() || !(mirror->weight == -t.weight)) {
            return false;
        }
    }
    return true;
}

bool operator==(const Cochain& a, const Cochain& b)
{
    if (a.terms_.size() != b.terms_.size()) {
        return false;
    }
    for (std::size_t k = 0; k < a.terms_.size(); ++k) {
        const auto& x = a.terms_[k];
        const auto& y = b.terms_[k];
        if (!(x.weight == y.weight) || x.left != y.left || x.right != y.right) {
            return false;
        }
    }
    return true;
}

const Coefficient& Jet::derivative(std::size_t r, const MultiIndex& alpha) const
{
    const Coefficient& base = series_->coefficients().at(r);
    if (order_of(alpha) == 0) {
        return base;
    }
    auto& slot = cache_[r];
    if (auto it = slot.find(alpha); it != slot.end()) {
        return it->second;
    }
    std::size_t i = 0;
    while (alpha[i] == 0) {
        ++i;
    }
    MultiIndex lower = alpha;
    --lower[i];
    const Coefficient& prev = derivative(r, lower);
    Coefficient d = prev.is_zero() ? prev : prev.partial_derivative(i);
    return slot.emplace(alpha, std::move(d)).first->second;
}

StarAlgebra::StarAlgebra(Variables vars, CoefficientDomain domain, int order, CochainStack stack, std::string kind) :
    vars_(std::move(vars)), domain_(domain), order_(order), stack_(std::move(stack)), kind_(std::move(kind))
{
    if (order_ < 0) {
        throw std::invalid_argument("negative truncation order");
    }
    if (stack_.dim != vars_->size()) {
        throw std::invalid_argument("cochain stack dimension " + std::to_string(stack_.dim) +
                                    " does not match the variable count " + std::to_string(vars_->size()));
    }
    if (stack_.cochains.empty()) {
        stack_.cochains.push_back(Cochain::pointwise());
    }
    if (!(stack_.cochains.front() == Cochain::pointwise())) {
        throw std::invalid_argument("C_0 must be pointwise multiplication");
    }
    for (const auto& c : stack_.cochains) {
        for (const auto& t : c.terms()) {
            for (std::size_t i = vars_->size(); i < kMaxVariables; ++i) {
                if (t.left[i] != 0 || t.right[i] != 0) {
                    throw std::invalid_argument("cochain term differentiates a variable outside the algebra");
                }
            }
        }
    }
}

const Cochain& StarAlgebra::cochain(std::size_t r) const
{
    return r < stack_.cochains.size() ? stack_.cochains[r] : empty_;
}

Series StarAlgebra::embed(const Coefficient& c) const
{
    require_same_variables(vars_, c.variables());
    return Series(c, order_);
}

void StarAlgebra::require_compatible(const Series& s) const
{
    require_same_variables(vars_, s.variables());
    if (s.order() != order_) {
        throw std::invalid_argument("series of order " + std::to_string(s.order()) + " used in an algebra of order " +
                                    std::to_string(order_));
    }
}

Coefficient StarAlgebra::apply_cochain(std::size_t r, const Coefficient& f, const Coefficient& g) const
{
    return cochain(r).apply(f, g);
}

std::vector<CoefficientSum> StarAlgebra::star_accumulator(CoefficientDomain domain) const
{
    return std::vector<CoefficientSum>(static_cast<std::size_t>(order_) + 1, CoefficientSum(Coefficient(vars_, domain)));
}

void StarAlgebra::star_accumulate(Series& acc, const Jet& f, const Jet& g) const
{
    auto sums = star_accumulator(acc.domain());
    star_accumulate(sums, f, g);
    for (std::size_t r = 0; r < sums.size(); ++r) {
        acc[r] += sums[r].total();
    }
}

void StarAlgebra::star_accumulate(std::vector<CoefficientSum>& acc, const Jet& f, const Jet& g) const
{
    const Series& fs = f.series();
    const Series& gs = g.series();
    const auto n = static_cast<std::size_t>(order_);
    for (std::size_t s = 0; s <= n; ++s) {
        if (fs[s].is_zero()) {
            continue;
        }
        for (std::size_t t = 0; s + t <= n; ++t) {
            if (gs[t].is_zero()) {
                continue;
            }
            acc[s + t].add(fs[s].times_unreduced(gs[t]));
            for (std::size_t u = 1; s + t + u <= n && u < stack_.cochains.size(); ++u) {
                for (const auto& term : stack_.cochains[u].terms()) {
                    const Coefficient& df = f.derivative(s, term.left);
                    if (df.is_zero()) {
                        continue;
                    }
                    const Coefficient& dg = g.derivative(t, term.right);
                    if (dg.is_zero()) {
                        continue;
                    }
                    acc[s + t + u].add(df.times_unreduced(dg) * term.weight);
                }
            }
        }
    }
}

Series StarAlgebra::star(const Jet& f, const Jet& g) const
{
    require_compatible(f.series());
    require_compatible(g.series());
    CoefficientDomain d = f.series().domain() == CoefficientDomain::rational ? CoefficientDomain::rational
                                                                             : g.series().domain();
    Series acc = Series::zero(vars_, d, order_);
    star_accumulate(acc, f, g);
    return acc;
}

Series StarAlgebra::star(const Series& f, const Series& g) const
{
    return star(Jet(f), Jet(g));
}

std::vector<std::vector<Rational>> standard_symplectic(std::size_t n)
{
    std::vector<std::vector<Rational>> theta(2 * n, std::vector<Rational>(2 * n, Rational(0)));
    for (std::size_t k = 0; k < n; ++k) {
        theta[k][n + k] = 1;
        theta[n + k][k] = -1;
    }
    return theta;
}

StarAlgebra moyal_stack(std::size_t n, const std::vector<std::vector<Rational>>& theta, int order, Variables vars,
                        CoefficientDomain domain)
{
    const std::size_t dim = 2 * n;
    if (!vars) {
        vars = make_indexed_variables(dim);
    }
    if (vars->size() != dim) {
        throw std::invalid_argument("Moyal algebra on R^" + std::to_string(dim) + " needs " + std::to_string(dim) +
                                    " variables");
    }
    if (theta.size() != dim) {
        throw std::invalid_argument("Poisson tensor must be " + std::to_string(dim) + "x" + std::to_string(dim));
    }
    for (std::size_t i = 0; i < dim; ++i) {
        if (theta[i].size() != dim) {
            throw std::invalid_argument("Poisson tensor must be square");
        }
        for (std::size_t j = 0; j < dim; ++j) {
            if (theta[i][j] != -theta[j][i]) {
                throw std::invalid_argument("Poisson tensor is not antisymmetric at (" + std::to_string(i) + ", " +
                                            std::to_string(j) + ")");
            }
        }
    }

    CochainStack stack;
    stack.dim = dim;
    stack.hermitian_flag = true;
    stack.cochains.push_back(Cochain::pointwise());
    stack.vey_orders.push_back(0);

    std::map<std::pair<MultiIndex, MultiIndex>, Rational> expansion{{{MultiIndex{}, MultiIndex{}}, Rational(1)}};
    GaussianRational prefactor(1);
    for (int r = 1; r <= order; ++r) {
        std::map<std::pair<MultiIndex, MultiIndex>, Rational> next;
        for (const auto& [key, w] : expansion) {
            for (std::size_t i = 0; i < dim; ++i) {
                for (std::size_t j = 0; j < dim; ++j) {
                    if (sgn(theta[i][j]) == 0) {
                        continue;
                    }
                    auto left = key.first;
                    auto right = key.second;
                    ++left[i];
                    ++right[j];
                    next[{left, right}] += w * theta[i][j];
                }
            }
        }
        expansion = std::move(next);
        // (i/2)^r / r!
        prefactor *= GaussianRational(Rational(0), Rational(1, 2 * r));
        std::vector<BidifferentialTerm> terms;
        for (const auto& [key, w] : expansion) {
            terms.push_back({prefactor * GaussianRational(w), key.first, key.second});
        }
        stack.cochains.emplace_back(std::move(terms));
        stack.vey_orders.push_back(static_cast<std::size_t>(r));
    }
    StarAlgebra alg(std::move(vars), domain, order, std::move(stack), "moyal");
    alg.set_poisson_tensor(theta);
    return alg;
}

CheckReport check_associativity(const StarAlgebra& alg, const std::vector<Triple>& samples)
{
    CheckReport report{.name = "associativity"};
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const auto& [f, g, h] = samples[k];
        ++report.cases;
        expect_equal(report, "sample " + std::to_string(k), alg.star(alg.star(f, g), h), alg.star(f, alg.star(g, h)));
    }
    return report;
}

CheckReport check_hermitian(const StarAlgebra& alg, const std::vector<std::pair<Series, Series>>& samples)
{
    CheckReport report{.name = "hermitian"};
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const auto& [f, g] = samples[k];
        ++report.cases;
        expect_equal(report, "sample " + std::to_string(k), alg.star(f, g).conj(), alg.star(g.conj(), f.conj()));
    }
    return report;
}

CheckReport check_unit(const StarAlgebra& alg, const std::vector<Series>& samples)
{
    CheckReport report{.name = "unit"};
    const Series one = alg.one();
    for (std::size_t k = 0; k < samples.size(); ++k) {
        ++report.cases;
        expect_equal(report, "sample " + std::to_string(k) + " (left unit)", alg.star(one, samples[k]), samples[k]);
        expect_equal(report, "sample " + std::to_string(k) + " (right unit)", alg.star(samples[k], one), samples[k]);
    }
    return report;
}

VeyReport check_vey(const StarAlgebra& alg)
{
    VeyReport out;
    out.report.name = "vey";
    const auto& stack = alg.stack();
    for (std::size_t r = 0; r < stack.cochains.size(); ++r) {
        const auto [l, rr] = stack.cochains[r].max_orders();
        out.orders.emplace_back(l, rr);
        ++out.report.cases;
        std::size_t bound = r;
        if (r < stack.vey_orders.size()) {
            bound = std::min(bound, stack.vey_orders[r]);
        }
        if (l > bound || rr > bound) {
            out.report.fail("C_" + std::to_string(r), static_cast<int>(r),
                            "differential order (" + std::to_string(l) + ", " + std::to_string(rr) +
                                ") exceeds " + std::to_string(bound));
        }
        out.report.notes.push_back("C_" + std::to_string(r) + ": order (" + std::to_string(l) + ", " +
                                   std::to_string(rr) + ")");
    }
    return out;
}

DifferentialOperator DifferentialOperator::laplacian(const Variables& vars, CoefficientDomain domain)
{
    std::vector<std::pair<Coefficient, MultiIndex>> terms;
    for (std::size_t i = 0; i < vars->size(); ++i) {
        MultiIndex a{};
        a[i] = 2;
        terms.emplace_back(Coefficient::constant(vars, domain, GaussianRational(1)), a);
    }
    return DifferentialOperator(std::move(terms));
}

bool DifferentialOperator::is_identity() const
{
    // Collect the operator's action on the symbol level: sum of c_k d^alpha_k.
    std::map<MultiIndex, std::vector<const Coefficient*>> by_index;
    for (const auto& [c, a] : terms_) {
        by_index[a].push_back(&c);
    }
    for (const auto& [a, cs] : by_index) {
        Coefficient sum = cs.front()->zero();
        for (const auto* c : cs) {
            sum += *c;
        }
        const bool want_one = order_of(a) == 0;
        if (want_one ? !(sum == sum.one()) : !sum.is_zero()) {
            return false;
        }
    }
    return by_index.contains(MultiIndex{});
}

Coefficient DifferentialOperator::apply(const Coefficient& f) const
{
    Coefficient out = f.zero();
    for (const auto& [c, a] : terms_) {
        Coefficient d = derivative(f, a);
        if (!d.is_zero()) {
            out += c * d;
        }
    }
    return out;
}

EquivalenceTransform EquivalenceTransform::from_components(std::vector<DifferentialOperator> components)
{
    if (components.empty()) {
        return EquivalenceTransform({});
    }
    if (!components.front().is_identity()) {
        throw std::invalid_argument("equivalence transform must have identity classical part");
    }
    components.erase(components.begin());
    return EquivalenceTransform(std::move(components));
}

Series EquivalenceTransform::apply(const Series& f) const
{
    Series out = f;
    for (int r = 0; r <= f.order(); ++r) {
        for (int t = 1; t <= r && t <= static_cast<int>(maps_.size()); ++t) {
            out[static_cast<std::size_t>(r)] += maps_[static_cast<std::size_t>(t - 1)].apply(f[static_cast<std::size_t>(r - t)]);
        }
    }
    return out;
}

Series EquivalenceTransform::apply_inverse(const Series& f) const
{
    Series g = f;
    for (int r = 1; r <= f.order(); ++r) {
        for (int t = 1; t <= r && t <= static_cast<int>(maps_.size()); ++t) {
            g[static_cast<std::size_t>(r)] -=
                maps_[static_cast<std::size_t>(t - 1)].apply(g[static_cast<std::size_t>(r - t)]);
        }
    }
    return g;
}

Series transported_star(const EquivalenceTransform& t, const StarAlgebra& alg2, const Series& f, const Series& g)
{
    return t.apply_inverse(alg2.star(t.apply(f), t.apply(g)));
}

Series star_inverse(const StarAlgebra& alg, const Series& f)
{
    alg.require_compatible(f);
    const Coefficient& f0 = f.classical_part();
    if (f0.is_zero()) {
        throw std::domain_error("classical part is zero and not invertible");
    }
    const Coefficient f0_inv = f0.invert();
    Series h = Series::zero(alg.variables(), f.domain(), alg.order());
    h[0] = f0_inv;
    const Jet fj(f);
    for (int r = 1; r <= alg.order(); ++r) {
        // Order r of f * h_{<r}; h_r enters only through f_0 h_r.
        Series partial = alg.star(fj, Jet(h));
        h[static_cast<std::size_t>(r)] = -(f0_inv * partial[static_cast<std::size_t>(r)]);
    }
    return h;
}

Rational binomial_minus_half(unsigned k)
{
    Rational c(1);
    for (unsigned j = 0; j < k; ++j) {
        c *= Rational(-1, 2) - Rational(j);
        c /= Rational(j + 1);
    }
    return c;
}

Series star_binomial_half_inverse(const StarAlgebra& alg, const Series& b)
{
    alg.require_compatible(b);
    if (!b.classical_part().is_zero()) {
        throw std::domain_error("binomial series needs an argument with zero classical part");
    }
    Series result = alg.one().lifted(b.domain());
    Series power = result;
    for (int k = 1; k <= alg.order(); ++k) {
        power = alg.star(power, b);
        result += power * GaussianRational(binomial_minus_half(static_cast<unsigned>(k)));
    }
    return result;
}

} // namespace stardeform
