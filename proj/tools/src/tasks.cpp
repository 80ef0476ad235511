#include "tasks.hpp"

#include <functional>
#include <stdexcept>

#include "stardeform/fixtures.hpp"
#include "stardeform/morita.hpp"
#include "stardeform/parse.hpp"
#include "stardeform/sampling.hpp"
#include "stardeform/semiclassical.hpp"

namespace stardeform::cli {

namespace {

constexpr ParamInfo kProjection{"projection", ParamType::projection, true};
constexpr ParamInfo kMethod{"method", ParamType::method};
constexpr ParamInfo kSamples{"samples", ParamType::count};
constexpr ParamInfo kElements{"elements", ParamType::elements};
constexpr ParamInfo kPairs{"pairs", ParamType::coefficient_pairs};
constexpr ParamInfo kWitness{"witness", ParamType::coefficient};
constexpr ParamInfo kDeformed{"deformed", ParamType::flag};

// Parameters and values of one task invocation.
class Inputs {
public:
    Inputs(TaskContext& ctx, const TaskSpec& spec, std::uint64_t seed) :
        sampler(seed), ctx_(ctx), spec_(spec), alg_(ctx.algebra())
    {
    }

    const StarAlgebra& alg() const { return alg_; }

    bool has(const char* key) const { return spec_.params.contains(key); }

    int count(const char* key, int fallback) const
    {
        return has(key) ? spec_.params[key].get<int>() : fallback;
    }

    bool flag(const char* key, bool fallback) const { return has(key) ? spec_.params[key].get<bool>() : fallback; }

    std::string method() const { return has("method") ? spec_.params["method"].get<std::string>() : "fedosov"; }

    std::string text(const char* key) const { return spec_.params[key].get<std::string>(); }

    const StarMatrix& projection() const { return ctx_.fixtures().matrix(text("projection")); }

    const StarMatrix& matrix(const char* key) const { return ctx_.fixtures().matrix(text(key)); }

    const DeformedModule& module() const { return ctx_.module(text("projection"), method()); }

    Coefficient coefficient(const std::string& text) const
    {
        return parse_coefficient(text, alg_.variables(), alg_.domain());
    }

    Series series(const std::string& text) const
    {
        return parse_series(text, alg_.variables(), alg_.order(), alg_.domain());
    }

    Coefficient witness() const { return coefficient(has("witness") ? text("witness") : "1"); }

    // Explicit elements first, then random P0 v up to samples in total.
    std::vector<StarMatrix> elements(const DeformedModule& dm, int samples)
    {
        std::vector<StarMatrix> out;
        if (has("elements")) {
            for (const auto& name : spec_.params["elements"]) {
                const auto& x = ctx_.fixtures().element(name.get<std::string>());
                dm.require_element(x);
                out.push_back(x);
            }
        }
        while (static_cast<int>(out.size()) < samples) {
            out.push_back(dm.project(random_classical(dm.rank(), 1, 1)));
        }
        return out;
    }

    // Explicit elements, or the spanning set {P0 e_j}.
    std::vector<StarMatrix> elements_or_spanning(const DeformedModule& dm)
    {
        return has("elements") ? elements(dm, 0) : dm.spanning_set();
    }

    // (f, g) pairs from the parameter, defaulting to the first two variables.
    std::vector<std::pair<Coefficient, Coefficient>> pairs() const
    {
        std::vector<std::pair<Coefficient, Coefficient>> out;
        if (has("pairs")) {
            for (const auto& row : spec_.params["pairs"]) {
                out.emplace_back(coefficient(row[0].get<std::string>()), coefficient(row[1].get<std::string>()));
            }
        } else if (alg_.variables()->size() >= 2) {
            out.emplace_back(alg_.variable(0), alg_.variable(1));
        }
        return out;
    }

    std::vector<std::array<std::string, 3>> triples(const char* key) const
    {
        std::vector<std::array<std::string, 3>> out;
        if (has(key)) {
            for (const auto& row : spec_.params[key]) {
                out.push_back({row[0].get<std::string>(), row[1].get<std::string>(), row[2].get<std::string>()});
            }
        }
        return out;
    }

    Series random_series(unsigned degree = 1)
    {
        return sampler.series(alg_.variables(), alg_.domain(), alg_.order(), degree, 2, true);
    }

    Coefficient random_coefficient(unsigned degree = 1)
    {
        return sampler.coefficient(alg_.variables(), alg_.domain(), degree, 3, true);
    }

    StarMatrix random_matrix(std::size_t rows, std::size_t cols, unsigned degree = 1)
    {
        StarMatrix m = StarMatrix::zero(alg_, rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                m(i, j) = random_series(degree);
            }
        }
        return m;
    }

    StarMatrix random_classical(std::size_t rows, std::size_t cols, unsigned degree = 1)
    {
        return random_matrix(rows, cols, degree).classical_part();
    }

    Sampler sampler;

private:
    TaskContext& ctx_;
    const TaskSpec& spec_;
    const StarAlgebra& alg_;
};

std::string sample(int k)
{
    return "sample " + std::to_string(k + 1);
}

StarMatrix scaled(const StarMatrix& x, const Coefficient& g)
{
    return x.map([&](const Series& s) { return s * g; });
}

StarMatrix as_matrix(const Series& a)
{
    return {1, 1, a};
}

void expect_true(CheckReport& report, const std::string& location, bool ok, const std::string& detail)
{
    if (!ok) {
        report.fail(location, std::nullopt, detail);
    }
}

// ---- algebra ----

CheckReport run_associativity(Inputs& in)
{
    std::vector<Triple> samples;
    for (const auto& t : in.triples("triples")) {
        samples.push_back({in.series(t[0]), in.series(t[1]), in.series(t[2])});
    }
    const int n = in.count("samples", 10);
    for (int k = 0; k < n; ++k) {
        samples.push_back({in.random_series(2), in.random_series(2), in.random_series(2)});
    }
    return check_associativity(in.alg(), samples);
}

CheckReport run_hermiticity(Inputs& in)
{
    std::vector<std::pair<Series, Series>> samples;
    const int n = in.count("samples", 10);
    for (int k = 0; k < n; ++k) {
        samples.emplace_back(in.random_series(2), in.random_series(2));
    }
    return check_hermitian(in.alg(), samples);
}

CheckReport run_unit(Inputs& in)
{
    std::vector<Series> samples;
    const int n = in.count("samples", 10);
    for (int k = 0; k < n; ++k) {
        samples.push_back(in.random_series(2));
    }
    return check_unit(in.alg(), samples);
}

CheckReport run_vey(Inputs& in)
{
    const VeyReport vey = check_vey(in.alg());
    CheckReport report = vey.report;
    for (std::size_t r = 0; r < vey.orders.size(); ++r) {
        report.notes.push_back("C_" + std::to_string(r) + " has derivative orders (" +
                               std::to_string(vey.orders[r].first) + ", " + std::to_string(vey.orders[r].second) +
                               ")");
    }
    return report;
}

// ---- matrix ----

CheckReport run_deform_projection(Inputs& in)
{
    const auto& alg = in.alg();
    const auto& p0 = in.projection();
    const auto& dm = in.module();
    const auto& p = dm.p();
    CheckReport report{.name = "deformed projection"};
    report.cases = 1;
    expect_equal(report, "P star P = P", star(alg, p, p), p);
    expect_equal(report, "classical part", p.classical_part(), p0);
    if (p0.adjoint() == p0 && alg.stack().hermitian_flag) {
        expect_equal(report, "P* = P", p.adjoint(), p);
    } else {
        report.notes.push_back("Hermiticity not checked: P0 or the algebra is not Hermitian");
    }
    return report;
}

CheckReport run_intertwiner(Inputs& in)
{
    const auto& alg = in.alg();
    const auto& p0 = in.projection();
    const StarMatrix p = deform_projection_fedosov(alg, p0, p0.adjoint() == p0 && alg.stack().hermitian_flag);
    const StarMatrix q = deform_projection_recursive(alg, p0);
    const StarMatrix u = idempotent_intertwiner(alg, p, q);
    CheckReport report{.name = "intertwiner"};
    report.cases = 1;
    expect_equal(report, "U star P = P' star U", star(alg, u, p), star(alg, q, u));
    expect_equal(report, "U0 = 1", u.classical_part(), StarMatrix::identity(alg, p0.rows()));
    const StarMatrix inv = mat_series_inverse(alg, u);
    expect_equal(report, "U star U^-1 = 1", star(alg, u, inv), StarMatrix::identity(alg, p0.rows()));
    expect_equal(report, "U^-1 star U = 1", star(alg, inv, u), StarMatrix::identity(alg, p0.rows()));
    if (p == q) {
        report.notes.push_back("Fedosov and recursive projections coincide");
    }
    return report;
}

StarMatrix invertible_classical(Inputs& in, std::size_t n)
{
    for (;;) {
        StarMatrix m = in.random_classical(n, n, 1);
        if (classical_inverse(m)) {
            return m;
        }
    }
}

CheckReport run_factorization(Inputs& in)
{
    const auto& alg = in.alg();
    CheckReport report{.name = "hermitian factorization"};
    const int n = in.count("samples", 10);
    for (int k = 0; k < n; ++k) {
        ++report.cases;
        const std::size_t dim = k % 2 == 0 ? 1 : 2;
        const StarMatrix l0 = invertible_classical(in, dim);
        const StarMatrix a = in.random_matrix(dim, dim, 2);
        StarMatrix s = classical_product(l0.adjoint(), l0) + (a + a.adjoint()).shifted(1);
        const StarMatrix l = hermitian_factorization(alg, s, l0);
        expect_equal(report, sample(k) + " L* star L = S", star(alg, l.adjoint(), l), s);
        expect_equal(report, sample(k) + " L0", l.classical_part(), l0);
    }
    if (alg.order() >= 2 && alg.variables()->size() >= 1) {
        // S = 1 + l x has L = 1 + l x/2 - l^2 x^2/8 + ...
        ++report.cases;
        const Coefficient x = alg.variable(0);
        const StarMatrix s = as_matrix(alg.one() + alg.embed(x).shifted(1));
        const StarMatrix l = hermitian_factorization(alg, s, StarMatrix::identity(alg, 1));
        const std::string name = alg.variables()->name(0);
        expect_true(report, "S = 1 + l " + name + ": L_1", l(0, 0)[1] == x * GaussianRational(Rational(1, 2)),
                    "expected " + name + "/2, got " + l(0, 0)[1].to_string());
        expect_true(report, "S = 1 + l " + name + ": L_2", l(0, 0)[2] == x * x * GaussianRational(Rational(-1, 8)),
                    "expected -" + name + "^2/8, got " + l(0, 0)[2].to_string());
    }
    return report;
}

CheckReport run_deform_unitary(Inputs& in)
{
    const auto& alg = in.alg();
    const StarMatrix& u0 = in.matrix("unitary");
    const StarMatrix u = deform_unitary(alg, u0);
    const auto id = StarMatrix::identity(alg, u0.rows());
    CheckReport report{.name = "deformed unitary"};
    report.cases = 1;
    expect_equal(report, "U* star U = 1", star(alg, u.adjoint(), u), id);
    expect_equal(report, "U star U* = 1", star(alg, u, u.adjoint()), id);
    expect_equal(report, "classical part", u.classical_part(), u0);
    return report;
}

// ---- module ----

CheckReport run_module_laws(Inputs& in)
{
    const auto& alg = in.alg();
    const auto& dm = in.module();
    CheckReport report{.name = "module laws"};
    const auto xs = in.elements(dm, in.count("samples", 5));
    for (std::size_t k = 0; k < xs.size(); ++k) {
        ++report.cases;
        const auto& x = xs[k];
        const Series a = in.random_series();
        const Series b = in.random_series();
        const std::string at = sample(static_cast<int>(k));
        expect_equal(report, at + " (x.A).A' = x.(A star A')", module_action(dm, module_action(dm, x, a), b),
                     module_action(dm, x, alg.star(a, b)));
        expect_equal(report, at + " x.1 = x", module_action(dm, x, alg.one()), x);
        const StarMatrix x0 = x.classical_part();
        const Coefficient a0 = a.classical_part();
        const StarMatrix first = module_action(dm, x0, alg.embed(a0)).coefficient_matrix(1);
        expect_equal(report, at + " R_1(x, A) = P0 C_1(x, A)", first,
                     classical_product(dm.p0(), first_order_cochain(alg, x0, StarMatrix::classical(alg, 1, 1, {a0}))));
    }
    return report;
}

CheckReport run_metric_laws(Inputs& in)
{
    const auto& alg = in.alg();
    const auto& dm = in.module();
    CheckReport report{.name = "metric laws"};
    const int n = in.count("samples", 5);
    const auto xs = in.elements(dm, n);
    for (std::size_t k = 0; k < xs.size(); ++k) {
        ++report.cases;
        const auto& x = xs[k];
        const StarMatrix y = dm.project(in.random_classical(dm.rank(), 1));
        const Series a = in.random_series();
        const std::string at = sample(static_cast<int>(k));
        const Series hxy = deformed_metric(dm, x, y);
        expect_equal(report, at + " h(x, y.A) = h(x, y) star A", deformed_metric(dm, x, module_action(dm, y, a)),
                     alg.star(hxy, a));
        expect_equal(report, at + " h(y, x) = h(x, y)*", deformed_metric(dm, y, x), hxy.conj());
        expect_equal(report, at + " classical part", StarMatrix(1, 1, hxy).classical_part(),
                     classical_product(x.classical_part().adjoint(), y.classical_part()));
    }
    return report;
}

CheckReport run_hermitian_equivalence(Inputs& in)
{
    const auto& alg = in.alg();
    const auto& p0 = in.projection();
    const auto& dm = in.module();
    const DeformedModule other = in.method() == "fedosov" ? DeformedModule::recursive(alg, p0)
                                                          : DeformedModule::fedosov(alg, p0);
    const HermitianEquivalence eq = hermitian_equivalence(dm, other);
    CheckReport report{.name = "hermitian equivalence"};
    report.merge(eq.pullback_check);
    const auto xs = in.elements(dm, in.count("samples", 3));
    for (std::size_t k = 0; k < xs.size(); ++k) {
        ++report.cases;
        const auto& x = xs[k];
        const StarMatrix y = dm.project(in.random_classical(dm.rank(), 1));
        const std::string at = sample(static_cast<int>(k));
        const StarMatrix tx = eq.isometric.apply(x);
        expect_equal(report, at + " h'(T x, T y) = h(x, y)", deformed_metric(other, tx, eq.isometric.apply(y)),
                     deformed_metric(dm, x, y));
        expect_equal(report, at + " T^-1 T x = x", eq.isometric.apply_inverse(tx), x);
        expect_equal(report, at + " T = id + O(l)", tx.classical_part(), x.classical_part());
    }
    return report;
}

CheckReport run_deform_isometry(Inputs& in)
{
    const auto& alg = in.alg();
    const auto& dm = in.module();
    const StarMatrix& v0 = in.matrix("unitary");
    const DeformedIsometry iso = deform_isometry(dm, v0);
    const StarMatrix& v = iso.endomorphism;
    CheckReport report{.name = "deformed isometry"};
    ++report.cases;
    expect_equal(report, "classical part V0 P0", v.classical_part(), classical_product(v0, dm.p0()));
    expect_equal(report, "P' = U star P star U*", iso.rotated_projection,
                 star(alg, star(alg, iso.unitary, dm.p()), iso.unitary.adjoint()));
    const StarMatrix v_inv = endo_inverse(dm, v);
    const auto xs = in.elements(dm, in.count("samples", 3));
    for (std::size_t k = 0; k < xs.size(); ++k) {
        ++report.cases;
        const auto& x = xs[k];
        const StarMatrix y = dm.project(in.random_classical(dm.rank(), 1));
        const std::string at = sample(static_cast<int>(k));
        expect_equal(report, at + " h(V x, V y) = h(x, y)",
                     deformed_metric(dm, endo_action(dm, v, x), endo_action(dm, v, y)), deformed_metric(dm, x, y));
        expect_equal(report, at + " V^-1 V x = x", endo_action(dm, v_inv, endo_action(dm, v, x)), x);
    }
    return report;
}

// The algebra with the same variables and every higher cochain zero.
StarAlgebra flat_algebra(const StarAlgebra& alg)
{
    CochainStack stack{.dim = alg.variables()->size(), .cochains = {Cochain::pointwise()}, .hermitian_flag = true,
                       .vey_orders = {0}};
    return {alg.variables(), alg.domain(), alg.order(), std::move(stack), "flat"};
}

CheckReport run_degeneration(Inputs& in)
{
    const StarAlgebra flat = flat_algebra(in.alg());
    const auto& p0 = in.projection();
    CheckReport report{.name = "degeneration"};
    ++report.cases;
    const DeformedModule dm = DeformedModule::fedosov(flat, p0);
    expect_equal(report, "Fedosov P = P0", dm.p(), p0);
    expect_equal(report, "recursive P = P0", deform_projection_recursive(flat, p0), p0);
    expect_equal(report, "intertwiner U = 1", idempotent_intertwiner(flat, dm.p(), p0),
                 StarMatrix::identity(flat, p0.rows()));

    const Coefficient tau0 = in.witness();
    if (trace(p0) * tau0 * tau0.conj() == flat.one()) {
        expect_equal(report, "tau = tau0", deform_full_witness(dm, tau0), flat.embed(tau0));
    } else {
        report.notes.push_back("witness check skipped: tr P0 tau0 tau0* != 1");
    }

    const int n = in.count("samples", 3);
    for (int k = 0; k < n; ++k) {
        ++report.cases;
        const StarMatrix x = dm.project(in.random_classical(p0.rows(), 1));
        const StarMatrix y = dm.project(in.random_classical(p0.rows(), 1));
        const Series a = in.random_series();
        const Series b = in.random_series();
        const std::string at = sample(k);
        expect_equal(report, at + " star = pointwise", flat.star(a, b), cauchy_product(a, b));
        expect_equal(report, at + " I = id", iso_I(dm, scalar_unit(dm), x), x);
        expect_equal(report, at + " x.A = x A", module_action(dm, x, a), classical_product(x, as_matrix(a)));
        expect_equal(report, at + " h = h0", deformed_metric(dm, x, y), classical_product(x.adjoint(), y)(0, 0));
    }
    return report;
}

// ---- semiclassical ----

CheckReport run_poisson_checks(Inputs& in)
{
    const auto& alg = in.alg();
    require_skew_first_order(alg);
    CheckReport report{.name = "Poisson bracket"};
    for (const auto& t : in.triples("expected")) {
        ++report.cases;
        const Coefficient value = poisson_bracket(alg, in.coefficient(t[0]), in.coefficient(t[1]));
        expect_true(report, "{" + t[0] + ", " + t[1] + "}", value == in.coefficient(t[2]),
                    "expected " + t[2] + ", got " + value.to_string());
    }
    const int n = in.count("samples", 10);
    for (int k = 0; k < n; ++k) {
        ++report.cases;
        const Coefficient f = in.random_coefficient(2);
        const Coefficient g = in.random_coefficient(2);
        const Coefficient h = in.random_coefficient(2);
        const Coefficient fg = poisson_bracket(alg, f, g);
        const std::string at = sample(k);
        expect_true(report, at + " antisymmetry", fg == -poisson_bracket(alg, g, f), "{f, g} != -{g, f}");
        expect_true(report, at + " reality", fg.conj() == poisson_bracket(alg, f.conj(), g.conj()),
                    "{f, g}* != {f*, g*}");
        expect_true(report, at + " Leibniz",
                    poisson_bracket(alg, f, g * h) == fg * h + g * poisson_bracket(alg, f, h),
                    "{f, gh} != {f, g} h + g {f, h}");
        const Coefficient jacobi = poisson_bracket(alg, f, poisson_bracket(alg, g, h)) +
                                   poisson_bracket(alg, g, poisson_bracket(alg, h, f)) +
                                   poisson_bracket(alg, h, fg);
        expect_true(report, at + " Jacobi", jacobi.is_zero(), "cyclic sum is " + jacobi.to_string());
    }
    return report;
}

CheckReport run_module_bracket_checks(Inputs& in)
{
    const auto& alg = in.alg();
    const auto& dm = in.module();
    CheckReport report{.name = "module bracket"};
    const auto xs = in.elements(dm, in.count("samples", 5));
    for (std::size_t k = 0; k < xs.size(); ++k) {
        ++report.cases;
        const StarMatrix e = xs[k].classical_part();
        const Coefficient f = in.random_coefficient(2);
        const Coefficient g = in.random_coefficient(2);
        const std::string at = sample(static_cast<int>(k));
        const StarMatrix ef = module_bracket(dm, e, f);
        expect_equal(report, at + " {x, f}_E = (2/i) R_1(x, f)", ef, module_bracket_from_action(dm, e, f));
        expect_equal(report, at + " {x g, f}_E = {x, f}_E g + x {g, f}", module_bracket(dm, scaled(e, g), f),
                     scaled(ef, g) + scaled(e, poisson_bracket(alg, g, f)));
        expect_equal(report, at + " {x, f g}_E = {x, f}_E g + {x, g}_E f", module_bracket(dm, e, f * g),
                     scaled(ef, g) + scaled(module_bracket(dm, e, g), f));
    }
    return report;
}

CheckReport run_curvature_compare(Inputs& in)
{
    const auto& alg = in.alg();
    const auto& dm = in.module();
    const LeviCivitaConnection nabla(dm.p0());
    CheckReport report{.name = "curvature"};
    report.notes.push_back("compares R_E(f, g) with -R^nabla(X_f, X_g) for X_f = {., f}");
    const std::vector<StarMatrix> xs = in.elements_or_spanning(dm);
    bool nonzero = false;
    for (const auto& [f, g] : in.pairs()) {
        const VectorField xf = hamiltonian_vector_field(alg, f);
        const VectorField xg = hamiltonian_vector_field(alg, g);
        for (std::size_t j = 0; j < xs.size(); ++j) {
            ++report.cases;
            const StarMatrix module = module_curvature(dm, f, g, xs[j]);
            const StarMatrix connection = nabla.curvature(xf, xg, xs[j]);
            nonzero = nonzero || !module.is_zero();
            expect_equal(report, "(" + f.to_string() + ", " + g.to_string() + ") element " + std::to_string(j + 1),
                         module, -connection);
        }
    }
    report.notes.push_back(nonzero ? "curvature is nonzero" : "curvature vanishes on every case");
    return report;
}

CheckReport run_fibred_bracket_checks(Inputs& in)
{
    const auto& alg = in.alg();
    const auto& dm = in.module();
    const auto& p0 = dm.p0();
    CheckReport report{.name = "fibred bracket"};
    for (const auto& [f, g] : in.pairs()) {
        ++report.cases;
        const FibredBracket b = fibred_bracket(dm, scaled(p0, f), scaled(p0, g));
        const std::string at = "(" + f.to_string() + ", " + g.to_string() + ")";
        expect_equal(report, at + " {f P0, g P0}' = {f, g} P0", b.from_product, scaled(p0, poisson_bracket(alg, f, g)));
        expect_equal(report, at + " agrees with P0 {f P0, g P0} P0", b.from_product, b.projected);
    }
    const int n = in.count("samples", 2);
    for (int k = 0; k < n; ++k) {
        ++report.cases;
        const StarMatrix l0 = classical_product(classical_product(p0, in.random_classical(dm.rank(), dm.rank())), p0);
        const StarMatrix u = scaled(p0, in.random_coefficient());
        const FibredBracket b = fibred_bracket(dm, l0, u);
        const std::string at = sample(k);
        expect_equal(report, at + " bracket with the center", b.from_product, b.projected);
        expect_equal(report, at + " B_1(L0, u) = P0 C_1(L0, u) P0", induced_endo_product(dm, l0, u).coefficient_matrix(1),
                     classical_product(classical_product(p0, first_order_cochain(alg, l0, u)), p0));
    }
    return report;
}

// ---- morita ----

struct Bimodule {
    EquivalenceBimodule b;
    Series tau;
};

Bimodule bimodule(Inputs& in)
{
    if (in.flag("deformed", false)) {
        const auto& dm = in.module();
        return {EquivalenceBimodule::deformed(dm), deform_full_witness(dm, in.witness())};
    }
    return {EquivalenceBimodule::classical(in.alg(), in.projection()), in.alg().embed(in.witness())};
}

CheckReport run_strong_fullness(Inputs& in)
{
    const Bimodule m = bimodule(in);
    CheckReport report = verify_strongly_full(m.b, m.tau);
    report.notes.push_back(std::string(m.b.is_deformed() ? "deformed" : "classical") + " witness " +
                           m.tau.to_string());
    return report;
}

CheckReport run_nice_identities(Inputs& in)
{
    const Bimodule m = bimodule(in);
    std::vector<std::pair<StarMatrix, StarMatrix>> samples;
    const int n = in.count("samples", 3);
    for (int k = 0; k < n; ++k) {
        StarMatrix x = m.b.project(in.random_classical(m.b.rank(), 1));
        StarMatrix y = m.b.project(in.random_classical(m.b.rank(), 1));
        samples.emplace_back(std::move(x), std::move(y));
    }
    return verify_nice_identities(m.b, m.tau, samples);
}

CheckReport run_theta_adjoint(Inputs& in)
{
    const EquivalenceBimodule b = in.flag("deformed", false) ? EquivalenceBimodule::deformed(in.module())
                                                             : EquivalenceBimodule::classical(in.alg(), in.projection());
    CheckReport report{.name = "theta adjointability"};
    const int n = in.count("samples", 3);
    for (int k = 0; k < n; ++k) {
        std::array<StarMatrix, 4> v{b.project(in.random_classical(b.rank(), 1)),
                                    b.project(in.random_classical(b.rank(), 1)),
                                    b.project(in.random_classical(b.rank(), 1)),
                                    b.project(in.random_classical(b.rank(), 1))};
        CheckReport one = theta_adjointability(b, v[0], v[1], v[2], v[3]);
        for (auto& f : one.failures) {
            f.location = sample(k) + " " + f.location;
        }
        report.merge(one);
    }
    return report;
}

using Runner = std::function<CheckReport(Inputs&)>;

struct Entry {
    TaskInfo info;
    Runner run;
};

const std::vector<Entry>& registry()
{
    static const std::vector<Entry> entries = {
        {{"associativity", {kSamples, {"triples", ParamType::string_triples}}}, run_associativity},
        {{"hermiticity", {kSamples}}, run_hermiticity},
        {{"unit", {kSamples}}, run_unit},
        {{"vey", {}}, run_vey},
        {{"deform_projection", {kProjection, kMethod}}, run_deform_projection},
        {{"intertwiner", {kProjection}}, run_intertwiner},
        {{"factorization", {kSamples}}, run_factorization},
        {{"deform_unitary", {{"unitary", ParamType::matrix, true}}}, run_deform_unitary},
        {{"module_laws", {kProjection, kMethod, kSamples, kElements}}, run_module_laws},
        {{"metric_laws", {kProjection, kMethod, kSamples, kElements}}, run_metric_laws},
        {{"hermitian_equivalence", {kProjection, kMethod, kSamples, kElements}}, run_hermitian_equivalence},
        {{"deform_isometry", {kProjection, kMethod, kSamples, kElements, {"unitary", ParamType::matrix, true}}},
         run_deform_isometry},
        {{"degeneration", {kProjection, kSamples, kWitness}}, run_degeneration},
        {{"poisson_checks", {kSamples, {"expected", ParamType::string_triples}}}, run_poisson_checks},
        {{"module_bracket_checks", {kProjection, kMethod, kSamples, kElements}}, run_module_bracket_checks},
        {{"curvature_compare", {kProjection, kMethod, kPairs, kElements}}, run_curvature_compare},
        {{"fibred_bracket_checks", {kProjection, kMethod, kPairs, kSamples}}, run_fibred_bracket_checks},
        {{"strong_fullness", {kProjection, kMethod, kWitness, kDeformed}}, run_strong_fullness},
        {{"nice_identities", {kProjection, kMethod, kWitness, kDeformed, kSamples}}, run_nice_identities},
        {{"theta_adjoint", {kProjection, kMethod, kDeformed, kSamples}}, run_theta_adjoint},
    };
    return entries;
}

} // namespace

const std::vector<TaskInfo>& task_catalog()
{
    static const std::vector<TaskInfo> catalog = [] {
        std::vector<TaskInfo> out;
        for (const auto& e : registry()) {
            out.push_back(e.info);
        }
        return out;
    }();
    return catalog;
}

const TaskInfo* find_task(std::string_view name)
{
    for (const auto& info : task_catalog()) {
        if (info.name == name) {
            return &info;
        }
    }
    return nullptr;
}

void validate_task_values(const StarAlgebra& alg, const TaskSpec& spec, const std::string& path)
{
    const auto check = [&](const std::string& text, const std::string& at, bool series) {
        try {
            if (series) {
                (void)parse_series(text, alg.variables(), alg.order(), alg.domain());
            } else {
                (void)parse_coefficient(text, alg.variables(), alg.domain());
            }
        } catch (const ParseError& e) {
            throw ScenarioError(at + ": " + e.what());
        } catch (const std::domain_error& e) {
            throw ScenarioError(at + ": " + e.what());
        }
    };
    const TaskInfo* info = find_task(spec.task);
    for (const auto& p : info->params) {
        const std::string key(p.key);
        if (!spec.params.contains(key)) {
            continue;
        }
        const auto& value = spec.params[key];
        const std::string at = path + "/params/" + key;
        if (p.type == ParamType::coefficient) {
            check(value.get<std::string>(), at, false);
        } else if (p.type == ParamType::coefficient_pairs || p.type == ParamType::string_triples) {
            for (std::size_t i = 0; i < value.size(); ++i) {
                for (std::size_t j = 0; j < value[i].size(); ++j) {
                    check(value[i][j].get<std::string>(), at + "/" + std::to_string(i) + "/" + std::to_string(j), key == "triples");
                }
            }
        }
    }
}

const DeformedModule& TaskContext::module(const std::string& projection, const std::string& method)
{
    const auto key = std::make_pair(projection, method);
    auto it = modules_.find(key);
    if (it == modules_.end()) {
        const auto& p0 = fixtures_.matrix(projection);
        it = modules_
                 .emplace(key, method == "recursive" ? DeformedModule::recursive(alg_, p0)
                                                     : DeformedModule::fedosov(alg_, p0))
                 .first;
    }
    return it->second;
}

TaskResult run_task(TaskContext& ctx, const TaskSpec& spec, std::uint64_t seed)
{
    TaskResult result;
    for (const auto& e : registry()) {
        if (e.info.name != spec.task) {
            continue;
        }
        try {
            Inputs in(ctx, spec, seed);
            result.report = e.run(in);
        } catch (const std::exception& ex) {
            result.error = ex.what();
        }
        result.report.name = spec.label;
        return result;
    }
    result.error = "unknown task '" + spec.task + "'";
    return result;
}

} // namespace stardeform::cli
