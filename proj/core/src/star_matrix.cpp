#include "stardeform/star_matrix.hpp"

#include <sstream>
#include <stdexcept>

#include "stardeform/parse.hpp"

namespace stardeform {

namespace {

void require_same_shape(const StarMatrix& a, const StarMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("matrix dimension mismatch: " + std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                    std::to_string(b.cols()));
    }
}

void require_square(const StarMatrix& m, const char* what)
{
    if (!m.is_square()) {
        throw std::invalid_argument(std::string(what) + " needs a square matrix");
    }
}

CoefficientDomain join(CoefficientDomain a, CoefficientDomain b)
{
    return a == CoefficientDomain::rational || b == CoefficientDomain::rational ? CoefficientDomain::rational
                                                                                : CoefficientDomain::polynomial;
}

CoefficientDomain domain_of(const StarMatrix& m)
{
    CoefficientDomain d = CoefficientDomain::polynomial;
    for (const auto& e : m.entries()) {
        d = join(d, e.domain());
    }
    return d;
}

using Grid = std::vector<Coefficient>;

Grid minor(const Grid& m, std::size_t n, std::size_t skip_row, std::size_t skip_col)
{
    Grid out;
    out.reserve((n - 1) * (n - 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n && i != skip_row; ++j) {
            if (j != skip_col) {
                out.push_back(m[i * n + j]);
            }
        }
    }
    return out;
}

Coefficient det(const Grid& m, std::size_t n)
{
    if (n == 1) {
        return m[0];
    }
    if (n == 2) {
        return m[0] * m[3] - m[1] * m[2];
    }
    Coefficient acc = m[0].zero();
    for (std::size_t j = 0; j < n; ++j) {
        if (m[j].is_zero()) {
            continue;
        }
        Coefficient term = m[j] * det(minor(m, n, 0, j), n - 1);
        if (j % 2 == 0) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    return acc;
}

Grid classical_grid(const StarMatrix& m)
{
    Grid g;
    for (const auto& e : m.entries()) {
        g.push_back(e[0]);
    }
    return g;
}

} // namespace

StarMatrix::StarMatrix(std::size_t rows, std::size_t cols, const Series& fill) :
    rows_(rows), cols_(cols), entries_(rows * cols, fill)
{
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("matrix dimensions must be positive");
    }
}

StarMatrix StarMatrix::zero(const StarAlgebra& alg, std::size_t rows, std::size_t cols)
{
    return {rows, cols, alg.zero()};
}

StarMatrix StarMatrix::identity(const StarAlgebra& alg, std::size_t n)
{
    StarMatrix m = zero(alg, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = alg.one();
    }
    return m;
}

StarMatrix StarMatrix::unit_column(const StarAlgebra& alg, std::size_t n, std::size_t j)
{
    StarMatrix m = zero(alg, n, 1);
    m(j, 0) = alg.one();
    return m;
}

StarMatrix StarMatrix::classical(const StarAlgebra& alg, std::size_t rows, std::size_t cols,
                                 const std::vector<Coefficient>& entries)
{
    if (entries.size() != rows * cols) {
        throw std::invalid_argument("expected " + std::to_string(rows * cols) + " matrix entries, got " +
                                    std::to_string(entries.size()));
    }
    StarMatrix m = zero(alg, rows, cols);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        m.entries_[k] = alg.embed(entries[k]);
    }
    return m;
}

StarMatrix StarMatrix::coefficient_matrix(std::size_t r) const
{
    StarMatrix out = *this;
    for (auto& e : out.entries_) {
        e = Series(e[r], e.order()).lifted(e.domain());
    }
    return out;
}

bool StarMatrix::is_classical() const
{
    for (const auto& e : entries_) {
        if (!e.is_classical()) {
            return false;
        }
    }
    return true;
}

bool StarMatrix::is_zero() const
{
    for (const auto& e : entries_) {
        if (!e.is_zero()) {
            return false;
        }
    }
    return true;
}

std::optional<int> StarMatrix::leading_order() const
{
    std::optional<int> lead;
    for (const auto& e : entries_) {
        auto l = e.leading_order();
        if (l && (!lead || *l < *lead)) {
            lead = l;
        }
    }
    return lead;
}

StarMatrix StarMatrix::operator-() const
{
    StarMatrix out = *this;
    for (auto& e : out.entries_) {
        e = -e;
    }
    return out;
}

StarMatrix& StarMatrix::operator+=(const StarMatrix& o)
{
    require_same_shape(*this, o);
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] += o.entries_[k];
    }
    return *this;
}

StarMatrix& StarMatrix::operator-=(const StarMatrix& o)
{
    require_same_shape(*this, o);
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] -= o.entries_[k];
    }
    return *this;
}

StarMatrix& StarMatrix::operator*=(const GaussianRational& c)
{
    for (auto& e : entries_) {
        e *= c;
    }
    return *this;
}

StarMatrix& StarMatrix::operator*=(const Coefficient& c)
{
    for (auto& e : entries_) {
        e *= c;
    }
    return *this;
}

bool operator==(const StarMatrix& a, const StarMatrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

StarMatrix StarMatrix::adjoint() const
{
    StarMatrix out(cols_, rows_, entries_.front());
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(j, i) = (*this)(i, j).conj();
        }
    }
    return out;
}

StarMatrix StarMatrix::shifted(int k) const
{
    return map([k](const Series& s) { return s.shifted(k); });
}

StarMatrix StarMatrix::truncated(int order) const
{
    return map([order](const Series& s) { return s.truncated(order); });
}

StarMatrix StarMatrix::map(const std::function<Series(const Series&)>& f) const
{
    StarMatrix out = *this;
    for (auto& e : out.entries_) {
        e = f(e);
    }
    return out;
}

std::string StarMatrix::to_string() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) {
            os << (j ? ", " : "") << (*this)(i, j).to_string();
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

bool expect_equal(CheckReport& report, const std::string& location, const StarMatrix& lhs, const StarMatrix& rhs)
{
    if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
        report.fail(location, std::nullopt, "matrix dimensions differ");
        return false;
    }
    std::optional<int> first;
    std::string where;
    std::string residual;
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        for (std::size_t j = 0; j < lhs.cols(); ++j) {
            const Series d = lhs(i, j) - rhs(i, j);
            auto l = d.leading_order();
            if (l && (!first || *l < *first)) {
                first = l;
                where = "entry (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")";
                residual = d[static_cast<std::size_t>(*l)].to_string();
            }
        }
    }
    if (first) {
        report.fail(location + " " + where, first, "residual " + residual);
        return false;
    }
    return true;
}

StarMatrix parse_matrix(const StarAlgebra& alg, std::size_t rows, std::size_t cols,
                        const std::vector<std::string>& entries)
{
    if (entries.size() != rows * cols) {
        throw std::invalid_argument("expected " + std::to_string(rows * cols) + " matrix entries, got " +
                                    std::to_string(entries.size()));
    }
    StarMatrix m = StarMatrix::zero(alg, rows, cols);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        m(k / cols, k % cols) = parse_series(entries[k], alg.variables(), alg.order(), alg.domain());
    }
    return m;
}

StarMatrix star(const StarAlgebra& alg, const StarMatrix& a, const StarMatrix& b)
{
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matrix dimension mismatch in product: " + std::to_string(a.cols()) + " vs " +
                                    std::to_string(b.rows()));
    }
    std::vector<Jet> ja;
    std::vector<Jet> jb;
    ja.reserve(a.entries().size());
    jb.reserve(b.entries().size());
    for (const auto& e : a.entries()) {
        alg.require_compatible(e);
        ja.emplace_back(e);
    }
    for (const auto& e : b.entries()) {
        alg.require_compatible(e);
        jb.emplace_back(e);
    }
    const CoefficientDomain d = join(domain_of(a), domain_of(b));
    StarMatrix out(a.rows(), b.cols(), Series::zero(alg.variables(), d, alg.order()));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            auto sums = alg.star_accumulator(d);
            for (std::size_t k = 0; k < a.cols(); ++k) {
                alg.star_accumulate(sums, ja[i * a.cols() + k], jb[k * b.cols() + j]);
            }
            for (std::size_t r = 0; r < sums.size(); ++r) {
                out(i, j)[r] = sums[r].total();
            }
        }
    }
    return out;
}

StarMatrix classical_product(const StarMatrix& a, const StarMatrix& b)
{
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matrix dimension mismatch in product");
    }
    const Series& proto = a(0, 0);
    StarMatrix out(a.rows(), b.cols(),
                   Series::zero(proto.variables(), join(domain_of(a), domain_of(b)), proto.order()));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            for (std::size_t k = 0; k < a.cols(); ++k) {
                out(i, j) += cauchy_product(a(i, k), b(k, j));
            }
        }
    }
    return out;
}

Series trace(const StarMatrix& m)
{
    require_square(m, "trace");
    Series acc = m(0, 0);
    for (std::size_t i = 1; i < m.rows(); ++i) {
        acc += m(i, i);
    }
    return acc;
}

MatrixProduct star_product_of(const StarAlgebra& alg)
{
    return [&alg](const StarMatrix& a, const StarMatrix& b) { return star(alg, a, b); };
}

Series determinant(const StarMatrix& m)
{
    require_square(m, "determinant");
    if (!m.is_classical()) {
        throw std::invalid_argument("determinant is only taken of l-constant matrices");
    }
    return Series(det(classical_grid(m), m.rows()), m.order()).lifted(domain_of(m));
}

std::optional<StarMatrix> classical_inverse(const StarMatrix& m)
{
    require_square(m, "inverse");
    const std::size_t n = m.rows();
    const Grid g = classical_grid(m);
    const Coefficient d = det(g, n);
    if (d.is_zero() || (d.domain() == CoefficientDomain::polynomial && !d.is_constant())) {
        return std::nullopt;
    }
    const Coefficient d_inv = d.invert();
    StarMatrix out = m;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Coefficient cof = n == 1 ? g[0].one() : det(minor(g, n, j, i), n - 1);
            if ((i + j) % 2 == 1) {
                cof = -cof;
            }
            out(i, j) = Series(cof * d_inv, m.order()).lifted(domain_of(m));
        }
    }
    return out;
}

StarMatrix mat_series_inverse(const StarAlgebra& alg, const StarMatrix& a)
{
    require_square(a, "inverse");
    auto k = classical_inverse(a.classical_part());
    if (!k) {
        throw std::domain_error("classical part of the matrix is singular");
    }
    StarMatrix h = *k;
    for (int r = 1; r <= alg.order(); ++r) {
        // Order r of a star h, where h_r does not yet contribute.
        const StarMatrix defect = star(alg, a, h).coefficient_matrix(static_cast<std::size_t>(r));
        h -= classical_product(*k, defect).shifted(r);
    }
    return h;
}

StarMatrix star_binomial_half_inverse(const StarAlgebra& alg, const StarMatrix& b)
{
    require_square(b, "binomial series");
    if (!b.classical_part().is_zero()) {
        throw std::domain_error("binomial series needs an argument with zero classical part");
    }
    StarMatrix result = StarMatrix::identity(alg, b.rows());
    StarMatrix power = result;
    for (int k = 1; k <= alg.order(); ++k) {
        power = star(alg, power, b);
        result += power * GaussianRational(binomial_minus_half(static_cast<unsigned>(k)));
    }
    return result;
}

void require_classical_idempotent(const StarMatrix& p0)
{
    require_square(p0, "projection");
    if (!p0.is_classical()) {
        throw std::invalid_argument("P0 must be l-constant");
    }
    if (!(classical_product(p0, p0) == p0)) {
        throw std::invalid_argument("P0 is not idempotent classically");
    }
}

StarMatrix deform_projection_fedosov(const StarAlgebra& alg, const StarMatrix& p0, bool hermitian)
{
    require_classical_idempotent(p0);
    if (hermitian) {
        if (!(p0.adjoint() == p0)) {
            throw std::invalid_argument("P0 is not Hermitian");
        }
        if (!alg.stack().hermitian_flag) {
            throw std::invalid_argument("a Hermitian projection needs a Hermitian star product");
        }
    }
    const std::size_t n = p0.rows();
    const StarMatrix b = (star(alg, p0, p0) - p0) * GaussianRational(4);
    const StarMatrix x = star_binomial_half_inverse(alg, b);
    const StarMatrix half = StarMatrix::identity(alg, n) * GaussianRational(Rational(1, 2));
    return half + star(alg, p0 - half, x);
}

StarMatrix deform_projection_recursive(const StarAlgebra& alg, const StarMatrix& p0)
{
    require_classical_idempotent(p0);
    StarMatrix p = p0;
    for (int k = 1; k <= alg.order(); ++k) {
        const StarMatrix defect = star(alg, p, p) - p;
        const auto lead = defect.leading_order();
        if (!lead) {
            break;
        }
        if (*lead < k) {
            throw std::logic_error("idempotent defect at order " + std::to_string(*lead) + " after lifting to order " +
                                   std::to_string(k - 1));
        }
        if (*lead > k) {
            continue;
        }
        const StarMatrix e = defect.coefficient_matrix(static_cast<std::size_t>(k));
        const StarMatrix pe = classical_product(p0, e);
        const StarMatrix ep = classical_product(e, p0);
        if (!(pe == ep)) {
            throw std::logic_error("P0 E_" + std::to_string(k) + " != E_" + std::to_string(k) +
                                   " P0; the star product is not associative on this input");
        }
        p += (e - pe - ep).shifted(k);
    }
    return p;
}

StarMatrix idempotent_intertwiner(const StarAlgebra& alg, const StarMatrix& p, const StarMatrix& p_prime)
{
    require_same_shape(p, p_prime);
    require_square(p, "intertwiner");
    if (!(p.classical_part() == p_prime.classical_part())) {
        throw std::invalid_argument("idempotents have different classical parts");
    }
    const StarMatrix one = StarMatrix::identity(alg, p.rows());
    return star(alg, p_prime, p) + star(alg, one - p_prime, one - p);
}

StarMatrix hermitian_factorization(const MatrixProduct& product, const StarMatrix& s, const StarMatrix& l0,
                                   const StarMatrix& l0_inverse)
{
    require_square(s, "factorization");
    require_same_shape(s, l0);
    if (!(s.adjoint() == s)) {
        throw std::invalid_argument("S is not Hermitian");
    }
    if (!l0.is_classical()) {
        throw std::invalid_argument("L0 must be l-constant");
    }
    if (!(classical_product(l0.adjoint(), l0) == s.classical_part())) {
        throw std::invalid_argument("classical part of S is not L0* L0");
    }
    const int order = s.order();
    StarMatrix l = l0;
    for (int k = 1; k <= order; ++k) {
        const StarMatrix rest = s - product(l.adjoint(), l);
        const auto lead = rest.leading_order();
        if (!lead) {
            break;
        }
        if (*lead < k) {
            throw std::logic_error("factorization residual at order " + std::to_string(*lead));
        }
        if (*lead > k) {
            continue;
        }
        const StarMatrix b = rest.coefficient_matrix(static_cast<std::size_t>(k));
        const StarMatrix lk = classical_product(b, l0_inverse).adjoint() * GaussianRational(Rational(1, 2));
        l += lk.shifted(k);
    }
    return l;
}

StarMatrix hermitian_factorization(const StarAlgebra& alg, const StarMatrix& s, const StarMatrix& l0)
{
    require_square(l0, "factorization");
    if (!l0.is_classical()) {
        throw std::invalid_argument("L0 must be l-constant");
    }
    auto inv = classical_inverse(l0);
    if (!inv) {
        throw std::domain_error("L0 is not invertible");
    }
    return hermitian_factorization(star_product_of(alg), s, l0, *inv);
}

StarMatrix deform_unitary(const StarAlgebra& alg, const StarMatrix& u0)
{
    require_square(u0, "unitary");
    if (!u0.is_classical()) {
        throw std::invalid_argument("U0 must be l-constant");
    }
    const StarMatrix one = StarMatrix::identity(alg, u0.rows());
    if (!(classical_product(u0.adjoint(), u0) == one) || !(classical_product(u0, u0.adjoint()) == one)) {
        throw std::invalid_argument("U0 is not unitary");
    }
    return hermitian_factorization(alg, one, u0);
}

} // namespace stardeform
