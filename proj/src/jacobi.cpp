#include "tarry/jacobi.hpp"

#include <cmath>
#include <stdexcept>

namespace tarry {

namespace {

void check_points(const PolynomialShape& p, std::size_t expected, const std::vector<Point>& points) {
    if (points.size() != expected)
        throw InputError("expected " + std::to_string(expected) + " points, got " + std::to_string(points.size()));
    for (const auto& x : points) {
        if (x.size() != p.r()) throw InputError("point has wrong dimension");
        for (double c : x)
            if (c == 0.0) throw InputError("zero coordinate: the matrix families need non-zero variables");
    }
}

void check_k(int k) {
    if (k < 1) throw InputError("k must be a positive integer");
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("symbolic coefficient overflow");
    return out;
}

}  // namespace

SignedMonomial SignedMonomial::derivative(std::size_t point_index, std::size_t var) const {
    if (coef == 0 || point_index != point || exps[var] == 0) return {0, point, exps};
    SignedMonomial d{checked_mul(coef, exps[var]), point, exps};
    --d.exps[var];
    return d;
}

double SignedMonomial::eval(const std::vector<Point>& points) const {
    if (coef == 0) return 0.0;
    double v = static_cast<double>(coef);
    const auto& x = points[point];
    for (std::size_t i = 0; i < exps.size(); ++i)
        if (exps[i]) v *= std::pow(x[i], exps[i]);
    return v;
}

mpq_class SignedMonomial::eval(const std::vector<RationalPoint>& points) const {
    if (coef == 0) return 0;
    mpq_class v(static_cast<long>(coef));
    const auto& x = points[point];
    for (std::size_t i = 0; i < exps.size(); ++i)
        for (int e = 0; e < exps[i]; ++e) v *= x[i];
    return v;
}

Eigen::MatrixXd SymbolicMatrix::eval(const std::vector<Point>& points) const {
    Eigen::MatrixXd m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).eval(points);
    return m;
}

std::vector<std::vector<mpq_class>> SymbolicMatrix::eval(const std::vector<RationalPoint>& points) const {
    std::vector<std::vector<mpq_class>> m(rows_, std::vector<mpq_class>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m[i][j] = (*this)(i, j).eval(points);
    return m;
}

const char* to_string(Family f) noexcept {
    switch (f) {
        case Family::S: return "S";
        case Family::K: return "K";
        case Family::J0: return "J0";
        case Family::PhiLevel: return "phi_level";
    }
    return "?";
}

SymbolicMatrix j0_symbolic(const PolynomialShape& p, int k) {
    check_k(k);
    const std::size_t r = p.r(), pts = 2 * static_cast<std::size_t>(k);
    SymbolicMatrix J(p.N(), pts * r);
    for (std::size_t j = 0; j < p.N(); ++j) {
        const auto e = p[j].exponents();
        for (std::size_t t = 0; t < pts; ++t) {
            SignedMonomial g{t < static_cast<std::size_t>(k) ? 1 : -1, t, {e.begin(), e.end()}};
            for (std::size_t i = 0; i < r; ++i) J(j, t * r + i) = g.derivative(t, i);
        }
    }
    return J;
}

SymbolicMatrix iterated_symbolic(const PolynomialShape& p, int k, int level) {
    if (level < 1 || level > p.m())
        throw InputError("level must lie in [1, " + std::to_string(p.m()) + "], got " + std::to_string(level));
    SymbolicMatrix cur = j0_symbolic(p, k);
    const std::size_t r = p.r(), vars = 2 * static_cast<std::size_t>(k) * r;
    for (int l = 2; l <= level; ++l) {
        SymbolicMatrix next(vars, cur.rows() * cur.cols());
        std::size_t c = 0;
        for (std::size_t col = 0; col < cur.cols(); ++col)
            for (std::size_t row = 0; row < cur.rows(); ++row, ++c) {
                const auto& f = cur(row, col);
                for (std::size_t v = 0; v < vars; ++v) next(v, c) = f.derivative(v / r, v % r);
            }
        cur = std::move(next);
    }
    return cur;
}

double monomial_value(const ExponentVector& v, const Point& x) {
    double g = 1.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) g *= std::pow(x[i], v[i]);
    return g;
}

EvaluatedMatrix s_matrix_at(const PolynomialShape& p, const Point& x) {
    check_points(p, 1, {x});
    EvaluatedMatrix out{Family::S, 1, {x}, Eigen::MatrixXd(p.N(), p.r())};
    for (std::size_t j = 0; j < p.N(); ++j) {
        const double g = monomial_value(p[j], x);
        for (std::size_t i = 0; i < p.r(); ++i)
            out.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = p[j][i] * g / x[i];
    }
    return out;
}

EvaluatedMatrix k_matrix_at(const PolynomialShape& p, const Point& x) {
    check_points(p, 1, {x});
    EvaluatedMatrix out{Family::K, 1, {x}, Eigen::MatrixXd(p.N(), p.r())};
    for (std::size_t j = 0; j < p.N(); ++j) {
        const double g = monomial_value(p[j], x);
        for (std::size_t i = 0; i < p.r(); ++i)
            out.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = p[j][i] * g;
    }
    return out;
}

EvaluatedMatrix j0_at(const PolynomialShape& p, int k, const std::vector<Point>& points) {
    check_k(k);
    check_points(p, 2 * static_cast<std::size_t>(k), points);
    return {Family::J0, 1, points, j0_symbolic(p, k).eval(points)};
}

EvaluatedMatrix iterated_jacobi(const PolynomialShape& p, int k, int level, const std::vector<Point>& points) {
    check_k(k);
    check_points(p, 2 * static_cast<std::size_t>(k), points);
    return {Family::PhiLevel, level, points, iterated_symbolic(p, k, level).eval(points)};
}

double gram_determinant(const Eigen::MatrixXd& m) {
    if (m.rows() == 0) return 1.0;
    if (m.rows() > m.cols()) return 0.0;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m.transpose());
    const Eigen::MatrixXd& R = qr.matrixQR();
    double d = 1.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) d *= R(i, i) * R(i, i);
    return d;
}

std::vector<double> system_residual(const PolynomialShape& p, int k, const std::vector<Point>& points) {
    check_k(k);
    const auto pts = 2 * static_cast<std::size_t>(k);
    if (points.size() != pts) throw InputError("expected " + std::to_string(pts) + " points");
    for (const auto& x : points)
        if (x.size() != p.r()) throw InputError("point has wrong dimension");
    std::vector<double> res(p.N(), 0.0);
    // Paired differences, so that x_{k+i} = x_i gives exactly zero.
    const auto kk = static_cast<std::size_t>(k);
    for (std::size_t j = 0; j < p.N(); ++j)
        for (std::size_t t = 0; t < kk; ++t)
            res[j] += monomial_value(p[j], points[t]) - monomial_value(p[j], points[t + kk]);
    return res;
}

}  // namespace tarry
