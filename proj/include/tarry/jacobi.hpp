#pragma once

// Symbolic and evaluated matrix families attached to the system
//   gamma_j(x_1) + ... + gamma_j(x_k) - gamma_j(x_{k+1}) - ... - gamma_j(x_{2k}) = 0.
//
// Every entry of these matrices is a signed monomial in the coordinates of a
// single point, so the families are closed under differentiation and are built
// symbolically before being evaluated.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

#include "tarry/exponent.hpp"

namespace tarry {

using Point = std::vector<double>;
using RationalPoint = std::vector<mpq_class>;

/// coef * prod_i x_{point,i}^{exps[i]}; coef == 0 is the zero function.
struct SignedMonomial {
    std::int64_t coef = 0;
    std::size_t point = 0;
    std::vector<int> exps;

    bool is_zero() const noexcept { return coef == 0; }
    SignedMonomial derivative(std::size_t point_index, std::size_t var) const;
    double eval(const std::vector<Point>& points) const;
    mpq_class eval(const std::vector<RationalPoint>& points) const;
};

class SymbolicMatrix {
   public:
    SymbolicMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    SignedMonomial& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const SignedMonomial& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Eigen::MatrixXd eval(const std::vector<Point>& points) const;
    std::vector<std::vector<mpq_class>> eval(const std::vector<RationalPoint>& points) const;

   private:
    std::size_t rows_, cols_;
    std::vector<SignedMonomial> data_;
};

enum class Family { S, K, J0, PhiLevel };

const char* to_string(Family f) noexcept;

struct EvaluatedMatrix {
    Family family;
    int level = 1;                 ///< derivative level for PhiLevel (J0 is level 1)
    std::vector<Point> points;     ///< evaluation point(s)
    Eigen::MatrixXd values;
};

/// N x 2kr Jacobi matrix of the connected system; column (t*r + i) holds
/// d/dx_{t,i}, with sign + for the first k points and - for the last k.
SymbolicMatrix j0_symbolic(const PolynomialShape& p, int k);

/// Level-j matrix: level 1 is J0; level j+1 is the transposed Jacobi matrix
/// (2kr rows) of the entries of level j read column by column.
SymbolicMatrix iterated_symbolic(const PolynomialShape& p, int k, int level);

/// N x r block S(x): entry (j,i) = d gamma_j / d x_i.
EvaluatedMatrix s_matrix_at(const PolynomialShape& p, const Point& x);
/// N x r block K(x): entry (j,i) = k_{ji} gamma_j(x).
EvaluatedMatrix k_matrix_at(const PolynomialShape& p, const Point& x);
EvaluatedMatrix j0_at(const PolynomialShape& p, int k, const std::vector<Point>& points);
EvaluatedMatrix iterated_jacobi(const PolynomialShape& p, int k, int level, const std::vector<Point>& points);

/// det(M * M^T), computed as the squared diagonal product of R in M^T = QR, so
/// the result is never negative.
double gram_determinant(const Eigen::MatrixXd& m);

/// Left-hand sides of the connected system at 2k points.
std::vector<double> system_residual(const PolynomialShape& p, int k, const std::vector<Point>& points);

/// Value of gamma_j at x.
double monomial_value(const ExponentVector& v, const Point& x);

}  // namespace tarry
