#pragma once

// Checks of the monomial Hessian determinant identity and of the (2,...,2[,1])
// structure of the complete two-variable exponent matrix.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "tarry/exponent.hpp"
#include "tarry/jacobi.hpp"
#include "tarry/structure.hpp"

namespace tarry {

/// det A where A_{ij} = k_i (k_j - delta_ij) x^k / (x_i x_j), i.e. the
/// transposed Jacobi matrix of the gradient of x^k. Requires r > 1, all k_i >= 1
/// and non-zero coordinates.
double monomial_hessian_det(const ExponentVector& kvec, const Point& x);
mpq_class monomial_hessian_det(const ExponentVector& kvec, const RationalPoint& x);

/// (-1)^r (1 - sum k_i): the determinant left after the row factors k_i and the
/// monomial factors are divided out.
long long hessian_reduced_factor(const ExponentVector& kvec);

/// Closed form of det A: reduced factor * prod k_i * (x^k)^r / prod x_i^2.
double hessian_closed_form(const ExponentVector& kvec, const Point& x);
mpq_class hessian_closed_form(const ExponentVector& kvec, const RationalPoint& x);

struct Lemma2Result {
    std::vector<int> exponents;
    std::size_t trials = 0;
    std::size_t passes = 0;  ///< points within tolerance with matching sign
    double max_relative_error = 0.0;
    bool sign_ok = true;
    long long closed_form_factor = 0;
    bool exact = false;  ///< exact rational mode
    bool pass = false;
};

inline constexpr double kLemma2Tolerance = 1e-9;

/// Compares det A against the closed form at random points of [delta, 1]^r.
Lemma2Result verify_lemma2(const ExponentVector& kvec, std::size_t trials, std::uint64_t seed,
                           double delta = kDefaultDelta);

/// Same comparison with exact dyadic rational points; max_relative_error is 0
/// on success.
Lemma2Result verify_lemma2_exact(const ExponentVector& kvec, std::size_t trials, std::uint64_t seed);

struct MixedBlock {
    std::size_t first_row = 0;
    int a = 0;               ///< j-exponent of the block's first row (n, a)
    long long det = 0;
    long long lower_bound = 0;  ///< n (m - a)
};

struct Lemma1Report {
    int n = 0, m = 0;
    std::size_t rows = 0;
    StructureDecomposition structure;
    bool structure_ok = false;
    bool blocks_nonsingular = false;
    /// Blocks whose rows are (n, a), (n - m + 1 + a, m).
    std::vector<MixedBlock> bounded_blocks;
    bool bounds_ok = false;
    bool pass = false;
};

Lemma1Report verify_lemma1(int n, int m);

}  // namespace tarry
