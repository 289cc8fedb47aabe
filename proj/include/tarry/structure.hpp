#pragma once

// Block structure of the exponent matrix and the randomized rank / singular
// set checks built on it.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "tarry/exponent.hpp"

namespace tarry {

/// Rows are split into consecutive blocks A_1..A_q. Each block has full row
/// rank, and appending the next block's first row does not raise its rank.
struct StructureDecomposition {
    std::size_t rho = 0;                                   ///< rank of the whole matrix
    std::vector<std::size_t> blocks;                       ///< (rho_1, ..., rho_q)
    std::vector<std::pair<std::size_t, std::size_t>> spans;  ///< [first, end) rows per block

    std::size_t q() const noexcept { return blocks.size(); }
    /// All blocks have size rho.
    bool uniform() const noexcept;
};

/// Greedy scan: extend the current block while the incoming row is linearly
/// independent of it, otherwise start a new block at that row.
StructureDecomposition structure_decompose(const ExponentMatrix& m);

/// Exponent pairs (i, j), 0 <= i <= n, 0 <= j <= m, i + j >= 1, in increasing
/// n.-l. order. Requires n >= m >= 1.
ExponentMatrix two_var_matrix(int n, int m);
PolynomialShape two_var_shape(int n, int m);

struct Prop3Report {
    std::size_t N = 0, q = 0;
    std::size_t trials = 0, passes = 0;
    double fraction = 0.0;
};

/// Draws q random dyadic points in (0,1]^r and checks exactly whether
/// (K(x_1), ..., K(x_q)) has rank N.
Prop3Report prop3_rank_check(const PolynomialShape& p, std::size_t trials, std::uint64_t seed);

inline constexpr double kDefaultDelta = 1.0 / 16.0;

struct SingularSampleReport {
    int k = 1;
    double lambda = 0.0, delta = kDefaultDelta;
    std::size_t trials = 0, in_d_lambda = 0;
    double fraction = 0.0;
    /// Levels j = 1..m-1 whose Gram determinants Phi_j enter the minimum.
    int levels = 0;
    /// Smallest Phi_j seen over all samples (+inf when no level applies).
    double min_phi = std::numeric_limits<double>::infinity();
};

/// Fraction of uniform samples of [delta, 1]^{2kr} with min_{1<=j<=m-1} Phi_j >= lambda.
/// lambda = +inf is a sentinel that no point satisfies.
SingularSampleReport singular_fraction(const PolynomialShape& p, int k, double lambda, std::size_t trials,
                                       std::uint64_t seed, double delta = kDefaultDelta);

}  // namespace tarry
