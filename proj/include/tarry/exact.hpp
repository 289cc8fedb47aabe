#pragma once

// Exact integer / rational linear algebra on GMP integers.

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "tarry/exponent.hpp"

namespace tarry {

class IntMatrix {
   public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols, const std::vector<long long>& entries);
    explicit IntMatrix(const ExponentMatrix& m);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    mpz_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const mpz_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b);
    IntMatrix transposed() const;
    IntMatrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

   private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<mpz_class> data_;
};

/// Rank over Q by fraction-free (Bareiss) elimination.
std::size_t rank_exact(IntMatrix m);
std::size_t rank_exact(const ExponentMatrix& m);

/// Rank of a rational matrix: each row is cleared of denominators first.
std::size_t rank_exact(const std::vector<std::vector<mpq_class>>& rows);

/// Determinant of a square matrix by Bareiss elimination.
mpz_class determinant_exact(IntMatrix m);
mpq_class determinant_exact(const std::vector<std::vector<mpq_class>>& rows);

}  // namespace tarry
