#pragma once

// Monomial support of a multivariate polynomial and its exponent matrix.

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace tarry {

/// Raised for malformed user input (bad documents, invalid shapes, bad
/// arguments). The CLI maps it to exit code 2.
class InputError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Exponent tuple of one monomial x_1^{k_1} ... x_r^{k_r}. Degree is always >= 1.
class ExponentVector {
   public:
    explicit ExponentVector(std::vector<int> exponents);
    ExponentVector(std::initializer_list<int> exponents) : ExponentVector(std::vector<int>(exponents)) {}

    std::size_t size() const noexcept { return exps_.size(); }
    int degree() const noexcept { return degree_; }
    int operator[](std::size_t i) const { return exps_[i]; }
    std::span<const int> exponents() const noexcept { return exps_; }

    /// Indices of variables with a positive exponent.
    std::vector<std::size_t> support() const;

    friend ExponentVector operator+(const ExponentVector& a, const ExponentVector& b);
    friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

   private:
    std::vector<int> exps_;
    int degree_ = 0;
};

std::string to_string(const ExponentVector& v);

/// Monomial support of F = sum_j alpha_j gamma_j(x). Stored order is the input
/// order; sorting is always an explicit operation (see nl_order.hpp).
class PolynomialShape {
   public:
    PolynomialShape(std::size_t r, std::vector<ExponentVector> monomials);

    std::size_t r() const noexcept { return r_; }
    std::size_t N() const noexcept { return monos_.size(); }
    int m() const noexcept { return m_; }
    const std::vector<ExponentVector>& monomials() const noexcept { return monos_; }
    const ExponentVector& operator[](std::size_t j) const { return monos_[j]; }

    /// Sum of all exponents over all monomials.
    long long total_exponent_sum() const noexcept;
    bool contains(const ExponentVector& v) const;

    friend bool operator==(const PolynomialShape&, const PolynomialShape&) = default;

   private:
    std::size_t r_;
    std::vector<ExponentVector> monos_;
    int m_ = 0;
};

/// Dense row-major N x r matrix of non-negative integer exponents.
class ExponentMatrix {
   public:
    ExponentMatrix(std::size_t rows, std::size_t cols, std::vector<int> entries);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    int operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    std::span<const int> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    /// Rows [first, first+count) as a new matrix.
    ExponentMatrix row_slice(std::size_t first, std::size_t count) const;

    friend bool operator==(const ExponentMatrix&, const ExponentMatrix&) = default;

   private:
    std::size_t rows_, cols_;
    std::vector<int> data_;
};

PolynomialShape parse_polynomial(const nlohmann::json& doc);
PolynomialShape parse_polynomial(std::string_view text);
PolynomialShape load_polynomial(const std::filesystem::path& path);
nlohmann::json to_json(const PolynomialShape& p);

ExponentMatrix exponent_matrix(const PolynomialShape& p);

/// Union of supports of all monomials of top degree m (0-based indices).
std::vector<std::size_t> senior_form_support(const PolynomialShape& p);

struct Decomposition {
    bool decomposable = false;
    /// Connected components of the variable hypergraph (variables that occur).
    std::vector<std::vector<std::size_t>> components;
    /// Variables that occur in no monomial.
    std::vector<std::size_t> unused;
};

/// Splits the occurring variables into connected components, where two
/// variables are joined when some monomial contains both.
Decomposition is_decomposable(const PolynomialShape& p);

}  // namespace tarry
