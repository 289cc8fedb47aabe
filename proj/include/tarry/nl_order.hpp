#pragma once

// Normally-lexicographic order: compare total degree first, then ordinary
// lexicographic order on the stored variable order.

#include <span>

#include "tarry/exponent.hpp"

namespace tarry {

enum class Order { less, equal, greater };

const char* to_string(Order o) noexcept;

/// Throws InputError on length mismatch. Accepts arbitrary non-negative
/// vectors (including the zero vector) so it can serve as the monoid order.
Order nl_compare(std::span<const int> a, std::span<const int> b);
Order nl_compare(const ExponentVector& a, const ExponentVector& b);

/// Strict n.-l. "precedes".
inline bool nl_less(const ExponentVector& a, const ExponentVector& b) { return nl_compare(a, b) == Order::less; }

PolynomialShape nl_sort(const PolynomialShape& p);

/// n.-l. maximum of the monomial set.
ExponentVector high_member(const PolynomialShape& p);

/// Support of the product of two polynomials with positive coefficients:
/// all pairwise exponent sums, deduplicated, in first-occurrence order.
PolynomialShape support_product(const PolynomialShape& p, const PolynomialShape& q);

}  // namespace tarry
