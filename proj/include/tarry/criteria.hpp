#pragma once

// Divergence / convergence certificates for the special integral theta_k and
// the real brackets they imply on the convergence exponent.
//
// Theorem tags:
//   T1  k rho < N                                   => theta_k diverges
//   T2  v-complete, k >= q, 2kr <= v + S            => diverges
//   T3  indecomposable, senior form full,
//       k >= q, 2kr >= 2N + r, 2kr > r + S          => converges
//   T4  as T3 with uniform structure (rho,...,rho),
//       k rho >= N, 2kr >= 2N + r, 2kr > r + S      => converges
//   C   indecomposable, senior form full,
//       k >= N, 2kr > r + S                         => converges
// where S is the sum of all exponents of all monomials.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "tarry/exponent.hpp"
#include "tarry/structure.hpp"

namespace tarry {

using Rational = boost::rational<long long>;

enum class Theorem { T1, T2, T3, T4, C };
const char* to_string(Theorem t) noexcept;

inline constexpr std::size_t kMaxCompletenessVariables = 12;

/// Downward closure on `subset`: with every monomial the support contains each
/// monomial obtained by lowering the subset exponents (0 <= k'_i <= k_i),
/// keeping the rest, provided the result has degree >= 1. The empty subset is
/// always complete. Indices are 0-based.
bool v_complete(const PolynomialShape& p, std::span<const std::size_t> subset);

struct CompletenessResult {
    std::size_t v = 0;
    std::optional<std::vector<std::size_t>> witness;
    bool is_complete = true;
};

/// Largest v with a complete v-subset (exhaustive; r <= 12).
CompletenessResult max_v(const PolynomialShape& p);

/// Everything the theorems read off a shape.
struct ShapeInvariants {
    std::size_t r = 0, N = 0;
    int m = 0;
    long long S = 0;
    std::size_t rho = 0, q = 0;
    std::vector<std::size_t> structure;
    std::size_t v_max = 0;
    std::vector<std::size_t> v_witness;
    bool senior_form_full = false;
    bool indecomposable = false;
    bool uniform_structure = false;
};

ShapeInvariants shape_invariants(const PolynomialShape& p);

struct Certificate {
    int k = 0;
    Theorem tag = Theorem::T1;
    int two_k() const noexcept { return 2 * k; }
    friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Every (k, tag) with k <= up_to_k certified divergent, ordered by k then tag.
std::vector<Certificate> divergence_certificates(const ShapeInvariants& s, int up_to_k);
std::vector<Certificate> divergence_certificates(const PolynomialShape& p, int up_to_k);

/// Which of the three convergence inequalities of T3 are enforced.
struct T3Conditions {
    bool k_at_least_q = true;
    bool size_condition = true;  ///< 2kr >= 2N + r
    bool sum_condition = true;   ///< 2kr > r + S
};

/// Smallest k satisfying each theorem's inequalities, or nullopt when its
/// hypotheses fail. Every condition is monotone in k, so all larger k are
/// certified as well.
std::optional<int> t3_min_k(const ShapeInvariants& s, T3Conditions conds = {});
std::optional<int> t4_min_k(const ShapeInvariants& s);
std::optional<int> consequence_min_k(const ShapeInvariants& s);

/// Smallest certified k over T3, T4 and C (ties resolved in that order).
std::optional<Certificate> convergence_certificate(const ShapeInvariants& s);
std::optional<Certificate> convergence_certificate(const PolynomialShape& p);

enum class KStatus { divergent, convergent, unknown };
const char* to_string(KStatus s) noexcept;

struct KEntry {
    int k = 0;
    KStatus status = KStatus::unknown;
    std::vector<Theorem> tags;
};

struct Threshold {
    Rational value;
    std::vector<Theorem> sources;
};

struct ConvergenceReport {
    ShapeInvariants shape;
    std::vector<Certificate> divergence;
    /// Per-theorem smallest convergent k (absent when hypotheses fail).
    std::optional<int> t3_k, t4_k, c_k;
    std::optional<Certificate> convergence;
    /// Supremum of real 2k excluded by T1 / T2.
    std::optional<Threshold> gamma_low;
    /// Real threshold 2k > (r + S) / r of the applicable convergence theorems.
    std::optional<Threshold> gamma_high;
    /// k = 1 .. table_limit.
    std::vector<KEntry> table;
    std::vector<std::string> notes;

    std::optional<Rational> exact_exponent() const;
    KStatus status(int k) const;
};

ConvergenceReport convergence_report(const PolynomialShape& p);

/// No k both divergent and convergent, gamma_low <= gamma_high, and every
/// divergent k below every convergent k.
bool report_consistent(const ConvergenceReport& rep);

}  // namespace tarry
