#pragma once

// Numerical estimation of I(alpha) = int_{[0,1]^r} exp(2 pi i F(x)) dx and of
// truncations of theta_k = int_{R^N} |I(alpha)|^{2k} d alpha over sup-norm
// shells in coefficient space.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tarry/criteria.hpp"
#include "tarry/exponent.hpp"

namespace tarry {

class QuadratureError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct CoefficientPoint {
    std::vector<double> alpha;  ///< one coefficient per monomial
};

enum class QuadMode { automatic, tensor, qmc };

struct InnerOptions {
    QuadMode mode = QuadMode::automatic;  ///< automatic: tensor for r <= 3, QMC above
    double resolution = 1.0;              ///< multiplier on the node count
    bool estimate_error = true;           ///< second, finer rule for an error estimate
    std::optional<double> tolerance;      ///< flag (or reject) estimates with larger error
    bool require_resolved = false;        ///< throw QuadratureError instead of flagging
    std::size_t qmc_points = 1 << 14;
};

struct InnerResult {
    std::complex<double> value;
    double error = 0.0;  ///< |difference to the coarser rule|, 0 when not estimated
    std::size_t nodes = 0;  ///< per axis (tensor) or total points (QMC)
    QuadMode mode = QuadMode::tensor;
    bool resolved = true;
};

/// Gauss-Legendre nodes per axis: at least 8 (1 + B) times the resolution,
/// where B bounds the number of phase cycles across [0,1]
/// (max of m max|alpha_j| and sum_j deg_j |alpha_j|).
std::size_t frequency_nodes(const PolynomialShape& p, std::span<const double> alpha, double resolution = 1.0);

/// Gauss-Legendre rule on [0, 1].
struct GaussRule {
    std::vector<double> nodes, weights;
};
const GaussRule& gauss_legendre(std::size_t n);

InnerResult inner_integral(const PolynomialShape& p, const CoefficientPoint& alpha, const InnerOptions& opts = {});

struct ShellEstimate {
    double a_lo = 0.0, a_hi = 0.0;
    int two_k = 2;
    double volume = 0.0;
    double mass = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

/// Monte Carlo estimate of the integral of |I|^{2k} over
/// {alpha : a_lo <= |alpha|_inf < a_hi}. `stream` separates the random streams
/// of different shells sharing one seed.
ShellEstimate shell_mass(const PolynomialShape& p, int two_k, double a_lo, double a_hi, std::size_t samples,
                         std::uint64_t seed, std::uint64_t stream = 0, const InnerOptions& opts = {});

/// Doubling schedule: central box [-a0, a0]^N, then shells [a0 2^i, a0 2^{i+1})
/// while the upper edge stays <= a_max.
struct ShellSchedule {
    double a0 = 1.0;
    double a_max = 64.0;
    std::size_t shell_count() const;
};

struct ThetaEstimate {
    ShellEstimate central;
    std::vector<ShellEstimate> shells;
    /// central mass, then central + shells[0], ...; accumulated left to right.
    std::vector<double> partial_sums;
    double total = 0.0;
};

ThetaEstimate theta_truncated(const PolynomialShape& p, int two_k, const ShellSchedule& schedule, std::size_t samples,
                              std::uint64_t seed, const InnerOptions& opts = {});

enum class DecayClass { converging, diverging, inconclusive };
const char* to_string(DecayClass c) noexcept;

inline constexpr double kDefaultEpsilon = 0.1;
inline constexpr std::size_t kFitWindow = 3;

struct DecayFit {
    double slope = 0.0;  ///< mean log2 of the trailing shell-mass ratios
    std::vector<double> ratios;
    DecayClass classification = DecayClass::inconclusive;
    std::size_t shells_used = 0;
};

/// Needs >= 4 shells. Converging when every trailing ratio <= 1 - eps,
/// diverging when every ratio >= 1 - eps, inconclusive otherwise or when a
/// mass vanishes.
DecayFit decay_fit(std::span<const ShellEstimate> shells, double eps = kDefaultEpsilon);
DecayFit decay_fit_masses(std::span<const double> masses, double eps = kDefaultEpsilon);

struct EstimateConfig {
    int two_k = 6;
    double a_max = 64.0;
    std::optional<std::size_t> shells;  ///< when set, a0 = a_max / 2^shells
    std::size_t samples = 100000;
    std::uint64_t seed = 42;
    double eps = kDefaultEpsilon;
    InnerOptions inner{QuadMode::automatic, 1.0, false, std::nullopt, false, 1 << 14};

    ShellSchedule schedule() const;
};

enum class Agreement { agree, disagree, gap, inconclusive };
const char* to_string(Agreement a) noexcept;

struct EmpiricalReport {
    EstimateConfig config;
    ThetaEstimate theta;
    DecayFit fit;
    KStatus certified = KStatus::unknown;
    std::vector<Theorem> certificate_tags;
    Agreement agreement = Agreement::gap;
};

/// Runs the shell schedule, fits the decay and compares with the theorem
/// certificate for k = two_k / 2.
EmpiricalReport classify_empirical(const PolynomialShape& p, const EstimateConfig& config);

/// Rejects odd or non-positive powers.
void check_two_k(int two_k);

}  // namespace tarry
