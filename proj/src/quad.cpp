#include "tarry/quad.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "tarry/sampling.hpp"

namespace tarry {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

GaussRule compute_gauss_legendre(std::size_t n) {
    GaussRule rule{std::vector<double>(n), std::vector<double>(n)};
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
        double pp = 1.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                const double dj = static_cast<double>(j);
                p1 = ((2.0 * dj - 1.0) * z * p2 - (dj - 1.0) * p3) / dj;
            }
            pp = dn * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        const double w = 1.0 / ((1.0 - z * z) * pp * pp);  // 2/(...) halved for [0,1]
        rule.nodes[i] = 0.5 * (1.0 - z);
        rule.nodes[n - 1 - i] = 0.5 * (1.0 + z);
        rule.weights[i] = rule.weights[n - 1 - i] = w;
    }
    return rule;
}

// exp(2 pi i phase) with the integer part of the phase removed first.
inline std::complex<double> unit_phase(double phase) {
    const double frac = phase - std::nearbyint(phase);
    return {std::cos(kTwoPi * frac), std::sin(kTwoPi * frac)};
}

std::complex<double> tensor_sum(const PolynomialShape& p, std::span<const double> alpha, std::size_t n) {
    const auto& rule = gauss_legendre(n);
    const std::size_t r = p.r(), N = p.N();
    const auto m = static_cast<std::size_t>(p.m());
    // pw[(i * n + t) * (m + 1) + e] = x_t^e on axis i (same nodes on every axis).
    std::vector<double> pw(n * (m + 1));
    for (std::size_t t = 0; t < n; ++t) {
        double v = 1.0;
        for (std::size_t e = 0; e <= m; ++e, v *= rule.nodes[t]) pw[t * (m + 1) + e] = v;
    }
    std::vector<std::size_t> idx(r, 0);
    std::complex<double> acc = 0.0;
    while (true) {
        double phase = 0.0, w = 1.0;
        for (std::size_t i = 0; i < r; ++i) w *= rule.weights[idx[i]];
        for (std::size_t j = 0; j < N; ++j) {
            if (alpha[j] == 0.0) continue;
            double g = alpha[j];
            for (std::size_t i = 0; i < r; ++i) g *= pw[idx[i] * (m + 1) + static_cast<std::size_t>(p[j][i])];
            phase += g;
        }
        acc += w * unit_phase(phase);
        std::size_t i = 0;
        for (; i < r; ++i) {
            if (++idx[i] < n) break;
            idx[i] = 0;
        }
        if (i == r) break;
    }
    return acc;
}

double radical_inverse(std::size_t index, unsigned base) {
    double inv = 1.0 / base, f = inv, v = 0.0;
    while (index > 0) {
        v += static_cast<double>(index % base) * f;
        index /= base;
        f *= inv;
    }
    return v;
}

constexpr unsigned kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

// Halton mean over points 1..count; also returns the mean over the first half.
std::pair<std::complex<double>, std::complex<double>> halton_sum(const PolynomialShape& p,
                                                                 std::span<const double> alpha, std::size_t count) {
    const std::size_t r = p.r();
    if (r > std::size(kPrimes)) throw QuadratureError("QMC mode supports at most 25 variables");
    std::vector<double> x(r);
    std::complex<double> half = 0.0, acc = 0.0;
    for (std::size_t s = 1; s <= count; ++s) {
        for (std::size_t i = 0; i < r; ++i) x[i] = radical_inverse(s, kPrimes[i]);
        double phase = 0.0;
        for (std::size_t j = 0; j < p.N(); ++j) {
            double g = alpha[j];
            for (std::size_t i = 0; i < r; ++i)
                for (int e = 0; e < p[j][i]; ++e) g *= x[i];
            phase += g;
        }
        acc += unit_phase(phase);
        if (s == count / 2) half = acc;
    }
    return {acc / static_cast<double>(count), half / static_cast<double>(std::max<std::size_t>(count / 2, 1))};
}

}  // namespace

const GaussRule& gauss_legendre(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::unique_ptr<const GaussRule>> cache;
    if (n == 0) throw QuadratureError("Gauss-Legendre rule needs at least one node");
    std::lock_guard lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<const GaussRule>(compute_gauss_legendre(n));
    return *slot;
}

std::size_t frequency_nodes(const PolynomialShape& p, std::span<const double> alpha, double resolution) {
    // Phase cycles along axis i are bounded by sum_j k_ji |alpha_j|.
    double amax = 0.0, cycles = 0.0;
    for (std::size_t j = 0; j < p.N(); ++j) amax = std::max(amax, std::abs(alpha[j]));
    for (std::size_t i = 0; i < p.r(); ++i) {
        double axis = 0.0;
        for (std::size_t j = 0; j < p.N(); ++j) axis += p[j][i] * std::abs(alpha[j]);
        cycles = std::max(cycles, axis);
    }
    const double bound = std::max(p.m() * amax, cycles);
    auto n = static_cast<std::size_t>(std::ceil(8.0 * (1.0 + bound) * std::max(resolution, 1e-9)));
    n = std::max<std::size_t>(n, 8);
    return (n + 7) / 8 * 8;
}

InnerResult inner_integral(const PolynomialShape& p, const CoefficientPoint& alpha, const InnerOptions& opts) {
    if (alpha.alpha.size() != p.N())
        throw InputError("coefficient point has " + std::to_string(alpha.alpha.size()) + " entries, expected " +
                         std::to_string(p.N()));
    for (double a : alpha.alpha)
        if (!std::isfinite(a)) throw InputError("non-finite coefficient");
    if (!(opts.resolution > 0.0)) throw InputError("resolution must be positive");

    InnerResult res;
    if (std::all_of(alpha.alpha.begin(), alpha.alpha.end(), [](double a) { return a == 0.0; })) {
        res.value = 1.0;
        res.nodes = 0;
        res.mode = QuadMode::tensor;
        return res;
    }
    QuadMode mode = opts.mode;
    if (mode == QuadMode::automatic) mode = p.r() <= 3 ? QuadMode::tensor : QuadMode::qmc;
    if (mode == QuadMode::tensor && p.r() > 3) throw InputError("tensor quadrature supports r <= 3; use QMC");
    res.mode = mode;

    if (mode == QuadMode::tensor) {
        const std::size_t n = frequency_nodes(p, alpha.alpha, opts.resolution);
        if (opts.estimate_error) {
            const std::size_t fine = (n + n / 2 + 7) / 8 * 8;
            const auto coarse = tensor_sum(p, alpha.alpha, n);
            res.value = tensor_sum(p, alpha.alpha, fine);
            res.error = std::abs(res.value - coarse);
            res.nodes = fine;
        } else {
            res.value = tensor_sum(p, alpha.alpha, n);
            res.nodes = n;
        }
    } else {
        const auto count = std::max<std::size_t>(
            2, static_cast<std::size_t>(static_cast<double>(opts.qmc_points) * opts.resolution));
        auto [full, half] = halton_sum(p, alpha.alpha, count);
        res.value = full;
        res.error = opts.estimate_error ? std::abs(full - half) : 0.0;
        res.nodes = count;
    }
    if (opts.tolerance && res.error > *opts.tolerance) {
        res.resolved = false;
        if (opts.require_resolved)
            throw QuadratureError("inner integral not resolved: error estimate " + std::to_string(res.error) +
                                  " exceeds tolerance " + std::to_string(*opts.tolerance));
    }
    return res;
}

void check_two_k(int two_k) {
    if (two_k < 2 || two_k % 2 != 0) throw InputError("2k must be a positive even integer, got " + std::to_string(two_k));
}

ShellEstimate shell_mass(const PolynomialShape& p, int two_k, double a_lo, double a_hi, std::size_t samples,
                         std::uint64_t seed, std::uint64_t stream, const InnerOptions& opts) {
    check_two_k(two_k);
    if (!(a_lo >= 0.0) || !(a_hi >= a_lo)) throw InputError("shell bounds must satisfy 0 <= a_lo <= a_hi");
    ShellEstimate est;
    est.a_lo = a_lo;
    est.a_hi = a_hi;
    est.two_k = two_k;
    est.samples = samples;
    const std::size_t N = p.N();
    const double dN = static_cast<double>(N);
    const double lo_n = std::pow(a_lo, dN), hi_n = std::pow(a_hi, dN);
    est.volume = std::pow(2.0 * a_hi, dN) - std::pow(2.0 * a_lo, dN);
    if (a_hi == a_lo || samples == 0) return est;

    const std::size_t batches = batch_count(samples);
    std::vector<double> sums(batches), squares(batches);
    InnerOptions inner = opts;
    inner.require_resolved = false;
    for_each_batch(batches, [&](std::size_t b) {
        Rng rng(derive_seed(seed, stream, b));
        CoefficientPoint pt{std::vector<double>(N)};
        double s = 0.0, s2 = 0.0;
        const std::size_t end = std::min(samples, (b + 1) * kBatchSize);
        for (std::size_t t = b * kBatchSize; t < end; ++t) {
            // Radius of the sup-norm sphere with density ~ t^{N-1}, then a uniform
            // point on one of its 2N faces.
            const double radius = std::pow(lo_n + rng.uniform01() * (hi_n - lo_n), 1.0 / dN);
            const auto face = static_cast<std::size_t>(rng.integer(0, N - 1));
            for (std::size_t j = 0; j < N; ++j) pt.alpha[j] = rng.uniform(-radius, radius);
            pt.alpha[face] = rng.coin() ? radius : -radius;
            const double f = std::pow(std::norm(inner_integral(p, pt, inner).value), two_k / 2);
            s += f;
            s2 += f * f;
        }
        sums[b] = s;
        squares[b] = s2;
    });
    const double n = static_cast<double>(samples);
    const double mean = pairwise_sum(sums) / n;
    const double var = samples > 1 ? std::max(0.0, (pairwise_sum(squares) - n * mean * mean) / (n - 1.0)) : 0.0;
    est.mass = est.volume * mean;
    est.std_error = est.volume * std::sqrt(var / n);
    return est;
}

std::size_t ShellSchedule::shell_count() const {
    if (!(a0 > 0.0) || a_max < 2.0 * a0) return 0;
    return static_cast<std::size_t>(std::floor(std::log2(a_max / a0) + 1e-9));
}

ThetaEstimate theta_truncated(const PolynomialShape& p, int two_k, const ShellSchedule& schedule, std::size_t samples,
                              std::uint64_t seed, const InnerOptions& opts) {
    check_two_k(two_k);
    if (!(schedule.a_max >= 0.0) || !(schedule.a0 > 0.0)) throw InputError("bad shell schedule");
    ThetaEstimate th;
    th.central = shell_mass(p, two_k, 0.0, std::min(schedule.a0, schedule.a_max), samples, seed, 0, opts);
    double acc = th.central.mass;
    th.partial_sums.push_back(acc);
    double lo = schedule.a0;
    for (std::size_t i = 0; i < schedule.shell_count(); ++i, lo *= 2.0) {
        th.shells.push_back(shell_mass(p, two_k, lo, 2.0 * lo, samples, seed, i + 1, opts));
        acc += th.shells.back().mass;
        th.partial_sums.push_back(acc);
    }
    th.total = acc;
    return th;
}

const char* to_string(DecayClass c) noexcept {
    switch (c) {
        case DecayClass::converging: return "converging";
        case DecayClass::diverging: return "diverging";
        case DecayClass::inconclusive: return "inconclusive";
    }
    return "?";
}

const char* to_string(Agreement a) noexcept {
    switch (a) {
        case Agreement::agree: return "agree";
        case Agreement::disagree: return "disagree";
        case Agreement::gap: return "gap";
        case Agreement::inconclusive: return "inconclusive";
    }
    return "?";
}

DecayFit decay_fit_masses(std::span<const double> masses, double eps) {
    if (masses.size() < kFitWindow + 1)
        throw InputError("decay fit needs at least " + std::to_string(kFitWindow + 1) + " shells");
    if (!(eps >= 0.0 && eps < 1.0)) throw InputError("eps must lie in [0, 1)");
    DecayFit fit;
    fit.shells_used = kFitWindow + 1;
    const auto tail = masses.last(kFitWindow + 1);
    if (std::any_of(tail.begin(), tail.end(), [](double m) { return !(m > 0.0); })) {
        fit.classification = DecayClass::inconclusive;
        fit.slope = std::nan("");
        return fit;
    }
    double logs = 0.0;
    for (std::size_t i = 0; i < kFitWindow; ++i) {
        fit.ratios.push_back(tail[i + 1] / tail[i]);
        logs += std::log2(fit.ratios.back());
    }
    fit.slope = logs / static_cast<double>(kFitWindow);
    const double cut = 1.0 - eps;
    if (std::all_of(fit.ratios.begin(), fit.ratios.end(), [&](double q) { return q <= cut; }))
        fit.classification = DecayClass::converging;
    else if (std::all_of(fit.ratios.begin(), fit.ratios.end(), [&](double q) { return q >= cut; }))
        fit.classification = DecayClass::diverging;
    else
        fit.classification = DecayClass::inconclusive;
    return fit;
}

DecayFit decay_fit(std::span<const ShellEstimate> shells, double eps) {
    std::vector<double> masses;
    for (std::size_t i = 0; i < shells.size(); ++i) {
        if (i > 0 && std::abs(shells[i].a_lo - 2.0 * shells[i - 1].a_lo) > 1e-12 * shells[i].a_lo)
            throw InputError("decay fit expects a doubling shell schedule");
        masses.push_back(shells[i].mass);
    }
    return decay_fit_masses(masses, eps);
}

ShellSchedule EstimateConfig::schedule() const {
    ShellSchedule s;
    s.a_max = a_max;
    s.a0 = shells ? a_max / std::ldexp(1.0, static_cast<int>(*shells)) : 1.0;
    return s;
}

EmpiricalReport classify_empirical(const PolynomialShape& p, const EstimateConfig& config) {
    check_two_k(config.two_k);
    EmpiricalReport rep;
    rep.config = config;
    rep.theta = theta_truncated(p, config.two_k, config.schedule(), config.samples, config.seed, config.inner);
    rep.fit = decay_fit(rep.theta.shells, config.eps);

    const auto bounds = convergence_report(p);
    const int k = config.two_k / 2;
    rep.certified = bounds.status(k);
    if (rep.certified == KStatus::divergent) {
        for (const auto& c : bounds.divergence)
            if (c.k == k) rep.certificate_tags.push_back(c.tag);
    } else if (rep.certified == KStatus::convergent) {
        for (const auto& e : bounds.table)
            if (e.k == k) rep.certificate_tags = e.tags;
        if (rep.certificate_tags.empty() && bounds.convergence) rep.certificate_tags.push_back(bounds.convergence->tag);
    }

    if (rep.certified == KStatus::unknown)
        rep.agreement = Agreement::gap;
    else if (rep.fit.classification == DecayClass::inconclusive)
        rep.agreement = Agreement::inconclusive;
    else if ((rep.certified == KStatus::convergent) == (rep.fit.classification == DecayClass::converging))
        rep.agreement = Agreement::agree;
    else
        rep.agreement = Agreement::disagree;
    return rep;
}

}  // namespace tarry
