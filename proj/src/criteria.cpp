#include "tarry/criteria.hpp"

#include <algorithm>
#include <set>

#include "tarry/exact.hpp"

namespace tarry {

const char* to_string(Theorem t) noexcept {
    switch (t) {
        case Theorem::T1: return "T1";
        case Theorem::T2: return "T2";
        case Theorem::T3: return "T3";
        case Theorem::T4: return "T4";
        case Theorem::C: return "C";
    }
    return "?";
}

const char* to_string(KStatus s) noexcept {
    switch (s) {
        case KStatus::divergent: return "divergent";
        case KStatus::convergent: return "convergent";
        case KStatus::unknown: return "unknown";
    }
    return "?";
}

namespace {

long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

// Calls fn(k') for every k' with 0 <= k'_i <= k_i on `subset`, other
// coordinates copied from `base`.
template <class Fn>
bool for_each_lowering(const ExponentVector& base, std::span<const std::size_t> subset, Fn&& fn) {
    std::vector<int> cur(base.exponents().begin(), base.exponents().end());
    for (auto i : subset) cur[i] = 0;
    while (true) {
        if (!fn(cur)) return false;
        std::size_t t = 0;
        for (; t < subset.size(); ++t) {
            const auto i = subset[t];
            if (cur[i] < base[i]) {
                ++cur[i];
                break;
            }
            cur[i] = 0;
        }
        if (t == subset.size()) return true;
    }
}

}  // namespace

bool v_complete(const PolynomialShape& p, std::span<const std::size_t> subset) {
    std::set<std::size_t> uniq(subset.begin(), subset.end());
    if (uniq.size() != subset.size()) throw InputError("v_complete: repeated variable in subset");
    if (!uniq.empty() && *uniq.rbegin() >= p.r()) throw InputError("v_complete: variable index out of range");

    std::set<std::vector<int>> present;
    for (const auto& v : p.monomials()) present.emplace(v.exponents().begin(), v.exponents().end());
    for (const auto& v : p.monomials()) {
        const bool ok = for_each_lowering(v, subset, [&](const std::vector<int>& e) {
            int deg = 0;
            for (int x : e) deg += x;
            return deg == 0 || present.count(e) > 0;
        });
        if (!ok) return false;
    }
    return true;
}

CompletenessResult max_v(const PolynomialShape& p) {
    const std::size_t r = p.r();
    if (r > kMaxCompletenessVariables)
        throw InputError("max_v: exhaustive subset search is limited to r <= " +
                         std::to_string(kMaxCompletenessVariables));
    for (std::size_t v = r; v > 0; --v) {
        std::vector<bool> mask(r, false);
        std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(v), true);
        do {
            std::vector<std::size_t> subset;
            for (std::size_t i = 0; i < r; ++i)
                if (mask[i]) subset.push_back(i);
            if (v_complete(p, subset)) return {v, subset, true};
        } while (std::prev_permutation(mask.begin(), mask.end()));
    }
    return {0, std::vector<std::size_t>{}, true};
}

ShapeInvariants shape_invariants(const PolynomialShape& p) {
    ShapeInvariants s;
    s.r = p.r();
    s.N = p.N();
    s.m = p.m();
    s.S = p.total_exponent_sum();
    const auto dec = structure_decompose(exponent_matrix(p));
    s.rho = dec.rho;
    s.q = dec.q();
    s.structure = dec.blocks;
    s.uniform_structure = dec.uniform();
    const auto cv = max_v(p);
    s.v_max = cv.v;
    s.v_witness = cv.witness.value_or(std::vector<std::size_t>{});
    s.senior_form_full = senior_form_support(p).size() == p.r();
    s.indecomposable = !is_decomposable(p).decomposable;
    return s;
}

std::vector<Certificate> divergence_certificates(const ShapeInvariants& s, int up_to_k) {
    std::vector<Certificate> out;
    const auto r = static_cast<long long>(s.r), N = static_cast<long long>(s.N);
    const auto rho = static_cast<long long>(s.rho), q = static_cast<long long>(s.q);
    const auto v = static_cast<long long>(s.v_max);
    for (long long k = 1; k <= up_to_k; ++k) {
        if (k * rho < N) out.push_back({static_cast<int>(k), Theorem::T1});
        if (k >= q && 2 * k * r <= v + s.S) out.push_back({static_cast<int>(k), Theorem::T2});
    }
    return out;
}

std::vector<Certificate> divergence_certificates(const PolynomialShape& p, int up_to_k) {
    return divergence_certificates(shape_invariants(p), up_to_k);
}

namespace {

bool convergence_hypotheses(const ShapeInvariants& s) { return s.indecomposable && s.senior_form_full && s.rho >= 1; }

// Smallest k with 2kr > r + S.
long long sum_bound(const ShapeInvariants& s) {
    const auto r = static_cast<long long>(s.r);
    return (r + s.S) / (2 * r) + 1;
}

// Smallest k with 2kr >= 2N + r.
long long size_bound(const ShapeInvariants& s) {
    const auto r = static_cast<long long>(s.r);
    return ceil_div(2 * static_cast<long long>(s.N) + r, 2 * r);
}

}  // namespace

std::optional<int> t3_min_k(const ShapeInvariants& s, T3Conditions conds) {
    if (!convergence_hypotheses(s)) return std::nullopt;
    long long k = 1;
    if (conds.k_at_least_q) k = std::max(k, static_cast<long long>(s.q));
    if (conds.size_condition) k = std::max(k, size_bound(s));
    if (conds.sum_condition) k = std::max(k, sum_bound(s));
    return static_cast<int>(k);
}

std::optional<int> t4_min_k(const ShapeInvariants& s) {
    if (!convergence_hypotheses(s) || !s.uniform_structure) return std::nullopt;
    const long long k = std::max({1LL, ceil_div(static_cast<long long>(s.N), static_cast<long long>(s.rho)),
                                  size_bound(s), sum_bound(s)});
    return static_cast<int>(k);
}

std::optional<int> consequence_min_k(const ShapeInvariants& s) {
    if (!convergence_hypotheses(s)) return std::nullopt;
    return static_cast<int>(std::max(static_cast<long long>(s.N), sum_bound(s)));
}

std::optional<Certificate> convergence_certificate(const ShapeInvariants& s) {
    std::optional<Certificate> best;
    auto consider = [&](std::optional<int> k, Theorem t) {
        if (k && (!best || *k < best->k)) best = Certificate{*k, t};
    };
    consider(t3_min_k(s), Theorem::T3);
    consider(t4_min_k(s), Theorem::T4);
    consider(consequence_min_k(s), Theorem::C);
    return best;
}

std::optional<Certificate> convergence_certificate(const PolynomialShape& p) {
    return convergence_certificate(shape_invariants(p));
}

std::optional<Rational> ConvergenceReport::exact_exponent() const {
    if (gamma_low && gamma_high && gamma_low->value == gamma_high->value) return gamma_low->value;
    return std::nullopt;
}

KStatus ConvergenceReport::status(int k) const {
    for (const auto& c : divergence)
        if (c.k == k) return KStatus::divergent;
    if (convergence && k >= convergence->k) return KStatus::convergent;
    return KStatus::unknown;
}

ConvergenceReport convergence_report(const PolynomialShape& p) {
    ConvergenceReport rep;
    rep.shape = shape_invariants(p);
    const auto& s = rep.shape;
    const auto r = static_cast<long long>(s.r), N = static_cast<long long>(s.N);
    const auto rho = static_cast<long long>(s.rho), q = static_cast<long long>(s.q);
    const auto v = static_cast<long long>(s.v_max);

    // T1 covers k < N / rho; T2 covers k <= (v + S) / 2r.
    const long long div_limit = std::max({1LL, ceil_div(N, rho), (v + s.S) / (2 * r)});
    rep.divergence = divergence_certificates(s, static_cast<int>(div_limit));
    rep.t3_k = t3_min_k(s);
    rep.t4_k = t4_min_k(s);
    rep.c_k = consequence_min_k(s);
    rep.convergence = convergence_certificate(s);

    {
        Threshold low{Rational(2 * N, rho), {Theorem::T1}};
        const Rational t2(v + s.S, r);
        // T2 only speaks about k >= q, so its real bound counts when 2q <= (v + S) / r.
        if (Rational(2 * q) <= t2) {
            if (t2 > low.value)
                low = {t2, {Theorem::T2}};
            else if (t2 == low.value)
                low.sources.push_back(Theorem::T2);
        }
        rep.gamma_low = low;
    }
    {
        Threshold high{Rational(r + s.S, r), {}};
        if (rep.t3_k) high.sources.push_back(Theorem::T3);
        if (rep.t4_k) high.sources.push_back(Theorem::T4);
        if (rep.c_k) high.sources.push_back(Theorem::C);
        if (!high.sources.empty()) rep.gamma_high = high;
    }

    int limit = static_cast<int>(div_limit);
    if (rep.convergence) limit = std::max(limit, rep.convergence->k);
    for (int k = 1; k <= limit; ++k) {
        KEntry e{k, rep.status(k), {}};
        if (e.status == KStatus::divergent) {
            for (const auto& c : rep.divergence)
                if (c.k == k) e.tags.push_back(c.tag);
        } else if (e.status == KStatus::convergent) {
            if (rep.t3_k && k >= *rep.t3_k) e.tags.push_back(Theorem::T3);
            if (rep.t4_k && k >= *rep.t4_k) e.tags.push_back(Theorem::T4);
            if (rep.c_k && k >= *rep.c_k) e.tags.push_back(Theorem::C);
        }
        rep.table.push_back(std::move(e));
    }

    if (s.v_max > 0)
        rep.notes.emplace_back(
            "v-completeness reads the bound on the lowered exponents as sum k'_i <= sum of the subset "
            "exponents");
    if (!rep.gamma_high)
        rep.notes.emplace_back("no convergence theorem applies (needs an indecomposable polynomial whose "
                               "senior form contains every variable); gamma_high unknown");
    if (rep.convergence && rep.gamma_high && Rational(rep.convergence->two_k()) > rep.gamma_high->value + 2)
        rep.notes.emplace_back("side conditions (k >= q, 2kr >= 2N + r, k >= N) push the first certified 2k "
                               "past the real threshold");
    for (const auto& e : rep.table)
        if (e.status == KStatus::unknown) {
            rep.notes.emplace_back("some k are covered by no theorem and are reported as unknown");
            break;
        }
    return rep;
}

bool report_consistent(const ConvergenceReport& rep) {
    if (rep.gamma_low && rep.gamma_high && rep.gamma_low->value > rep.gamma_high->value) return false;
    if (!rep.convergence) return true;
    for (const auto& c : rep.divergence)
        if (c.k >= rep.convergence->k) return false;
    return true;
}

}  // namespace tarry
