#include <doctest.h>

#include <cstdlib>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "tarry/quad.hpp"
#include "tarry/sampling.hpp"

using namespace tarry;

namespace {

std::complex<double> I(const PolynomialShape& p, std::vector<double> a, const InnerOptions& o = {}) {
    return inner_integral(p, CoefficientPoint{std::move(a)}, o).value;
}

}  // namespace

TEST_SUITE("quad") {
    TEST_CASE("inner integral examples") {
        auto x = oracle::shape(1, {{1}});
        auto zero = inner_integral(x, CoefficientPoint{{0.0}});
        CHECK(zero.value == std::complex<double>(1.0, 0.0));
        CHECK(zero.error == 0.0);
        CHECK(std::abs(I(x, {1.0})) < 1e-10);
        CHECK(std::abs(I(x, {0.5})) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-12));
        CHECK(inner_integral(oracle::shape(2, {{1, 1}, {2, 0}}), CoefficientPoint{{0.0, 0.0}}).value ==
              std::complex<double>(1.0, 0.0));
        CHECK_THROWS_AS(I(x, {1.0, 2.0}), InputError);
    }

    TEST_CASE("linear phase closed form") {
        auto x = oracle::shape(1, {{1}});
        std::mt19937_64 gen(1);
        std::uniform_real_distribution<double> u(-32.0, 32.0);
        for (int t = 0; t < 100; ++t) {
            const double a = u(gen);
            CHECK(std::abs(I(x, {a}) - oracle::linear_phase(a)) < 1e-8);
        }
    }

    TEST_CASE("separable shapes factor") {
        auto xy = oracle::shape(2, {{1, 0}, {0, 1}});
        auto xyz = oracle::shape(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
        std::mt19937_64 gen(2);
        std::uniform_real_distribution<double> u(-6.0, 6.0);
        for (int t = 0; t < 20; ++t) {
            const double a = u(gen), b = u(gen), c = u(gen);
            const auto fa = oracle::linear_phase(a), fb = oracle::linear_phase(b), fc = oracle::linear_phase(c);
            CHECK(std::abs(I(xy, {a, b}) - fa * fb) < 1e-8);
            CHECK(std::abs(I(xyz, {a, b, c}) - fa * fb * fc) < 1e-8);
        }
    }

    TEST_CASE("quasi Monte Carlo fallback") {
        auto four = oracle::shape(4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
        InnerOptions qmc;
        qmc.mode = QuadMode::qmc;
        auto res = inner_integral(four, CoefficientPoint{{0.3, -0.7, 1.1, 0.2}}, qmc);
        CHECK(res.mode == QuadMode::qmc);
        const auto exact = oracle::linear_phase(0.3) * oracle::linear_phase(-0.7) * oracle::linear_phase(1.1) *
                           oracle::linear_phase(0.2);
        CHECK(std::abs(res.value - exact) < 1e-2);
        CHECK(res.error < 1e-2);
        CHECK(inner_integral(four, CoefficientPoint{{0.3, -0.7, 1.1, 0.2}}).mode == QuadMode::qmc);
        InnerOptions tensor;
        tensor.mode = QuadMode::tensor;
        CHECK_THROWS_AS(inner_integral(four, CoefficientPoint{{0, 0, 0, 1.0}}, tensor), InputError);
    }

    TEST_CASE("tensor matches a one-dimensional oracle for a quadratic phase") {
        auto sq = oracle::shape(1, {{1}, {2}});
        for (double a : {-9.0, -2.5, 0.75, 4.0, 17.0}) {
            const double b = 0.5 * a + 1.0;
            const double re = oracle::simpson([&](double t) { return std::cos(2 * std::numbers::pi * (a * t + b * t * t)); }, 0, 1, 1e-12);
            const double im = oracle::simpson([&](double t) { return std::sin(2 * std::numbers::pi * (a * t + b * t * t)); }, 0, 1, 1e-12);
            CHECK(std::abs(I(sq, {a, b}) - std::complex<double>(re, im)) < 1e-9);
        }
    }

    TEST_CASE("node count resolves the highest frequency") {
        auto p = oracle::shape(2, {{1, 1}, {3, 0}});
        const std::vector<double> a{2.0, -5.0};
        CHECK(frequency_nodes(p, a) >= 8 * (1 + 3 * 5));
        CHECK(frequency_nodes(p, a, 2.0) >= 2 * frequency_nodes(p, a) - 8);
        const auto& rule = gauss_legendre(12);
        double w = 0.0;
        for (double x : rule.weights) w += x;
        CHECK(w == doctest::Approx(1.0).epsilon(1e-14));
    }

    TEST_CASE("modulus bound and conjugate symmetry") {
        std::mt19937_64 gen(4);
        std::uniform_real_distribution<double> u(-6.0, 6.0);
        for (auto name : {"example9.json", "prod23.json", "bind_size.json"}) {
            auto p = load_polynomial(oracle::corpus(name));
            for (int t = 0; t < 10; ++t) {
                std::vector<double> a(p.N());
                for (auto& v : a) v = u(gen);
                auto plus = inner_integral(p, CoefficientPoint{a});
                for (auto& v : a) v = -v;
                auto minus = inner_integral(p, CoefficientPoint{a});
                CHECK(std::abs(plus.value) <= 1.0 + plus.error + 1e-12);
                CHECK(std::abs(plus.value - std::conj(minus.value)) < 1e-12);
            }
        }
    }

    TEST_CASE("half shells carry equal mass") {
        // Two independent estimates on alpha > 0 and alpha < 0 halves of a shell.
        auto sq = oracle::shape(1, {{2}});
        Rng rng(5);
        const std::size_t n = 4000;
        double sp = 0, sp2 = 0, sm = 0, sm2 = 0;
        for (std::size_t t = 0; t < n; ++t) {
            const double fp = std::norm(I(sq, {rng.uniform(2.0, 4.0)}));
            const double fm = std::norm(I(sq, {-rng.uniform(2.0, 4.0)}));
            sp += fp, sp2 += fp * fp, sm += fm, sm2 += fm * fm;
        }
        const double mp = 2 * sp / n, mm = 2 * sm / n;
        const double ep = 2 * std::sqrt((sp2 / n - sp * sp / n / n) / n), em = 2 * std::sqrt((sm2 / n - sm * sm / n / n) / n);
        CHECK(std::abs(mp - mm) < 3 * std::hypot(ep, em));
    }

    TEST_CASE("shell mass against a quadrature oracle") {
        auto x = oracle::shape(1, {{1}});
        CHECK(shell_mass(x, 4, 2.0, 2.0, 100, 1).mass == 0.0);
        CHECK(shell_mass(x, 2, 0.0, 0.0, 100, 1).mass == 0.0);
        const double want = 2 * oracle::simpson(oracle::sinc2, 1.0, 2.0, 1e-13);
        CHECK(want == doctest::Approx(0.0471160061870295).epsilon(1e-10));
        auto est = shell_mass(x, 2, 1.0, 2.0, 20000, 9);
        CHECK(est.volume == doctest::Approx(2.0));
        CHECK(std::abs(est.mass - want) < 3 * est.std_error);
        CHECK_THROWS_AS(shell_mass(x, 3, 1.0, 2.0, 10, 1), InputError);
        CHECK_THROWS_AS(shell_mass(x, 2, 2.0, 1.0, 10, 1), InputError);
        CHECK_THROWS_AS(check_two_k(0), InputError);
    }

    TEST_CASE("two-dimensional shell volume and box mass") {
        auto xy = oracle::shape(2, {{1, 0}, {0, 1}});
        auto est = shell_mass(xy, 2, 0.0, 1.0, 20000, 3);
        CHECK(est.volume == doctest::Approx(4.0));
        const double side = 2 * oracle::simpson(oracle::sinc2, 0.0, 1.0, 1e-13);
        CHECK(std::abs(est.mass - side * side) < 3 * est.std_error);
    }

    TEST_CASE("truncated theta is monotone in the outer radius") {
        auto x = oracle::shape(1, {{1}});
        auto small = theta_truncated(x, 4, ShellSchedule{1.0, 32.0}, 2000, 7);
        auto large = theta_truncated(x, 4, ShellSchedule{1.0, 64.0}, 2000, 7);
        REQUIRE(small.shells.size() == 5);
        REQUIRE(large.shells.size() == 6);
        CHECK(large.total >= small.total);
        for (std::size_t i = 0; i < small.partial_sums.size(); ++i) CHECK(large.partial_sums[i] == small.partial_sums[i]);
        for (std::size_t i = 1; i < large.partial_sums.size(); ++i) CHECK(large.partial_sums[i] >= large.partial_sums[i - 1]);
        CHECK(large.shells.back().mass < 0.01 * large.total);
    }

    TEST_CASE("a square phase at 2k=2 keeps growing") {
        auto sq = oracle::shape(1, {{2}});
        EstimateConfig cfg;
        cfg.two_k = 2;
        cfg.samples = 4000;
        cfg.seed = 3;
        auto rep = classify_empirical(sq, cfg);
        CHECK(rep.fit.classification == DecayClass::diverging);
        CHECK(rep.certified == KStatus::divergent);
        CHECK(rep.agreement == Agreement::agree);
        // Each doubling adds a roughly constant amount: logarithmic growth.
        const auto& ps = rep.theta.partial_sums;
        for (std::size_t i = 2; i < ps.size(); ++i) CHECK((ps[i] - ps[i - 1]) == doctest::Approx(ps[i - 1] - ps[i - 2]).epsilon(0.2));
    }

    TEST_CASE("decay fit examples") {
        const std::vector<double> geometric{1, 0.5, 0.25, 0.125}, flat{1, 1, 1, 1}, mixed{1, 0.9, 1.1, 0.95};
        auto g = decay_fit_masses(geometric);
        CHECK(g.slope == doctest::Approx(-1.0));
        CHECK(g.classification == DecayClass::converging);
        auto f = decay_fit_masses(flat);
        CHECK(f.slope == doctest::Approx(0.0));
        CHECK(f.classification == DecayClass::diverging);
        CHECK(decay_fit_masses(mixed).classification == DecayClass::inconclusive);
        CHECK(decay_fit_masses(std::vector<double>{1, 0.5, 0.0, 0.0}).classification == DecayClass::inconclusive);
        CHECK_THROWS_AS(decay_fit_masses(std::vector<double>{1, 0.5, 0.25}), InputError);
    }

    TEST_CASE("gap region") {
        auto prod = load_polynomial(oracle::corpus("prod22.json"));
        EstimateConfig cfg;
        cfg.two_k = 4;
        cfg.samples = 256;
        cfg.shells = 4;
        cfg.a_max = 16;
        auto rep = classify_empirical(prod, cfg);
        CHECK(rep.certified == KStatus::unknown);
        CHECK(rep.agreement == Agreement::gap);
    }

    TEST_CASE("shell estimates do not depend on the thread count") {
        auto p = load_polynomial(oracle::corpus("example9.json"));
        setenv("TARRY_THREADS", "1", 1);
        auto a = shell_mass(p, 4, 1.0, 2.0, 1000, 99, 3);
        setenv("TARRY_THREADS", "4", 1);
        auto b = shell_mass(p, 4, 1.0, 2.0, 1000, 99, 3);
        unsetenv("TARRY_THREADS");
        CHECK(a.mass == b.mass);
        CHECK(a.std_error == b.std_error);
    }
}
