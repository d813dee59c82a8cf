#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "opalab/weights.hpp"

using namespace opalab;

TEST_CASE("dirichlet family evaluates (k+1)^alpha", "[weights]") {
    auto hardy = weight_model<p53>::dirichlet(0.0);
    auto dirichlet = weight_model<p53>::dirichlet(1.0);
    auto bergman = weight_model<p53>::dirichlet(-1.0);

    CHECK(hardy.weight_at(7) == 1.0);
    CHECK(dirichlet.weight_at(4) == 5.0);
    CHECK(bergman.weight_at(3) == 0.25);
    CHECK(hardy.weight_at(0) == 1.0);
    CHECK(dirichlet.weight_at(0) == 1.0);
    CHECK(bergman.weight_at(0) == 1.0);
}

TEST_CASE("partial sums match direct summation", "[weights]") {
    auto hardy = weight_model<p53>::dirichlet(0.0);
    auto dirichlet = weight_model<p53>::dirichlet(1.0);
    auto bergman = weight_model<p53>::dirichlet(-1.0);

    CHECK(hardy.partial_sum(9) == 10.0);   // exact: ten ones
    CHECK(bergman.partial_sum(2) == 6.0);  // 1 + 2 + 3
    CHECK(dirichlet.partial_sum(3) == Catch::Approx(25.0 / 12.0).epsilon(1e-15));

    // Independent oracle: plain left-to-right accumulation.
    for (double alpha : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        auto w = weight_model<p53>::dirichlet(alpha);
        double acc = 0.0;
        for (std::size_t k = 0; k <= 64; ++k) acc += 1.0 / std::pow(k + 1.0, alpha);
        CHECK(w.partial_sum(64) == Catch::Approx(acc).epsilon(1e-14));
    }
}

TEST_CASE("partial sums are increasing and consistent stepwise", "[weights]") {
    auto w = weight_model<p53>::dirichlet(0.7);
    double prev = w.partial_sum(0);
    CHECK(prev == 1.0);
    for (std::size_t n = 1; n <= 200; ++n) {
        const double cur = w.partial_sum(n);
        CHECK(cur > prev);
        CHECK(cur - prev == Catch::Approx(1.0 / w.weight_at(n)).epsilon(1e-12));
        prev = cur;
    }
}

TEST_CASE("partial sums are bit-identical across repeated and out-of-order calls", "[weights]") {
    auto w1 = weight_model<p53>::dirichlet(-1.0);
    auto w2 = weight_model<p53>::dirichlet(-1.0);
    const double a = w1.partial_sum(500);
    const double b = w1.partial_sum(500);
    CHECK(a == b);
    // Different materialization order, same values.
    (void)w2.partial_sum(17);
    (void)w2.partial_sum(123);
    CHECK(w2.partial_sum(500) == a);
}

TEST_CASE("table weights are served verbatim and bounds are enforced", "[weights]") {
    auto w = weight_model<p53>::table({1.0, 2.0, 4.0, 8.0});
    CHECK(w.weight_at(2) == 4.0);
    CHECK(w.partial_sum(3) == Catch::Approx(1.0 + 0.5 + 0.25 + 0.125));
    CHECK_THROWS_AS(w.weight_at(4), std::out_of_range);
    CHECK_THROWS_WITH(w.weight_at(10), Catch::Matchers::ContainsSubstring("length at least 11"));
    CHECK_THROWS_AS(weight_model<p53>::table({}), std::invalid_argument);
    CHECK_THROWS_AS(weight_model<p53>::table({1.0, -2.0}), std::invalid_argument);
    CHECK_THROWS_AS(weight_model<p53>::table({1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("admissibility: dirichlet verdicts split at alpha = 1", "[weights]") {
    for (double alpha : {-1.0, 0.0, 1.0}) {
        auto rep = check_admissibility(weight_model<p53>::dirichlet(alpha), 512, 0.1);
        CHECK(rep.normalized);
        CHECK(rep.monotone);
        CHECK(rep.verdict == divergence_verdict::diverges_analytically);
        CHECK(rep.ratio_trend_ok);
        CHECK(rep.hard_pass());
    }
    auto conv = check_admissibility(weight_model<p53>::dirichlet(1.5), 512, 0.1);
    CHECK(conv.verdict == divergence_verdict::converges_analytically);
}

TEST_CASE("admissibility: ratio diagnostic probes n vs n - floor(sqrt(n))", "[weights]") {
    auto rep = check_admissibility(weight_model<p53>::dirichlet(1.0), 1024, 0.1);
    for (const auto& [n, ratio] : rep.ratio_samples) {
        const auto lag = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
        const double expect = static_cast<double>(n + 1) / static_cast<double>(n - lag + 1);
        CHECK(ratio == Catch::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("admissibility: geometric table fails the ratio trend", "[weights]") {
    std::vector<double> tab;
    double v = 1.0;
    for (int k = 0; k <= 700; ++k) {
        tab.push_back(v);
        v *= 2.0;
    }
    auto w = weight_model<p53>::table(tab);
    auto rep = check_admissibility(w, 256, 0.1);
    CHECK(rep.normalized);
    CHECK(rep.monotone);
    CHECK(rep.verdict == divergence_verdict::inconclusive);
    CHECK_FALSE(rep.ratio_trend_ok);
    // The ratio samples are 2^{floor(sqrt(n))} by construction.
    for (const auto& [n, ratio] : rep.ratio_samples) {
        const auto lag = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
        CHECK(ratio == Catch::Approx(std::pow(2.0, static_cast<double>(lag))));
    }
}

TEST_CASE("admissibility: growth diagnostic compares against n^{1+eps}", "[weights]") {
    auto rep = check_admissibility(weight_model<p53>::dirichlet(1.0), 1024, 0.5);
    for (const auto& g : rep.growth_samples) {
        // sup_{k<=n} w_n/w_k = n+1 for increasing weights with w_0 = 1.
        CHECK(g.sup_ratio == Catch::Approx(static_cast<double>(g.n + 1)));
        CHECK(g.sup_over_power ==
              Catch::Approx(static_cast<double>(g.n + 1) /
                            std::pow(static_cast<double>(g.n), 1.5)));
    }
}

TEST_CASE("admissibility rejects undersized inputs", "[weights]") {
    auto w = weight_model<p53>::dirichlet(0.0);
    CHECK_THROWS_AS(check_admissibility(w, 15, 0.1), std::invalid_argument);
    auto t = weight_model<p53>::table({1.0, 1.0, 1.0});
    CHECK_THROWS_AS(check_admissibility(t, 64, 0.1), std::out_of_range);
}

TEST_CASE("opa usability gate", "[weights]") {
    CHECK_NOTHROW(weight_model<p53>::dirichlet(1.0).require_usable_for_opa());
    CHECK_NOTHROW(weight_model<p53>::dirichlet(-1.0).require_usable_for_opa());
    CHECK_THROWS_AS(weight_model<p53>::dirichlet(1.5).require_usable_for_opa(),
                    std::domain_error);
    CHECK_THROWS_AS(weight_model<p53>::table({1.0, 2.0, 1.5}).require_usable_for_opa(),
                    std::domain_error);
    CHECK_THROWS_AS(weight_model<p53>::table({2.0, 2.0}).require_usable_for_opa(),
                    std::domain_error);
    CHECK_NOTHROW(weight_model<p53>::table({1.0, 2.0, 3.0}).require_usable_for_opa());
}

TEST_CASE("weights work identically at extended precision", "[weights][precision]") {
    using R = p113::real;
    auto w = weight_model<p113>::dirichlet(R(-1));
    CHECK(w.weight_at(3) == R(1) / R(4));
    CHECK(w.partial_sum(2) == R(6));
    auto rep = check_admissibility(w, 64, R(1) / R(10));
    CHECK(rep.hard_pass());
    CHECK(rep.verdict == divergence_verdict::diverges_analytically);
}
