#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <vector>

#include "opalab/opa.hpp"

using namespace opalab;
using C = std::complex<double>;

namespace {
const auto hardy = weight_model<p53>::dirichlet(0.0);
const auto dirichlet = weight_model<p53>::dirichlet(1.0);
const auto bergman = weight_model<p53>::dirichlet(-1.0);

double max_coeff_gap(const std::vector<C>& a, const std::vector<C>& b) {
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
}
}  // namespace

TEST_CASE("f = z-1, Hardy weight, n = 2: full closed form", "[opa]") {
    // A = [1/S_3] = [1/4]; residual d_k = 1/4 for k = 0..3;
    // p_2 = -(3 + 2z + z^2)/4.
    target_polynomial<p53> f({C(1)});
    const auto sol = opa_kernel_route(hardy, f, 2);

    REQUIRE(sol.a.size() == 1);
    CHECK(std::abs(sol.a[0] - C(0.25)) < 1e-14);
    REQUIRE(sol.residual.size() == 4);
    for (const auto& dk : sol.residual) CHECK(std::abs(dk - C(0.25)) < 1e-13);
    REQUIRE(sol.p.size() == 3);
    CHECK(std::abs(sol.p[0] - C(-0.75)) < 1e-13);
    CHECK(std::abs(sol.p[1] - C(-0.5)) < 1e-13);
    CHECK(std::abs(sol.p[2] - C(-0.25)) < 1e-13);

    CHECK(residual_norm_sq(sol) == Catch::Approx(0.25).epsilon(1e-12));
    CHECK(wiener_norm(sol) == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("f = z-1, Hardy weight, n = 0: p_0 = -1/2", "[opa]") {
    target_polynomial<p53> f({C(1)});
    const auto sol = opa_kernel_route(hardy, f, 0);
    REQUIRE(sol.p.size() == 1);
    CHECK(std::abs(sol.p[0] - C(-0.5)) < 1e-14);
    CHECK(residual_norm_sq(sol) == Catch::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("single boundary zero: d_0 = 1/S_{n+1} for every weight", "[opa]") {
    target_polynomial<p53> f({C(1)});
    for (const auto& w : {hardy, dirichlet, bergman}) {
        for (std::size_t n : {0, 1, 5, 17}) {
            const auto sol = opa_kernel_route(w, f, n);
            const double s = w.partial_sum(n + 1);
            CHECK(residual_norm_sq(sol) == Catch::Approx(1.0 / s).epsilon(1e-12));
        }
    }
    // Bergman at n = 1: S_2 = 6.
    const auto sol = opa_kernel_route(bergman, f, 1);
    CHECK(residual_norm_sq(sol) == Catch::Approx(1.0 / 6.0).epsilon(1e-13));
}

TEST_CASE("f = (z-1)(z+1), Hardy, n = 1: symmetric residual", "[opa]") {
    // By symmetry A_1 = A_2 = 1/(S_3 + kappa) with kappa = k_3(1,-1) = 0
    // for the Hardy weight: residual = (1/2, 0, 1/2, 0).
    target_polynomial<p53> f({C(1), C(-1)});
    const auto kr = opa_kernel_route(hardy, f, 1);
    const auto ne = opa_normal_equations(hardy, f, 1);
    const std::vector<C> expect{C(0.5), C(0), C(0.5), C(0)};
    CHECK(max_coeff_gap(kr.residual, expect) < 1e-13);
    CHECK(max_coeff_gap(ne.residual, expect) < 1e-13);
    CHECK(route_agreement_gap(kr, ne) < 1e-12);
}

TEST_CASE("evaluate_residual at the origin equals d_0", "[opa]") {
    target_polynomial<p53> f({C(1)});
    const auto sol = opa_kernel_route(hardy, f, 98);
    const auto vals = evaluate_residual(sol, {C(0)});
    REQUIRE(vals.size() == 1);
    CHECK(std::abs(vals[0] - C(0.01)) < 1e-12);  // 1/S_99 = 1/100
}

TEST_CASE("routes agree across weights, targets, and degrees", "[opa]") {
    const std::vector<std::vector<C>> zero_sets{
        {C(1)},
        {C(1), C(-1)},
        {C(1), C(2)},
        {std::polar(1.0, 2.0 * 3.14159265358979323846 / 5.0), 1.25 * std::polar(1.0, -1.0)},
    };
    for (const auto& zs : zero_sets) {
        target_polynomial<p53> f(zs);
        for (const auto& w : {hardy, dirichlet, bergman}) {
            for (std::size_t n : {0, 3, 17, 40}) {
                const auto kr = opa_kernel_route(w, f, n);
                const auto ne = opa_normal_equations(w, f, n);
                INFO("n = " << n);
                CHECK(route_agreement_gap(kr, ne) < 1e-9);
                CHECK(residual_norm_sq(kr) ==
                      Catch::Approx(residual_norm_sq(ne)).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("residual coefficients reconstruct 1 - p f", "[opa]") {
    target_polynomial<p53> f({C(1), C(2)});
    const auto sol = opa_kernel_route(dirichlet, f, 12);
    const auto prod = poly_mul(sol.p, f.coefficients());
    REQUIRE(prod.size() == sol.residual.size());
    for (std::size_t k = 0; k < prod.size(); ++k) {
        const C expect = (k == 0 ? C(1) : C(0)) - prod[k];
        CHECK(std::abs(sol.residual[k] - expect) < 1e-12);
    }
}

TEST_CASE("residual norm decreases with n and d_0 is positive", "[opa]") {
    target_polynomial<p53> f({C(1), C(0, 1)});
    for (const auto& w : {hardy, bergman}) {
        double prev = 2.0;
        for (std::size_t n = 0; n <= 30; ++n) {
            const double d0 = residual_norm_sq(opa_kernel_route(w, f, n));
            CHECK(d0 > 0.0);
            CHECK(d0 <= prev * (1.0 + 1e-12));
            prev = d0;
        }
    }
}

TEST_CASE("optimality: coordinate perturbations increase the weighted norm", "[opa]") {
    target_polynomial<p53> f({C(1), C(2)});
    const auto sol = opa_kernel_route(hardy, f, 6);
    const double base = residual_norm_sq(sol);
    const auto& fh = f.coefficients();

    auto norm_of = [&](const std::vector<C>& p) {
        const auto prod = poly_mul(p, fh);
        double acc = 0.0;
        for (std::size_t k = 0; k < prod.size(); ++k) {
            const C rk = (k == 0 ? C(1) : C(0)) - prod[k];
            acc += std::norm(rk) * 1.0;  // Hardy weight
        }
        return acc;
    };

    const double delta = 1e-3;
    for (std::size_t j = 0; j < sol.p.size(); ++j) {
        for (const C dir : {C(delta), C(-delta), C(0, delta), C(0, -delta)}) {
            auto p = sol.p;
            p[j] += dir;
            CHECK(norm_of(p) > base);
        }
    }
}

TEST_CASE("degenerate weight is rejected by both routes", "[opa]") {
    target_polynomial<p53> f({C(1)});
    const auto bad = weight_model<p53>::dirichlet(1.5);
    CHECK_THROWS_AS(opa_kernel_route(bad, f, 3), std::domain_error);
    CHECK_THROWS_AS(opa_normal_equations(bad, f, 3), std::domain_error);
}

TEST_CASE("target validation rejects bad zero sets", "[opa]") {
    CHECK_THROWS_WITH(target_polynomial<p53>({C(0.5)}),
                      Catch::Matchers::ContainsSubstring("inside open unit disk"));
    CHECK_THROWS_WITH(target_polynomial<p53>({C(1), C(1)}),
                      Catch::Matchers::ContainsSubstring("simple zeros"));
    CHECK_THROWS_AS(target_polynomial<p53>(std::vector<C>{}), std::invalid_argument);
    CHECK_THROWS_AS(target_polynomial<p53>({C(0)}), std::invalid_argument);
}

TEST_CASE("target orders zeros boundary-first with argument tie-break", "[opa]") {
    target_polynomial<p53> f({C(2), C(-1), std::polar(1.0, 0.5), C(1.5)});
    CHECK(f.degree() == 4);
    CHECK(f.boundary_count() == 2);
    CHECK(std::abs(f.zeros()[0] - std::polar(1.0, 0.5)) < 1e-15);
    CHECK(std::abs(f.zeros()[1] - C(-1)) < 1e-15);
    CHECK(std::abs(f.zeros()[2] - C(1.5)) < 1e-15);
    CHECK(std::abs(f.zeros()[3] - C(2)) < 1e-15);
    CHECK(std::abs(f.coefficients().back() - C(1)) < 1e-15);
}

TEST_CASE("pure control experiment: no boundary zeros is allowed", "[opa]") {
    target_polynomial<p53> f({C(1.5), C(0, -2)});
    CHECK(f.boundary_count() == 0);
    const auto kr = opa_kernel_route(hardy, f, 8);
    const auto ne = opa_normal_equations(hardy, f, 8);
    CHECK(route_agreement_gap(kr, ne) < 1e-10);
    // With all zeros outside, 1/f is analytic past the circle and the
    // residual norm decays geometrically: d_0 at n=8 is already small.
    CHECK(residual_norm_sq(kr) < 0.1);
}

TEST_CASE("solutions carry enough context to recompute their own norms", "[opa]") {
    target_polynomial<p53> f({C(1), C(-1)});
    const auto sol = opa_kernel_route(bergman, f, 9);
    CHECK_NOTHROW(residual_norm_sq(sol));
    CHECK(wiener_norm(sol) > 0.0);
    CHECK(sol.weight.family() == weight_family::dirichlet);
    CHECK(sol.target.degree() == 2);
}

TEST_CASE("kernel route works at 113-bit precision", "[opa][precision]") {
    using Cq = p113::cplx;
    auto wq = weight_model<p113>::dirichlet(p113::real(0));
    target_polynomial<p113> f({Cq(1)});
    const auto sol = opa_kernel_route(wq, f, 2);
    using std::abs;
    CHECK(static_cast<double>(abs(sol.a[0] - Cq(1) / Cq(4))) < 1e-30);
    const auto d0 = residual_norm_sq(sol);
    CHECK(static_cast<double>(abs(d0 - p113::real(1) / p113::real(4))) < 1e-30);
}
