#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <vector>

#include "opalab/linalg.hpp"
#include "opalab/polynomial.hpp"

using namespace opalab;
using C = std::complex<double>;

namespace {
double cabs(const C& z) { return std::abs(z); }
}  // namespace

TEST_CASE("poly_eval and derivative", "[polynomial]") {
    // 1 + 2z + 3z^2 at z = 2 -> 17; derivative 2 + 6z at 2 -> 14.
    std::vector<C> c{C(1), C(2), C(3)};
    CHECK(cabs(poly_eval(c, C(2)) - C(17)) < 1e-14);
    CHECK(cabs(poly_eval(poly_derivative(c), C(2)) - C(14)) < 1e-14);
}

TEST_CASE("poly_from_roots expands monic products", "[polynomial]") {
    // (z-1)(z+1) = -1 + z^2
    auto c = poly_from_roots<C>({C(1), C(-1)});
    REQUIRE(c.size() == 3);
    CHECK(cabs(c[0] - C(-1)) < 1e-15);
    CHECK(cabs(c[1]) < 1e-15);
    CHECK(cabs(c[2] - C(1)) < 1e-15);

    // (z-1)(z-2) = 2 - 3z + z^2
    auto q = poly_from_roots<C>({C(1), C(2)});
    CHECK(cabs(q[0] - C(2)) < 1e-15);
    CHECK(cabs(q[1] - C(-3)) < 1e-15);
    CHECK(cabs(q[2] - C(1)) < 1e-15);
}

TEST_CASE("ascending division recovers quotients of exact products", "[polynomial]") {
    const std::vector<C> den = poly_from_roots<C>({C(1), C(2), C(0.0, 3.0)});
    const std::vector<C> quot{C(0.5), C(-1), C(2), C(0, 1), C(3)};
    const std::vector<C> num = poly_mul(quot, den);
    const auto division = poly_divide_ascending(num, den, quot.size());
    REQUIRE(division.quotient.size() == quot.size());
    for (std::size_t k = 0; k < quot.size(); ++k)
        CHECK(cabs(division.quotient[k] - quot[k]) < 1e-12);
    CHECK(poly_norm_l2<C, double>(division.defect) < 1e-12);
}

TEST_CASE("ascending division is stable for outside roots at high degree", "[polynomial]") {
    // Quotients of degree 300 against (z-1)(z-2): top-down long division
    // would amplify rounding by 2^300 here; the ascending recurrence must
    // keep the defect at working precision.
    const std::vector<C> den = poly_from_roots<C>({C(1), C(2)});
    std::vector<C> quot(301);
    for (std::size_t k = 0; k < quot.size(); ++k)
        quot[k] = C(std::cos(0.37 * static_cast<double>(k)),
                    std::sin(0.11 * static_cast<double>(k)));
    const std::vector<C> num = poly_mul(quot, den);
    const auto division = poly_divide_ascending(num, den, quot.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < quot.size(); ++k)
        worst = std::max(worst, cabs(division.quotient[k] - quot[k]));
    CHECK(worst < 1e-10);
    CHECK(poly_norm_l2<C, double>(division.defect) < 1e-10);
}

TEST_CASE("trim_leading removes only negligible top coefficients", "[polynomial]") {
    std::vector<C> c{C(1), C(2), C(1e-20), C(3e-22)};
    auto [trimmed, removed] = poly_trim_leading(c, 1e-14);
    CHECK(removed == 2);
    REQUIRE(trimmed.size() == 2);
    CHECK(trimmed[1] == C(2));

    auto [kept, zero_removed] = poly_trim_leading(std::vector<C>{C(1), C(1)}, 1e-14);
    CHECK(zero_removed == 0);
    CHECK(kept.size() == 2);
}

TEST_CASE("dense cholesky solves Hermitian positive definite systems", "[linalg]") {
    // A = M^H M + I for a fixed complex M, solved against a known vector.
    const std::size_t n = 5;
    std::vector<C> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i * n + j] = C(std::sin(1.0 + 3.0 * static_cast<double>(i * n + j)),
                             std::cos(2.0 + static_cast<double>(i + 2 * j)));
    std::vector<C> a(n * n, C(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            C acc(0);
            for (std::size_t k = 0; k < n; ++k) acc += std::conj(m[k * n + i]) * m[k * n + j];
            a[i * n + j] = acc + (i == j ? C(1) : C(0));
        }
    std::vector<C> x_true(n);
    for (std::size_t i = 0; i < n; ++i) x_true[i] = C(1.0 + static_cast<double>(i), -0.5);
    std::vector<C> rhs(n, C(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rhs[i] += a[i * n + j] * x_true[j];

    std::vector<C> chol = a;
    double log_det = 0.0;
    REQUIRE(cholesky_factor<p53>(chol, n, &log_det));
    cholesky_solve<p53>(chol, n, rhs);
    for (std::size_t i = 0; i < n; ++i) CHECK(cabs(rhs[i] - x_true[i]) < 1e-10);

    // log det cross-check against LU.
    const C det = lu_determinant<p53>(a, n);
    CHECK(std::log(std::abs(det)) == Catch::Approx(log_det).epsilon(1e-10));
    CHECK(std::abs(std::imag(det)) < 1e-8 * std::abs(det));
}

TEST_CASE("dense cholesky rejects indefinite matrices", "[linalg]") {
    std::vector<C> a{C(1), C(2), C(2), C(1)};  // eigenvalues 3, -1
    CHECK_FALSE(cholesky_factor<p53>(a, 2));
}

TEST_CASE("lu determinant on small fixed matrices", "[linalg]") {
    // [[1, 2], [3, 4]] -> -2; a complex 2x2 with known determinant.
    std::vector<C> a{C(1), C(2), C(3), C(4)};
    CHECK(cabs(lu_determinant<p53>(a, 2) - C(-2)) < 1e-14);
    std::vector<C> b{C(0, 1), C(2), C(1), C(0, -1)};
    // det = i*(-i) - 2*1 = 1 - 2 = -1
    CHECK(cabs(lu_determinant<p53>(b, 2) - C(-1)) < 1e-14);
}

TEST_CASE("banded cholesky agrees with the dense solver", "[linalg]") {
    // Hermitian pentadiagonal (bandwidth 2), diagonally dominant.
    const std::size_t n = 12, bw = 2;
    std::vector<C> dense(n * n, C(0));
    for (std::size_t i = 0; i < n; ++i) {
        dense[i * n + i] = C(10.0 + static_cast<double>(i % 3));
        if (i + 1 < n) {
            const C v(1.0, 0.5 + 0.1 * static_cast<double>(i));
            dense[(i + 1) * n + i] = v;
            dense[i * n + (i + 1)] = std::conj(v);
        }
        if (i + 2 < n) {
            const C v(-0.3, 0.2);
            dense[(i + 2) * n + i] = v;
            dense[i * n + (i + 2)] = std::conj(v);
        }
    }
    std::vector<C> band(n * (bw + 1), C(0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t u = 0; u <= bw && j + u < n; ++u)
            band[j * (bw + 1) + u] = dense[(j + u) * n + j];

    std::vector<C> rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = C(std::sin(static_cast<double>(i)), 1.0);
    std::vector<C> rhs_dense = rhs, rhs_band = rhs;

    std::vector<C> chol = dense;
    REQUIRE(cholesky_factor<p53>(chol, n));
    cholesky_solve<p53>(chol, n, rhs_dense);

    REQUIRE(banded_cholesky<p53>::factor(band, n, bw));
    banded_cholesky<p53>::solve(band, n, bw, rhs_band);

    for (std::size_t i = 0; i < n; ++i) CHECK(cabs(rhs_dense[i] - rhs_band[i]) < 1e-11);
}
