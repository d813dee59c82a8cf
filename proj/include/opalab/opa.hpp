#pragma once

// Optimal polynomial approximants.  Given the target f (monic, zeros on or
// outside the unit circle) and a weight sequence, the degree-n optimal
// approximant p_n minimizes ||1 - p f||^2 = sum_k |coeff_k(1 - p f)|^2 w_k
// over polynomials of degree at most n.
//
// Two independent routes are implemented and cross-checked against each
// other throughout the test suite:
//
//  * kernel route: the residual 1 - p_n f is a combination of truncated
//    reproducing kernels at the zeros of f; the combination weights A solve
//    the d x d kernel Gram system E A = (1, ..., 1) and the residual
//    coefficients come out in closed form, d_{k,n} = (1/w_k) sum_l A_l
//    conj(z_l)^k.  This is the route the asymptotic analysis reasons about.
//
//  * normal equations route: minimize directly over the n+1 coefficients of
//    p; the Gram matrix of {z^j f} is Hermitian positive definite and banded
//    with bandwidth d, solved by banded Cholesky.  Entirely independent of
//    the kernel identities, so agreement is a strong correctness signal.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "opalab/kernels.hpp"
#include "opalab/linalg.hpp"
#include "opalab/polynomial.hpp"
#include "opalab/precision.hpp"
#include "opalab/target.hpp"
#include "opalab/weights.hpp"

namespace opalab {

enum class opa_route { kernel_closed_form, normal_equations };

template <class P> struct opa_solution {
    using R = typename P::real;
    using C = typename P::cplx;

    std::size_t n = 0;            // approximant degree bound
    std::vector<C> p;             // n+1 coefficients of p_n
    std::vector<C> residual;      // n+d+1 coefficients d_{k,n} of 1 - p_n f
    std::vector<C> a;             // kernel route only: A_l per zero
    std::vector<C> a_scaled;      // kernel route only: sigma_l A_l
    opa_route route = opa_route::kernel_closed_form;

    weight_model<P> weight;       // shares the partial-sum cache
    target_polynomial<P> target;
};

namespace detail {

/// Residual coefficients from the kernel combination weights: d_k = (1/w_k)
/// sum_l A_l conj(z_l)^k.  Boundary zeros use the plain power recurrence
/// (unit modulus, no growth); outside zeros rebuild each power from logs so
/// that sigma-scaled weights never meet an overflowing power.
template <class P>
std::vector<typename P::cplx> residual_from_kernel_weights(const weight_model<P>& w,
                                                           const target_polynomial<P>& f,
                                                           const kernel_gram<P>& g,
                                                           const gram_solution<P>& sol) {
    using R = typename P::real;
    using C = typename P::cplx;
    using std::cos;
    using std::exp;
    using std::log;
    using std::sin;

    const std::size_t d = f.degree();
    const std::size_t m = g.order;
    std::vector<C> acc(m + 1, C(0));

    for (std::size_t l = 0; l < d; ++l) {
        const C zb = conj(f.zeros()[l]);
        if (f.is_boundary(l)) {
            C pw(1);
            const C al = sol.a[l];
            for (std::size_t k = 0; k <= m; ++k) {
                acc[k] += al * pw;
                pw = pw * zb;
            }
        } else {
            using std::abs;
            using std::atan2;
            const R lz = log(abs(zb));
            const R ph = atan2(imag(zb), real(zb));
            const C yl = sol.a_scaled[l];
            const R ls = g.log_sigma[l];
            for (std::size_t k = 0; k <= m; ++k) {
                const R kk = R(static_cast<double>(k));
                const R mag = exp(kk * lz - ls);
                acc[k] += yl * C(mag * cos(kk * ph), mag * sin(kk * ph));
            }
        }
    }

    std::vector<C> residual(m + 1);
    for (std::size_t k = 0; k <= m; ++k) residual[k] = acc[k] / w.weight_at(k);
    return residual;
}

}  // namespace detail

/// Closed-form route through the kernel Gram system.
template <class P>
opa_solution<P> opa_kernel_route(const weight_model<P>& w, const target_polynomial<P>& f,
                                 std::size_t n) {
    using R = typename P::real;
    using C = typename P::cplx;

    w.require_usable_for_opa();

    const kernel_gram<P> g = assemble_gram(w, f, n);
    const gram_solution<P> sol = solve_gram_ones(g);

    opa_solution<P> out{n, {}, {}, sol.a, sol.a_scaled, opa_route::kernel_closed_form, w, f};
    out.residual = detail::residual_from_kernel_weights(w, f, g, sol);

    // Recover p from 1 - p f = residual: divide (1 - residual) by f from the
    // constant term up, the stable direction for zeros outside the disk.
    std::vector<C> num(out.residual.size());
    num[0] = C(1) - out.residual[0];
    for (std::size_t k = 1; k < num.size(); ++k) num[k] = -out.residual[k];
    const poly_division<C> division = poly_divide_ascending(num, f.coefficients(), n + 1);
    const R defect = poly_norm_l2<C, R>(division.defect);
    const R scale = poly_norm_l2<C, R>(out.residual);
    if (!(defect <= R(1e-8) * (scale + R(1))))
        throw consistency_error(
            "kernel-route residual is not divisible by the target within tolerance "
            "(defect " + std::to_string(to_double(defect)) + ")");
    out.p = division.quotient;
    return out;
}

/// Direct least-squares route: banded Hermitian normal equations in the
/// coefficients of p.  G_{j,k} = sum_m w_m fhat(m-j) conj(fhat(m-k)) for
/// |j-k| <= d, right-hand side (conj(fhat(0)), 0, ..., 0).
template <class P>
opa_solution<P> opa_normal_equations(const weight_model<P>& w, const target_polynomial<P>& f,
                                     std::size_t n) {
    using R = typename P::real;
    using C = typename P::cplx;

    w.require_usable_for_opa();

    const std::size_t d = f.degree();
    const std::vector<C>& fh = f.coefficients();
    const std::size_t dim = n + 1;
    const std::size_t stride = d + 1;

    std::vector<C> band(dim * stride, C(0));
    for (std::size_t j = 0; j < dim; ++j) {
        const std::size_t umax = (j + d < n) ? d : (n - j);
        for (std::size_t u = 0; u <= umax; ++u) {
            const std::size_t i = j + u;  // row index, i >= j
            compensated_cplx<P> acc;
            for (std::size_t m = i; m <= j + d; ++m)
                acc.add(w.weight_at(m) * fh[m - j] * conj(fh[m - i]));
            band[j * stride + u] = acc.value();
        }
    }
    if (!banded_cholesky<P>::factor(band, dim, d))
        throw numeric_error(
            "normal equations are numerically indefinite at this precision; "
            "rerun with a wider precision policy");

    std::vector<C> rhs(dim, C(0));
    rhs[0] = conj(fh[0]);
    banded_cholesky<P>::solve(band, dim, d, rhs);

    opa_solution<P> out{n, std::move(rhs), {}, {}, {}, opa_route::normal_equations, w, f};
    const std::vector<C> pf = poly_mul(out.p, fh);
    out.residual.assign(n + d + 1, C(0));
    out.residual[0] = C(1) - pf[0];
    for (std::size_t k = 1; k <= n + d; ++k) out.residual[k] = -pf[k];
    return out;
}

/// ||1 - p_n f||^2 in the weighted norm.  By optimality this equals the
/// constant residual coefficient d_{0,n}; both are computed and compared,
/// and disagreement raises a consistency error.
template <class P> typename P::real residual_norm_sq(const opa_solution<P>& sol) {
    using R = typename P::real;
    using std::abs;

    const auto d0c = sol.residual.at(0);
    const R d0 = real(d0c);
    if (!(d0 > R(0)) || abs(imag(d0c)) > R(1e-8) * abs(d0c))
        throw consistency_error("residual constant coefficient d_0 is not real positive");

    compensated<R> acc;
    for (std::size_t k = 0; k < sol.residual.size(); ++k) {
        const R a = abs(sol.residual[k]);
        acc.add(a * a * sol.weight.weight_at(k));
    }
    const R direct = acc.value();
    if (!(abs(direct - d0) <= R(1e-8) * d0))
        throw consistency_error("residual norm disagrees with d_0: direct sum " +
                                std::to_string(to_double(direct)) + " vs d_0 " +
                                std::to_string(to_double(d0)));
    return d0;
}

/// Wiener (absolute-sum) norm of the residual coefficients.
template <class P> typename P::real wiener_norm(const opa_solution<P>& sol) {
    using R = typename P::real;
    using std::abs;
    compensated<R> acc;
    for (const auto& c : sol.residual) acc.add(abs(c));
    return acc.value();
}

/// Pointwise values of 1 - p_n(z) f(z) through the residual coefficients.
template <class P>
std::vector<typename P::cplx> evaluate_residual(const opa_solution<P>& sol,
                                                const std::vector<typename P::cplx>& points) {
    std::vector<typename P::cplx> out;
    out.reserve(points.size());
    for (const auto& z : points) out.push_back(poly_eval(sol.residual, z));
    return out;
}

/// Largest relative disagreement between the residual coefficients of two
/// solutions (same n, same target): max_k |x_k - y_k| / max_k |x_k|.
template <class P>
typename P::real route_agreement_gap(const opa_solution<P>& x, const opa_solution<P>& y) {
    using R = typename P::real;
    using std::abs;
    if (x.residual.size() != y.residual.size())
        throw std::invalid_argument("route_agreement_gap: residual lengths differ");
    R num(0), den(0);
    for (std::size_t k = 0; k < x.residual.size(); ++k) {
        const R dv = abs(x.residual[k] - y.residual[k]);
        const R xv = abs(x.residual[k]);
        if (dv > num) num = dv;
        if (xv > den) den = xv;
    }
    if (!(den > R(0))) return num;
    return num / den;
}

}  // namespace opalab
