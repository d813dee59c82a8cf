#pragma once

// Truncated reproducing kernels k_n(z, b) = sum_{k<=n} conj(b)^k z^k / w_k
// and the structures built from them: the geometric tail factor that
// measures how fast point evaluations localize at the top coefficient, and
// the kernel Gram matrix whose inverse yields the interpolation coefficients
// of the optimal approximant.
//
// Powers like z^(n+1) overflow binary64 once (n+1) log|z| passes ~709, well
// inside the sweeps this laboratory runs, so the Gram matrix is assembled in
// a scaled form: row/column l is divided by sigma_l = max(|z_l|, 1)^(n+d+1),
// and only log sigma_l is ever materialized.  The scaled matrix has entries
// of moderate size (bounded by S_{n+d}) and stays Hermitian positive
// definite.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "opalab/linalg.hpp"
#include "opalab/precision.hpp"
#include "opalab/target.hpp"
#include "opalab/weights.hpp"

namespace opalab {

namespace detail {

/// exp(-log_scale) * k_n(z, b), computed without forming any over- or
/// under-flowing intermediate.  With log_scale = 0 and a moderate |conj(b) z|
/// this takes the plain compensated-recurrence path; otherwise every term is
/// rebuilt from its log-magnitude and phase.
template <class P>
typename P::cplx kernel_scaled(const weight_model<P>& w, std::size_t n, const typename P::cplx& z,
                               const typename P::cplx& b, const typename P::real& log_scale) {
    using R = typename P::real;
    using C = typename P::cplx;
    using std::abs;
    using std::atan2;
    using std::exp;
    using std::log;

    const C q = conj(b) * z;
    const R aq = abs(q);

    if (aq == R(0)) {
        // Only the k = 0 term survives.
        const R v = exp(-log_scale) / w.weight_at(0);
        return C(v, R(0));
    }

    const R lq = log(aq);
    const R top_log = R(static_cast<double>(n)) * (lq > R(0) ? lq : R(0));
    const bool direct_ok = (log_scale == R(0)) && (top_log < safe_log_range<R>());

    compensated_cplx<P> acc;
    if (direct_ok) {
        C pw(1);
        for (std::size_t k = 0; k <= n; ++k) {
            acc.add(pw / w.weight_at(k));
            pw = pw * q;
        }
        return acc.value();
    }

    // Term-by-term log-magnitude path.  Guard the largest term so the result
    // cannot silently become infinity.
    const R phase = atan2(imag(q), real(q));
    using std::cos;
    using std::sin;
    const R top_term_log =
        R(static_cast<double>(n)) * lq - log_scale - log(w.weight_at(n));
    if (top_term_log > safe_log_range<R>())
        throw numeric_error(
            "kernel magnitude exceeds the representable range at this precision; "
            "rerun with a wider precision policy");
    for (std::size_t k = 0; k <= n; ++k) {
        const R kk = R(static_cast<double>(k));
        const R mag = exp(kk * lq - log_scale) / w.weight_at(k);
        const R ang = kk * phase;
        acc.add(C(mag * cos(ang), mag * sin(ang)));
    }
    return acc.value();
}

}  // namespace detail

/// k_n(z, b) = sum_{k=0}^{n} conj(b)^k z^k / w_k.
template <class P>
typename P::cplx kernel(const weight_model<P>& w, std::size_t n, const typename P::cplx& z,
                        const typename P::cplx& b) {
    return detail::kernel_scaled<P>(w, n, z, b, typename P::real(0));
}

template <class P> struct tail_factor {
    typename P::cplx value;      // C(N, z)
    typename P::cplx limit;      // 1 / (z - 1)
    typename P::real deviation;  // |value - limit|
};

/// The tail factor C(N, z) = w_N z^{-(N+1)} sum_{k<=N} z^k / w_k for |z| > 1.
/// Evaluated through x = 1/z as x * sum_{k<=N} (w_N / w_{N-k}) x^k, which
/// involves only decaying powers.  For admissible weights C(N, z) tends to
/// 1/(z-1) as N grows.
template <class P>
tail_factor<P> tail_factor_at(const weight_model<P>& w, std::size_t n_trunc,
                              const typename P::cplx& z) {
    using R = typename P::real;
    using C = typename P::cplx;
    using std::abs;
    if (!(abs(z) > R(1))) throw std::domain_error("tail factor requires |z| > 1");

    const C x = C(1) / z;
    const R w_top = w.weight_at(n_trunc);
    compensated_cplx<P> acc;
    C pw(1);
    for (std::size_t k = 0; k <= n_trunc; ++k) {
        acc.add(pw * (w_top / w.weight_at(n_trunc - k)));
        pw = pw * x;
    }
    tail_factor<P> out;
    out.value = x * acc.value();
    out.limit = C(1) / (z - C(1));
    out.deviation = abs(out.value - out.limit);
    return out;
}

/// The kernel Gram matrix E with e_{l,m} = k_{n+d}(z_l, z_m) over the zeros
/// of the target, stored in scaled form: scaled[l*d+m] = e_{l,m} / (sigma_l
/// sigma_m) with log sigma_l = (n+d+1) max(log|z_l|, 0).  Hermitian by
/// construction (the upper triangle is mirrored); diagonal entries for
/// boundary zeros equal S_{n+d} exactly.
template <class P> struct kernel_gram {
    std::size_t order = 0;  // the truncation index n + d
    std::size_t dim = 0;    // d, one row per zero
    std::vector<typename P::cplx> scaled;
    std::vector<typename P::real> log_sigma;
    typename P::real s_order{};  // S_{n+d}
};

template <class P>
kernel_gram<P> assemble_gram(const weight_model<P>& w, const target_polynomial<P>& f,
                             std::size_t n) {
    using R = typename P::real;
    using C = typename P::cplx;
    using std::abs;
    using std::log;

    const std::size_t d = f.degree();
    const std::size_t order = n + d;

    kernel_gram<P> g;
    g.order = order;
    g.dim = d;
    g.scaled.assign(d * d, C(0));
    g.log_sigma.assign(d, R(0));
    g.s_order = w.partial_sum(order);

    for (std::size_t l = 0; l < d; ++l) {
        if (!f.is_boundary(l))
            g.log_sigma[l] = R(static_cast<double>(order + 1)) * log(abs(f.zeros()[l]));
    }

    for (std::size_t l = 0; l < d; ++l) {
        for (std::size_t m = 0; m <= l; ++m) {
            C v;
            if (l == m && f.is_boundary(l)) {
                v = C(g.s_order, R(0));  // exact: every term has unit modulus
            } else {
                v = detail::kernel_scaled<P>(w, order, f.zeros()[l], f.zeros()[m],
                                             g.log_sigma[l] + g.log_sigma[m]);
            }
            g.scaled[l * d + m] = v;
            g.scaled[m * d + l] = conj(v);
        }
        if (!f.is_boundary(l)) {
            // Force the diagonal real: it is a sum of |q|^k / w_k.
            C& diag = g.scaled[l * d + l];
            diag = C(real(diag), R(0));
        }
    }
    return g;
}

template <class P> struct gram_solution {
    std::vector<typename P::cplx> a;         // A_l, the interpolation functional weights
    std::vector<typename P::cplx> a_scaled;  // sigma_l A_l, the well-scaled unknowns
    typename P::real log_det_scaled{};       // log det of the scaled Gram matrix
};

/// Solve E A = (1, ..., 1) through the scaled system.  With D = diag(sigma),
/// the scaled matrix is D^{-1} E D^{-1} and the scaled unknowns y = D A
/// solve (D^{-1} E D^{-1}) y = D^{-1} 1; both sides are well within range.
template <class P> gram_solution<P> solve_gram_ones(const kernel_gram<P>& g) {
    using R = typename P::real;
    using C = typename P::cplx;
    using std::exp;

    std::vector<C> chol = g.scaled;
    gram_solution<P> out;
    if (!cholesky_factor<P>(chol, g.dim, &out.log_det_scaled))
        throw numeric_error(
            "kernel Gram matrix is numerically indefinite at this precision; "
            "rerun with a wider precision policy");

    std::vector<C> rhs(g.dim);
    for (std::size_t l = 0; l < g.dim; ++l) rhs[l] = C(exp(-g.log_sigma[l]), R(0));
    cholesky_solve<P>(chol, g.dim, rhs);

    out.a_scaled = rhs;
    out.a.resize(g.dim);
    for (std::size_t l = 0; l < g.dim; ++l) out.a[l] = rhs[l] * exp(-g.log_sigma[l]);
    return out;
}

}  // namespace opalab
