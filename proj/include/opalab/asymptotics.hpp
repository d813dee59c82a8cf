#pragma once

// Quantities that track the asymptotic behaviour of the residuals
// 1 - p_n f: the Erdos-Turan size functional H whose slow growth forces
// angular equidistribution of zeros, the boundary determinant G_n governing
// the leading residual coefficient, the lower-bound ratio for the kernel
// Gram determinant, and the planner for subsequences of n along which the
// boundary phases return to alignment.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "opalab/kernels.hpp"
#include "opalab/linalg.hpp"
#include "opalab/opa.hpp"
#include "opalab/polynomial.hpp"
#include "opalab/precision.hpp"
#include "opalab/target.hpp"
#include "opalab/weights.hpp"
#include "opalab/zeros.hpp"

namespace opalab {

template <class P> struct h_estimate {
    typename P::real max_on_circle{};  // certified lower bound for max_{|z|=1} |Q|
    typename P::real h{};              // max_on_circle / sqrt(|Q(0)|)
    typename P::real upper_bound{};    // Bernstein-type upper bound for the true max
    std::size_t samples = 0;
};

namespace detail {

/// Golden-section maximization of |Q(e^{i t})| on [lo, hi].
template <class P>
typename P::real golden_max(const std::vector<typename P::cplx>& q, typename P::real lo,
                            typename P::real hi) {
    using R = typename P::real;
    using std::abs;
    static const R inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    R a = lo, b = hi;
    R x1 = b - inv_phi * (b - a);
    R x2 = a + inv_phi * (b - a);
    R f1 = abs(poly_eval(q, unit_point<P>(x1)));
    R f2 = abs(poly_eval(q, unit_point<P>(x2)));
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = abs(poly_eval(q, unit_point<P>(x2)));
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = abs(poly_eval(q, unit_point<P>(x1)));
        }
    }
    return (f1 > f2) ? f1 : f2;
}

}  // namespace detail

/// Sampled maximum of |Q| on the unit circle, refined around the three
/// largest local maxima.  The sampled value is a certified lower bound; the
/// upper_bound field applies the Bernstein-type correction 1/(1 - pi deg/M)
/// valid once the sample count M exceeds pi*deg.  circle_samples = 0 selects
/// the default max(4096, 8*degree).
template <class P>
h_estimate<P> circle_max_detail(const std::vector<typename P::cplx>& q,
                                std::size_t circle_samples = 0) {
    using R = typename P::real;
    using std::abs;
    if (q.empty()) throw std::invalid_argument("circle_max of an empty polynomial");
    const std::size_t deg = q.size() - 1;
    std::size_t m = circle_samples;
    if (m == 0) m = std::max<std::size_t>(4096, 8 * deg);

    std::vector<R> vals(m);
    const R tp = two_pi<R>();
    R best(0);
    for (std::size_t j = 0; j < m; ++j) {
        const R t = tp * R(static_cast<double>(j)) / R(static_cast<double>(m));
        vals[j] = abs(poly_eval(q, unit_point<P>(t)));
        if (vals[j] > best) best = vals[j];
    }

    // Collect local maxima (cyclically), refine the strongest three.
    std::vector<std::size_t> peaks;
    for (std::size_t j = 0; j < m; ++j) {
        const R prev = vals[(j + m - 1) % m];
        const R next = vals[(j + 1) % m];
        if (vals[j] >= prev && vals[j] >= next) peaks.push_back(j);
    }
    std::sort(peaks.begin(), peaks.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
    if (peaks.size() > 3) peaks.resize(3);
    for (const std::size_t j : peaks) {
        const R lo = tp * (R(static_cast<double>(j)) - R(1)) / R(static_cast<double>(m));
        const R hi = tp * (R(static_cast<double>(j)) + R(1)) / R(static_cast<double>(m));
        const R refined = detail::golden_max<P>(q, lo, hi);
        if (refined > best) best = refined;
    }

    h_estimate<P> out;
    out.samples = m;
    out.max_on_circle = best;
    const R pd = pi_value<R>() * R(static_cast<double>(deg));
    out.upper_bound = (R(static_cast<double>(m)) > pd)
                          ? best / (R(1) - pd / R(static_cast<double>(m)))
                          : std::numeric_limits<R>::infinity();
    out.h = R(0);  // filled by h_functional when |Q(0)| is usable
    return out;
}

/// H(Q) = max_{|z|=1} |Q(z)| / sqrt(|Q(0)|).
template <class P>
h_estimate<P> h_functional_detail(const std::vector<typename P::cplx>& q,
                                  std::size_t circle_samples = 0) {
    using R = typename P::real;
    using std::abs;
    using std::sqrt;
    if (q.empty() || !(abs(q[0]) > R(1e-300)))
        throw std::domain_error("H functional undefined: |Q(0)| vanishes");
    h_estimate<P> out = circle_max_detail<P>(q, circle_samples);
    out.h = out.max_on_circle / sqrt(abs(q[0]));
    return out;
}

template <class P>
typename P::real h_functional(const std::vector<typename P::cplx>& q,
                              std::size_t circle_samples = 0) {
    return h_functional_detail<P>(q, circle_samples).h;
}

template <class P> struct monic_h_result {
    typename P::real h{};              // H of the monic rescaling of 1 - p_n f
    typename P::real log_h_over_n{};   // log(h)/n; slow growth drives equidistribution
    typename P::real max_on_circle{};  // of the residual itself (unscaled)
    typename P::real d0{};             // constant residual coefficient
    typename P::real dlead_abs{};      // |leading residual coefficient|
};

/// H for the monic rescaling of the residual: with Q = (1 - p_n f) / d_lead,
/// H(Q) = max_{|z|=1} |1 - p_n f| / sqrt(d_0 |d_lead|).  When the leading
/// coefficient is below the trim threshold the monic rescaling blows up and
/// the value at this n is meaningless: such n must be skipped (use the
/// subsequence planner to find n where the boundary phases align).
template <class P>
monic_h_result<P> monic_h(const opa_solution<P>& sol, std::size_t circle_samples = 0) {
    using R = typename P::real;
    using std::abs;
    using std::log;
    using std::sqrt;

    const R maxc = poly_max_abs<typename P::cplx, R>(sol.residual);
    const R dlead = abs(sol.residual.back());
    if (!(dlead > R(1e-14) * maxc))
        throw numeric_error("monic H undefined at this n: leading residual coefficient is "
                            "below the trim threshold; restrict to a planned subsequence");

    monic_h_result<P> out;
    out.d0 = residual_norm_sq(sol);
    out.dlead_abs = dlead;
    std::size_t m = std::max<std::size_t>(4096, 8 * (sol.residual.size() - 1));
    if (circle_samples > m) m = circle_samples;
    out.max_on_circle = circle_max_detail<P>(sol.residual, m).max_on_circle;
    out.h = out.max_on_circle / sqrt(out.d0 * dlead);
    const std::size_t n = (sol.n > 0) ? sol.n : 1;
    out.log_h_over_n = log(out.h) / R(static_cast<double>(n));
    return out;
}

/// The boundary determinant G_n.  For a target whose boundary zeros are
/// z_1..z_{d1} and outside zeros z_{d1+1}..z_d, G_n is the determinant of
/// the (d - d1 + 1)-dimensional bordered matrix
///
///   [ sum_j conj(z_j)^{n+d}                 1/conj(z_{d1+m})          ]
///   [ sum_j conj(z_j)^{n+d+1}/(conj(z_j) z_{d1+l} - 1)
///                           1/(conj(z_{d1+m}) z_{d1+l} - 1) ]
///
/// with j running over boundary zeros.  With no outside zeros it reduces to
/// the plain phase sum sum_j conj(z_j)^{n+d}.
template <class P>
typename P::cplx g_determinant(const target_polynomial<P>& f, std::size_t n) {
    using R = typename P::real;
    using C = typename P::cplx;

    const std::size_t d = f.degree();
    const std::size_t d1 = f.boundary_count();
    if (d1 == 0)
        throw std::domain_error("G_n requires at least one zero on the unit circle");

    const std::size_t power = n + d;
    auto boundary_power = [&](std::size_t j, std::size_t p) {
        // conj(z_j)^p through the phase; |z_j| = 1 to working precision.
        using std::atan2;
        using std::exp;
        using std::log;
        using std::abs;
        const C z = f.zeros()[j];
        const R mag = exp(R(static_cast<double>(p)) * log(abs(z)));
        const R ph = -R(static_cast<double>(p)) * target_polynomial<P>::arg_two_pi(z);
        using std::cos;
        using std::sin;
        return C(mag * cos(ph), mag * sin(ph));
    };

    C corner(0);
    for (std::size_t j = 0; j < d1; ++j) corner += boundary_power(j, power);
    if (d == d1) return corner;

    const std::size_t m = d - d1 + 1;
    std::vector<C> mat(m * m, C(0));
    mat[0] = corner;
    for (std::size_t col = 1; col < m; ++col) mat[col] = C(1) / conj(f.zeros()[d1 + col - 1]);
    for (std::size_t row = 1; row < m; ++row) {
        const C zl = f.zeros()[d1 + row - 1];
        C s(0);
        for (std::size_t j = 0; j < d1; ++j)
            s += boundary_power(j, power + 1) / (conj(f.zeros()[j]) * zl - C(1));
        mat[row * m] = s;
        for (std::size_t col = 1; col < m; ++col)
            mat[row * m + col] = C(1) / (conj(f.zeros()[d1 + col - 1]) * zl - C(1));
    }
    return lu_determinant<P>(std::move(mat), m);
}

template <class P> struct g_check_result {
    typename P::cplx g;                    // G for the rotated configuration
    typename P::cplx blaschke_value;       // 1 - prod_j (-conj(a_j)) (1-a_j)/(1-conj(a_j))
    typename P::cplx reduced_det;          // determinant of the Cauchy-like reduced matrix
    typename P::real factorization_gap{};  // relative disagreement of the two factorizations
    bool degenerate = false;               // |G| below 1e-12: flag, not an error
};

/// Structural non-vanishing check for a single boundary zero.  After
/// rotating that zero to 1, G becomes n-independent; substituting a_j =
/// 1/conj(z_j) for the outside zeros factors it as prod |a_j|^2 times the
/// determinant of [[1, 1...1], [p_l, H_{lm}]] with p_l = 1/(1 - conj(a_l))
/// and H_{lm} = 1/(1 - conj(a_l) a_m).  A closed Blaschke-style product
/// value is reported alongside for comparison; only |G| > 0 is asserted.
template <class P> g_check_result<P> g_nonvanishing_check(const target_polynomial<P>& f) {
    using R = typename P::real;
    using C = typename P::cplx;
    using std::abs;

    if (f.boundary_count() != 1 || f.degree() < 2)
        throw std::invalid_argument(
            "g_nonvanishing_check requires exactly one boundary zero and at least one "
            "outside zero");

    const std::size_t ext = f.degree() - 1;
    const C rot = f.zeros()[0];
    std::vector<C> zeta(ext);
    for (std::size_t j = 0; j < ext; ++j) zeta[j] = f.zeros()[j + 1] / rot;

    // Bordered determinant with the boundary zero at 1 (all powers of 1).
    const std::size_t m = ext + 1;
    std::vector<C> mat(m * m, C(0));
    mat[0] = C(1);
    for (std::size_t col = 1; col < m; ++col) mat[col] = C(1) / conj(zeta[col - 1]);
    for (std::size_t row = 1; row < m; ++row) {
        const C zl = zeta[row - 1];
        mat[row * m] = C(1) / (zl - C(1));
        for (std::size_t col = 1; col < m; ++col)
            mat[row * m + col] = C(1) / (conj(zeta[col - 1]) * zl - C(1));
    }

    g_check_result<P> out;
    out.g = lu_determinant<P>(mat, m);

    // Reduced factorization through a_j = 1/conj(zeta_j).
    std::vector<C> a(ext);
    R factor(1);
    for (std::size_t j = 0; j < ext; ++j) {
        a[j] = C(1) / conj(zeta[j]);
        const R aj = abs(a[j]);
        factor *= aj * aj;
    }
    std::vector<C> red(m * m, C(0));
    red[0] = C(1);
    for (std::size_t col = 1; col < m; ++col) red[col] = C(1);
    for (std::size_t row = 1; row < m; ++row) {
        red[row * m] = C(1) / (C(1) - conj(a[row - 1]));
        for (std::size_t col = 1; col < m; ++col)
            red[row * m + col] = C(1) / (C(1) - conj(a[row - 1]) * a[col - 1]);
    }
    out.reduced_det = lu_determinant<P>(red, m);

    const C recombined = out.reduced_det * factor;
    const R denom = abs(out.g) > R(1e-300) ? abs(out.g) : R(1);
    out.factorization_gap = abs(out.g - recombined) / denom;
    // Both eliminations work on proportionally scaled matrices, so their
    // roundoff is strongly correlated and the relative gap is normally tiny
    // even when |G| itself sits far below the entry scale.  A formula error,
    // by contrast, produces an absolute gap on the order of the entry scale
    // (factor <= 1, matrix entries O(1..10)); gate on both so that extreme
    // but legitimate cancellation cannot masquerade as an algebra bug.
    const bool gap_suspicious = !(out.factorization_gap <= R(1e-10)) &&
                                !(abs(out.g - recombined) <= factor * R(1e-11));
    if (gap_suspicious)
        throw consistency_error("bordered and reduced determinants disagree (relative gap " +
                                std::to_string(to_double(out.factorization_gap)) + ")");

    C prod(1);
    for (std::size_t j = 0; j < ext; ++j)
        prod *= (-conj(a[j])) * (C(1) - a[j]) / (C(1) - conj(a[j]));
    out.blaschke_value = C(1) - prod;

    out.degenerate = (abs(out.g) < R(1e-12));
    return out;
}

/// det of the scaled kernel Gram matrix recombined into the ratio
/// det(E~) * w_{n+d}^{d-d1} / S_{n+d}^{d1}, whose positivity and stability
/// witness the determinant lower bound that the residual asymptotics rest
/// on.  All large powers cancel inside the log-domain recombination.
template <class P>
typename P::real det_lower_bound_ratio(const weight_model<P>& w, const target_polynomial<P>& f,
                                       std::size_t n) {
    using R = typename P::real;
    using std::exp;
    using std::log;

    const kernel_gram<P> g = assemble_gram(w, f, n);
    std::vector<typename P::cplx> chol = g.scaled;
    R log_det{};
    if (!cholesky_factor<P>(chol, g.dim, &log_det))
        throw numeric_error("scaled kernel Gram matrix is numerically indefinite; "
                            "rerun with a wider precision policy");
    const R d_minus_d1 = R(static_cast<double>(f.degree() - f.boundary_count()));
    const R d1 = R(static_cast<double>(f.boundary_count()));
    return exp(log_det + d_minus_d1 * log(w.weight_at(g.order)) - d1 * log(g.s_order));
}

struct subsequence_plan {
    std::vector<double> angles;
    double eps = 0.0;
    std::vector<std::size_t> indices;
};

/// All n in [n_min, n_max] (up to `count`; count = 0 means unlimited) such
/// that every n*theta_j is within eps of a multiple of 2pi.  Exhaustive
/// scan: simultaneous returns of several phases can be arbitrarily sparse,
/// so nothing cheaper is honest.
inline subsequence_plan plan_subsequence(std::vector<double> angles, double eps,
                                         std::size_t n_min, std::size_t n_max,
                                         std::size_t count = 0) {
    if (angles.empty()) throw std::invalid_argument("plan_subsequence requires angles");
    if (!(eps > 0.0) || !(eps < 3.141592653589793))
        throw std::invalid_argument("plan_subsequence requires 0 < eps < pi");
    subsequence_plan plan;
    plan.angles = std::move(angles);
    plan.eps = eps;
    constexpr double tp = 6.283185307179586476925286766559;
    for (std::size_t n = n_min; n <= n_max; ++n) {
        bool ok = true;
        for (const double th : plan.angles) {
            const double dist = std::abs(std::remainder(static_cast<double>(n) * th, tp));
            if (dist > eps) {
                ok = false;
                break;
            }
        }
        if (ok) {
            plan.indices.push_back(n);
            if (count != 0 && plan.indices.size() >= count) break;
        }
    }
    return plan;
}

template <class P> struct dn_row {
    std::size_t n = 0;
    typename P::cplx dlead;  // leading residual coefficient d_{n+d,n}
    typename P::cplx gn;     // G_n
    typename P::cplx ratio;  // dlead * w_{n+d} * S_{n+d} / G_n
    bool skipped = false;    // trimmed dlead or |G_n| too small to divide by
};

/// Correlation between the leading residual coefficient and the boundary
/// determinant: the theory predicts d_{n+d,n} ~ const * G_n/(w_{n+d} S_{n+d})
/// along subsequences where G_n stays away from zero, so the reported ratio
/// should stabilize.  The constant itself is not asserted anywhere, only the
/// stability of the ratio.
template <class P>
std::vector<dn_row<P>> dn_correlation(const weight_model<P>& w, const target_polynomial<P>& f,
                                      const std::vector<std::size_t>& n_list) {
    using R = typename P::real;
    using std::abs;

    std::vector<dn_row<P>> rows;
    rows.reserve(n_list.size());
    for (const std::size_t n : n_list) {
        const opa_solution<P> sol = opa_kernel_route(w, f, n);
        dn_row<P> row;
        row.n = n;
        row.dlead = sol.residual.back();
        row.gn = g_determinant(f, n);
        const R maxc = poly_max_abs<typename P::cplx, R>(sol.residual);
        if (!(abs(row.dlead) > R(1e-14) * maxc) || !(abs(row.gn) > R(1e-9))) {
            row.skipped = true;
            row.ratio = typename P::cplx(0);
        } else {
            const std::size_t order = n + f.degree();
            row.ratio = row.dlead * w.weight_at(order) * w.partial_sum(order) / row.gn;
        }
        rows.push_back(row);
    }
    return rows;
}

template <class P> struct a_decay_row {
    std::size_t n = 0;
    std::size_t zero_index = 0;
    typename P::real value{};  // |sigma_i A_i| * S_{n+d}
};

/// Scaled size of the kernel combination weights: |sigma_i A_i| S_{n+d}
/// stays bounded for admissible weights (the boundary entries approach 1,
/// the outside entries stay O(1)); growth here flags a conditioning problem
/// before it corrupts anything downstream.
template <class P>
std::vector<a_decay_row<P>> a_decay_table(const weight_model<P>& w, const target_polynomial<P>& f,
                                          const std::vector<std::size_t>& n_list) {
    using R = typename P::real;
    using std::abs;
    std::vector<a_decay_row<P>> rows;
    for (const std::size_t n : n_list) {
        const kernel_gram<P> g = assemble_gram(w, f, n);
        const gram_solution<P> sol = solve_gram_ones(g);
        for (std::size_t i = 0; i < f.degree(); ++i) {
            a_decay_row<P> row;
            row.n = n;
            row.zero_index = i;
            row.value = abs(sol.a_scaled[i]) * g.s_order;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace opalab
