#pragma once

// Root extraction for the residual polynomials 1 - p_n f and the
// equidistribution statistics computed from the resulting point sets on and
// near the unit circle.
//
// The root finder is the Aberth-Ehrlich simultaneous iteration with initial
// guesses placed on the Newton-polygon radii of the coefficient sequence.
// It is fully deterministic: symmetry between equal-radius starting points
// is broken by fixed per-cluster angular offsets, never by random numbers,
// so repeated runs are bit-identical.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "opalab/polynomial.hpp"
#include "opalab/precision.hpp"

namespace opalab {

template <class P> struct empirical_measure {
    using R = typename P::real;
    using C = typename P::cplx;

    std::vector<C> points;           // the roots, in the order found
    std::vector<R> radii;            // |points[j]|, aligned with points
    std::vector<R> angles;           // arguments in [0, 2pi), sorted ascending
    std::size_t trimmed_leading = 0; // negligible top coefficients removed first

    std::size_t size() const { return points.size(); }
};

struct root_options {
    std::size_t max_iterations = 400;
    double epsilon_root = 1e-10;  // residual bound relative to sum |c_k| |z|^k
    double trim_rel = 1e-14;      // leading-coefficient trim threshold
};

namespace detail {

/// Newton-polygon starting radii (Bini's initialization): one radius per
/// segment of the upper convex hull of (k, log|c_k|), repeated according to
/// the segment's horizontal span.
template <class P>
std::vector<typename P::cplx> aberth_initial_points(const std::vector<typename P::cplx>& c) {
    using R = typename P::real;
    using C = typename P::cplx;
    using std::abs;
    using std::exp;
    using std::log;

    struct hp {
        std::size_t k;
        R y;
    };
    std::vector<hp> pts;
    for (std::size_t k = 0; k < c.size(); ++k) {
        const R a = abs(c[k]);
        if (a > R(0)) pts.push_back({k, log(a)});
    }

    // Upper convex hull, left to right.
    std::vector<hp> hull;
    for (const hp& p : pts) {
        while (hull.size() >= 2) {
            const hp& a = hull[hull.size() - 2];
            const hp& b = hull[hull.size() - 1];
            const R cross = (R(static_cast<double>(b.k - a.k))) * (p.y - a.y) -
                            (R(static_cast<double>(p.k - a.k))) * (b.y - a.y);
            if (cross >= R(0))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }

    const std::size_t degree = c.size() - 1;
    std::vector<C> z;
    z.reserve(degree);
    const R offset_base = pi_value<R>() / R(static_cast<double>(2 * degree));
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        const hp& a = hull[s];
        const hp& b = hull[s + 1];
        const std::size_t m = b.k - a.k;
        const R radius = exp((a.y - b.y) / R(static_cast<double>(m)));
        const R cluster_offset = offset_base + R(7) / R(10) * R(static_cast<double>(s + 1));
        for (std::size_t j = 0; j < m; ++j) {
            const R theta =
                two_pi<R>() * R(static_cast<double>(j)) / R(static_cast<double>(m)) + cluster_offset;
            z.push_back(radius * unit_point<P>(theta));
        }
    }
    return z;
}

template <class P>
void solve_low_degree(const std::vector<typename P::cplx>& c,
                      std::vector<typename P::cplx>& roots) {
    using R = typename P::real;
    using C = typename P::cplx;
    using std::abs;
    using std::sqrt;
    if (c.size() == 2) {
        roots.push_back(-c[0] / c[1]);
        return;
    }
    // Quadratic, with the branch of the square root chosen to avoid
    // subtractive cancellation in b +/- sqrt(disc).
    const C a = c[2], b = c[1], c0 = c[0];
    const C disc = sqrt(b * b - C(4) * a * c0);
    const C add = (real(conj(b) * disc) >= R(0)) ? (b + disc) : (b - disc);
    const C q = C(-1) / C(2) * add;
    if (!(abs(q) > R(0))) {
        // b = 0 and disc = 0 (or full cancellation): symmetric pair.
        const C r = sqrt(-c0 / a);
        roots.push_back(r);
        roots.push_back(-r);
        return;
    }
    roots.push_back(q / a);
    roots.push_back(c0 / q);
}

}  // namespace detail

/// All complex roots of the given coefficient vector (ascending order,
/// degree >= 1 after trimming).  Each returned point z satisfies
/// |P(z)| <= epsilon_root * sum_k |c_k| |z|^k; failure to reach that bound
/// within the iteration budget is an error, not a silent approximation.
template <class P>
empirical_measure<P> find_roots(const std::vector<typename P::cplx>& coeffs,
                                const root_options& opt = root_options{}) {
    using R = typename P::real;
    using C = typename P::cplx;
    using std::abs;

    empirical_measure<P> out;

    auto [c, removed] = poly_trim_leading(coeffs, R(opt.trim_rel));
    out.trimmed_leading = removed;
    if (poly_max_abs<C, R>(c) == R(0))
        throw std::domain_error("find_roots: zero polynomial has no well-defined root set");
    if (c.size() <= 1)
        throw std::domain_error("find_roots: degree is zero after trimming");

    std::vector<C> roots;
    while (c.size() > 1 && c[0] == C(0)) {
        // Exact factor z: peel off a root at the origin.
        roots.push_back(C(0));
        c.erase(c.begin());
    }

    if (c.size() == 2 || c.size() == 3) {
        detail::solve_low_degree<P>(c, roots);
    } else if (c.size() > 3) {
        std::vector<C> z = detail::aberth_initial_points<P>(c);
        const std::vector<C> dc = poly_derivative(c);
        const std::size_t m = z.size();
        std::vector<bool> converged(m, false);
        const R eps = R(opt.epsilon_root);

        for (std::size_t iter = 0; iter < opt.max_iterations; ++iter) {
            std::size_t done = 0;
            for (std::size_t i = 0; i < m; ++i) {
                if (converged[i]) {
                    ++done;
                    continue;
                }
                const C pv = poly_eval(c, z[i]);
                const R bound = poly_eval_abs<C, R>(c, abs(z[i]));
                if (abs(pv) <= eps * bound) {
                    converged[i] = true;
                    ++done;
                    continue;
                }
                const C dv = poly_eval(dc, z[i]);
                C newton;
                if (abs(dv) > R(0)) {
                    newton = pv / dv;
                } else {
                    // Critical point: nudge off it deterministically.
                    z[i] += C(R(1e-6), R(1e-6)) * (C(1) + z[i]);
                    continue;
                }
                compensated_cplx<P> srec;
                bool coincident = false;
                for (std::size_t j = 0; j < m; ++j) {
                    if (j == i) continue;
                    const C diff = z[i] - z[j];
                    if (!(abs(diff) > R(0))) {
                        coincident = true;
                        break;
                    }
                    srec.add(C(1) / diff);
                }
                if (coincident) {
                    z[i] += C(R(1e-6), R(-1e-6)) * (C(1) + z[i]);
                    continue;
                }
                const C denom = C(1) - newton * srec.value();
                const C step = (abs(denom) > R(1e-30)) ? newton / denom : newton;
                z[i] -= step;
            }
            if (done == m) break;
        }

        // Newton polish sharpens each root to the local limit of the
        // precision; steps that do not reduce |P| are rejected.
        for (std::size_t i = 0; i < m; ++i) {
            for (int it = 0; it < 3; ++it) {
                const C pv = poly_eval(c, z[i]);
                const C dv = poly_eval(dc, z[i]);
                if (!(abs(dv) > R(0))) break;
                const C cand = z[i] - pv / dv;
                if (abs(poly_eval(c, cand)) < abs(pv))
                    z[i] = cand;
                else
                    break;
            }
        }

        // Final certification: every root must meet the residual bound.
        R worst(0);
        for (std::size_t i = 0; i < m; ++i) {
            const R rres = abs(poly_eval(c, z[i])) / poly_eval_abs<C, R>(c, abs(z[i]));
            if (rres > worst) worst = rres;
        }
        if (!(worst <= eps))
            throw numeric_error("root iteration did not converge in " +
                                std::to_string(opt.max_iterations) +
                                " sweeps; worst relative residual " +
                                std::to_string(to_double(worst)));
        roots.insert(roots.end(), z.begin(), z.end());
    }

    out.points = std::move(roots);
    out.radii.reserve(out.points.size());
    out.angles.reserve(out.points.size());
    for (const C& z : out.points) {
        out.radii.push_back(abs(z));
        using std::atan2;
        R a = atan2(imag(z), real(z));
        if (a < R(0)) a += two_pi<R>();
        out.angles.push_back(a);
    }
    std::sort(out.angles.begin(), out.angles.end());
    return out;
}

template <class P> struct discrepancy_result {
    typename P::real value{};
    bool approximate = false;  // true when the 4096-bin bound was used
};

/// Angular discrepancy sup_I | #{angles in I}/N - |I|/2pi | over closed arcs
/// I of the circle.  Because the deviation of an arc and of its complement
/// have equal sup, it suffices to scan arcs whose endpoints are attained
/// angles; that scan is exact and runs in O(M^2) over the distinct angles.
/// Beyond 2000 points a 4096-bin upper bound is returned instead and
/// flagged as approximate.
template <class P> discrepancy_result<P> discrepancy(const empirical_measure<P>& m) {
    using R = typename P::real;
    if (m.size() == 0) throw std::invalid_argument("discrepancy of an empty measure");
    const R n = R(static_cast<double>(m.size()));
    const R tp = two_pi<R>();
    discrepancy_result<P> out;

    if (m.size() <= 2000) {
        std::vector<R> uniq;
        std::vector<std::size_t> pre{0};  // pre[i] = count of angles before uniq[i]
        for (const R& a : m.angles) {
            if (uniq.empty() || a != uniq.back()) {
                uniq.push_back(a);
                pre.push_back(pre.back());
            }
            ++pre.back();
        }
        const std::size_t u = uniq.size();
        R best(0);
        using std::abs;
        for (std::size_t i = 0; i < u; ++i) {
            for (std::size_t j = 0; j < u; ++j) {
                std::size_t cnt;
                R len;
                if (i <= j) {
                    cnt = pre[j + 1] - pre[i];
                    len = uniq[j] - uniq[i];
                } else {
                    cnt = m.size() - (pre[i] - pre[j + 1]);
                    len = tp - (uniq[i] - uniq[j]);
                }
                const R dev = abs(R(static_cast<double>(cnt)) / n - len / tp);
                if (dev > best) best = dev;
            }
        }
        out.value = best;
        return out;
    }

    constexpr std::size_t bins = 4096;
    std::vector<std::size_t> count(bins, 0);
    for (const R& a : m.angles) {
        auto b = static_cast<std::size_t>(to_double(a / tp * R(static_cast<double>(bins))));
        if (b >= bins) b = bins - 1;
        ++count[b];
    }
    std::vector<std::size_t> pre(bins + 1, 0);
    std::size_t maxbin = 0;
    for (std::size_t b = 0; b < bins; ++b) {
        pre[b + 1] = pre[b] + count[b];
        if (count[b] > maxbin) maxbin = count[b];
    }
    R best(0);
    using std::abs;
    for (std::size_t i = 0; i < bins; ++i) {
        for (std::size_t j = 0; j < bins; ++j) {
            std::size_t cnt;
            std::size_t span;  // number of bins covered
            if (i <= j) {
                cnt = pre[j + 1] - pre[i];
                span = j - i + 1;
            } else {
                cnt = m.size() - (pre[i] - pre[j + 1]);
                span = bins - (i - j - 1);
            }
            const R dev = abs(R(static_cast<double>(cnt)) / n -
                              R(static_cast<double>(span)) / R(static_cast<double>(bins)));
            if (dev > best) best = dev;
        }
    }
    // Arbitrary arcs can beat bin-aligned arcs by at most one bin of mass
    // plus one bin of length on each side; fold that into the bound.
    out.value = best + R(static_cast<double>(maxbin)) / n + R(1) / R(static_cast<double>(bins));
    if (out.value > R(1)) out.value = R(1);
    out.approximate = true;
    return out;
}

/// |(1/N) sum_j z_j^m| for m = 1..m_max; near-zero values witness angular
/// equidistribution through the Weyl criterion.
template <class P>
std::vector<typename P::real> weyl_moments(const empirical_measure<P>& m, std::size_t m_max) {
    using R = typename P::real;
    using C = typename P::cplx;
    using std::abs;
    if (m_max < 1) throw std::invalid_argument("weyl_moments requires m_max >= 1");
    if (m.size() == 0) throw std::invalid_argument("weyl_moments of an empty measure");

    std::vector<R> out;
    out.reserve(m_max);
    std::vector<C> pw = m.points;
    const R n = R(static_cast<double>(m.size()));
    for (std::size_t mm = 1; mm <= m_max; ++mm) {
        if (mm > 1)
            for (std::size_t j = 0; j < pw.size(); ++j) pw[j] *= m.points[j];
        compensated_cplx<P> acc;
        for (const C& v : pw) acc.add(v);
        out.push_back(abs(acc.value()) / n);
    }
    return out;
}

template <class P> struct radial_stats {
    typename P::real max_deviation{};  // max_j | |z_j| - 1 |
    typename P::real shell_fraction{}; // fraction with | |z_j| - 1 | < eps
};

template <class P>
radial_stats<P> radial_report(const empirical_measure<P>& m, const typename P::real& eps) {
    using R = typename P::real;
    using std::abs;
    if (!(eps > R(0)) || !(eps < R(1)))
        throw std::invalid_argument("radial_report requires 0 < eps < 1");
    if (m.size() == 0) throw std::invalid_argument("radial_report of an empty measure");
    radial_stats<P> out;
    std::size_t inside = 0;
    for (const R& r : m.radii) {
        const R dev = abs(r - R(1));
        if (dev > out.max_deviation) out.max_deviation = dev;
        if (dev < eps) ++inside;
    }
    out.shell_fraction =
        R(static_cast<double>(inside)) / R(static_cast<double>(m.size()));
    return out;
}

}  // namespace opalab
