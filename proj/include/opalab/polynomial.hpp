#pragma once

// Dense univariate polynomial helpers.  Coefficients are stored ascending:
// c[0] + c[1] z + ... + c[deg] z^deg.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "opalab/precision.hpp"

namespace opalab {

template <class C> C poly_eval(const std::vector<C>& c, const C& z) {
    if (c.empty()) return C(0);
    C acc = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * z + c[i];
    return acc;
}

/// Horner evaluation of sum |c_k| r^k, the natural backward-error scale for
/// residual tests at |z| = r.
template <class C, class R> R poly_eval_abs(const std::vector<C>& c, const R& r) {
    using std::abs;
    if (c.empty()) return R(0);
    R acc = abs(c.back());
    for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * r + abs(c[i]);
    return acc;
}

template <class C> std::vector<C> poly_derivative(const std::vector<C>& c) {
    if (c.size() <= 1) return {C(0)};
    std::vector<C> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * C(static_cast<double>(k));
    return d;
}

template <class C> std::vector<C> poly_mul(const std::vector<C>& a, const std::vector<C>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<C> out(a.size() + b.size() - 1, C(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

/// Monic polynomial with the given roots.
template <class C> std::vector<C> poly_from_roots(const std::vector<C>& roots) {
    std::vector<C> c{C(1)};
    for (const C& r : roots) {
        std::vector<C> next(c.size() + 1, C(0));
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= r * c[k];
        }
        c = std::move(next);
    }
    return c;
}

template <class C> struct poly_division {
    std::vector<C> quotient;
    std::vector<C> defect;  // num - quotient*den, all positions
};

/// Divide `num` by `den` from the constant term upward, producing a quotient
/// of exactly `quotient_len` coefficients.  The bottom-up recurrence is the
/// stable direction when all roots of `den` lie on or outside the unit
/// circle: the top-down long division amplifies rounding by |root|^degree
/// for outside roots, the bottom-up one does not.  The caller decides how
/// small the defect must be.
template <class C>
poly_division<C> poly_divide_ascending(const std::vector<C>& num, const std::vector<C>& den,
                                       std::size_t quotient_len) {
    if (den.empty() || den[0] == C(0))
        throw std::invalid_argument("poly_divide_ascending requires den[0] != 0");
    poly_division<C> out;
    out.quotient.assign(quotient_len, C(0));
    const std::size_t d = den.size() - 1;
    for (std::size_t k = 0; k < quotient_len; ++k) {
        C acc = (k < num.size()) ? num[k] : C(0);
        const std::size_t jmax = (k < d) ? k : d;
        for (std::size_t j = 1; j <= jmax; ++j) acc -= den[j] * out.quotient[k - j];
        out.quotient[k] = acc / den[0];
    }
    std::vector<C> prod = poly_mul(out.quotient, den);
    const std::size_t len = (num.size() > prod.size()) ? num.size() : prod.size();
    out.defect.assign(len, C(0));
    for (std::size_t k = 0; k < len; ++k) {
        const C nk = (k < num.size()) ? num[k] : C(0);
        const C pk = (k < prod.size()) ? prod[k] : C(0);
        out.defect[k] = nk - pk;
    }
    return out;
}

template <class C, class R> R poly_norm_l2(const std::vector<C>& c) {
    using std::abs;
    using std::sqrt;
    compensated<R> acc;
    for (const C& x : c) {
        const R a = abs(x);
        acc.add(a * a);
    }
    return sqrt(acc.value());
}

template <class C, class R> R poly_max_abs(const std::vector<C>& c) {
    using std::abs;
    R m(0);
    for (const C& x : c) {
        const R a = abs(x);
        if (a > m) m = a;
    }
    return m;
}

/// Drop high-order coefficients whose magnitude is at most rel_tol times the
/// largest coefficient.  Returns the trimmed vector and how many entries
/// were removed.
template <class C, class R>
std::pair<std::vector<C>, std::size_t> poly_trim_leading(const std::vector<C>& c, const R& rel_tol) {
    using std::abs;
    const R m = poly_max_abs<C, R>(c);
    std::vector<C> out = c;
    std::size_t removed = 0;
    while (out.size() > 1 && abs(out.back()) <= rel_tol * m) {
        out.pop_back();
        ++removed;
    }
    return {std::move(out), removed};
}

}  // namespace opalab
