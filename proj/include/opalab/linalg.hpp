#pragma once

// Small dense and banded Hermitian solvers sized for this laboratory: the
// dense systems have dimension at most a few dozen (one row per zero of the
// target), the banded ones have bandwidth equal to the degree of the target.
// Everything is templated on the precision policy so the identical code runs
// at 53, 113 and 256 bits.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "opalab/precision.hpp"

namespace opalab {

/// In-place lower Cholesky factorization A = L L^H of a Hermitian matrix
/// stored row-major (only the lower triangle is referenced).  Returns false
/// when a pivot falls below a conservative positivity floor, which signals
/// that the matrix is numerically indefinite at this precision.  When
/// log_det is non-null it receives log det A on success.
template <class P>
bool cholesky_factor(std::vector<typename P::cplx>& a, std::size_t n,
                     typename P::real* log_det = nullptr) {
    using R = typename P::real;
    using C = typename P::cplx;
    using std::abs;
    using std::log;
    using std::sqrt;

    R max_diag(0);
    for (std::size_t i = 0; i < n; ++i) {
        const R d = abs(real(a[i * n + i]));
        if (d > max_diag) max_diag = d;
    }
    const R floor = max_diag * std::numeric_limits<R>::epsilon() * R(static_cast<double>(4 * (n + 1)));

    compensated<R> ld;
    for (std::size_t j = 0; j < n; ++j) {
        R diag = real(a[j * n + j]);
        for (std::size_t k = 0; k < j; ++k) {
            const C ljk = a[j * n + k];
            diag -= real(ljk * conj(ljk));
        }
        if (!(diag > floor)) return false;
        const R ljj = sqrt(diag);
        a[j * n + j] = C(ljj, R(0));
        ld.add(log(ljj));
        for (std::size_t i = j + 1; i < n; ++i) {
            C acc = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) acc -= a[i * n + k] * conj(a[j * n + k]);
            a[i * n + j] = acc / ljj;
        }
    }
    if (log_det) *log_det = R(2) * ld.value();
    return true;
}

/// Solve L L^H x = b given the factor from cholesky_factor; b is overwritten
/// with the solution.
template <class P>
void cholesky_solve(const std::vector<typename P::cplx>& l, std::size_t n,
                    std::vector<typename P::cplx>& b) {
    using C = typename P::cplx;
    for (std::size_t i = 0; i < n; ++i) {
        C acc = b[i];
        for (std::size_t k = 0; k < i; ++k) acc -= l[i * n + k] * b[k];
        b[i] = acc / l[i * n + i];
    }
    for (std::size_t i = n; i-- > 0;) {
        C acc = b[i];
        for (std::size_t k = i + 1; k < n; ++k) acc -= conj(l[k * n + i]) * b[k];
        b[i] = acc / l[i * n + i];
    }
}

/// Determinant by partial-pivoted Gaussian elimination.  Intended for the
/// bordered systems of dimension <= (number of zeros); makes a working copy.
template <class P>
typename P::cplx lu_determinant(std::vector<typename P::cplx> a, std::size_t n) {
    using R = typename P::real;
    using C = typename P::cplx;
    using std::abs;
    C det(1);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t piv = j;
        R best = abs(a[j * n + j]);
        for (std::size_t i = j + 1; i < n; ++i) {
            const R v = abs(a[i * n + j]);
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (!(best > R(0))) return C(0);
        if (piv != j) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a[j * n + k], a[piv * n + k]);
            det = -det;
        }
        const C p = a[j * n + j];
        det *= p;
        for (std::size_t i = j + 1; i < n; ++i) {
            const C f = a[i * n + j] / p;
            for (std::size_t k = j; k < n; ++k) a[i * n + k] -= f * a[j * n + k];
        }
    }
    return det;
}

/// Hermitian positive definite banded Cholesky.  The band stores, for column
/// j, the entries A(j+u, j) for u = 0..bw at band[j*(bw+1)+u]; entries past
/// the matrix edge are ignored.
template <class P> class banded_cholesky {
  public:
    using R = typename P::real;
    using C = typename P::cplx;

    /// Factor in place; returns false if positivity fails at some pivot.
    static bool factor(std::vector<C>& band, std::size_t n, std::size_t bw) {
        using std::abs;
        using std::sqrt;
        const std::size_t stride = bw + 1;
        R max_diag(0);
        for (std::size_t j = 0; j < n; ++j) {
            const R d = abs(real(band[j * stride]));
            if (d > max_diag) max_diag = d;
        }
        const R floor =
            max_diag * std::numeric_limits<R>::epsilon() * R(static_cast<double>(4 * (bw + 2)));

        for (std::size_t j = 0; j < n; ++j) {
            R diag = real(band[j * stride]);
            const std::size_t kmin = (j > bw) ? j - bw : 0;
            for (std::size_t k = kmin; k < j; ++k) {
                const C ljk = band[k * stride + (j - k)];
                diag -= real(ljk * conj(ljk));
            }
            if (!(diag > floor)) return false;
            const R ljj = sqrt(diag);
            band[j * stride] = C(ljj, R(0));
            const std::size_t imax = (j + bw < n - 1) ? j + bw : n - 1;
            for (std::size_t i = j + 1; i <= imax; ++i) {
                C acc = band[j * stride + (i - j)];
                const std::size_t cmin = (i > bw) ? i - bw : 0;
                for (std::size_t k = (cmin > kmin ? cmin : kmin); k < j; ++k)
                    acc -= band[k * stride + (i - k)] * conj(band[k * stride + (j - k)]);
                band[j * stride + (i - j)] = acc / ljj;
            }
        }
        return true;
    }

    /// Solve with the packed factor; rhs is overwritten with the solution.
    static void solve(const std::vector<C>& band, std::size_t n, std::size_t bw,
                      std::vector<C>& rhs) {
        const std::size_t stride = bw + 1;
        for (std::size_t i = 0; i < n; ++i) {
            C acc = rhs[i];
            const std::size_t kmin = (i > bw) ? i - bw : 0;
            for (std::size_t k = kmin; k < i; ++k) acc -= band[k * stride + (i - k)] * rhs[k];
            rhs[i] = acc / band[i * stride];
        }
        for (std::size_t i = n; i-- > 0;) {
            C acc = rhs[i];
            const std::size_t kmax = (i + bw < n - 1) ? i + bw : n - 1;
            for (std::size_t k = i + 1; k <= kmax; ++k)
                acc -= conj(band[i * stride + (k - i)]) * rhs[k];
            rhs[i] = acc / band[i * stride];
        }
    }
};

}  // namespace opalab
