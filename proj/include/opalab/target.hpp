#pragma once

// The target of approximation: a monic polynomial f described by its zeros,
// all of which must lie on or outside the unit circle.  The zeros on the
// circle ("boundary" zeros) control the asymptotics; the ones strictly
// outside fade from every formula at a geometric rate.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "opalab/polynomial.hpp"
#include "opalab/precision.hpp"

namespace opalab {

template <class P> class target_polynomial {
  public:
    using R = typename P::real;
    using C = typename P::cplx;

    /// |  |z| - 1  | below this counts as "on the circle".
    static constexpr double boundary_tolerance = 1e-9;

    /// Validates and canonically orders the zeros: boundary zeros first,
    /// then by modulus, ties broken by argument in [0, 2pi).  Rejects zeros
    /// inside the open unit disk, zero itself, and duplicates.
    explicit target_polynomial(std::vector<C> zero_list) {
        using std::abs;
        if (zero_list.empty())
            throw std::invalid_argument("target polynomial requires at least one zero");

        struct keyed {
            C z;
            R key_mod;
            R key_arg;
            bool boundary;
        };
        std::vector<keyed> items;
        items.reserve(zero_list.size());
        const R tol = R(boundary_tolerance);
        for (const C& z : zero_list) {
            const R r = abs(z);
            if (!(r > R(0))) throw std::invalid_argument("zero at the origin is not allowed");
            if (r < R(1) - tol) throw std::invalid_argument("zero inside open unit disk");
            keyed it;
            it.z = z;
            it.boundary = (r <= R(1) + tol);
            it.key_mod = it.boundary ? R(1) : r;
            it.key_arg = arg_two_pi(z);
            items.push_back(it);
        }
        std::stable_sort(items.begin(), items.end(), [](const keyed& a, const keyed& b) {
            if (a.key_mod != b.key_mod) return a.key_mod < b.key_mod;
            return a.key_arg < b.key_arg;
        });

        for (std::size_t i = 0; i + 1 < items.size(); ++i) {
            const R sep = abs(items[i].z - items[i + 1].z);
            const R scale = abs(items[i].z);
            if (sep <= scale * R(1e-12))
                throw std::invalid_argument("simple zeros required: duplicate zero at index " +
                                            std::to_string(i));
        }

        d1_ = 0;
        zeros_.reserve(items.size());
        for (const keyed& it : items) {
            zeros_.push_back(it.z);
            if (it.boundary) ++d1_;
        }
        coeffs_ = poly_from_roots(zeros_);
    }

    std::size_t degree() const { return zeros_.size(); }
    std::size_t boundary_count() const { return d1_; }
    bool is_boundary(std::size_t i) const { return i < d1_; }

    const std::vector<C>& zeros() const { return zeros_; }

    /// Monic coefficients, ascending; coefficients()[degree()] == 1.
    const std::vector<C>& coefficients() const { return coeffs_; }

    static R arg_two_pi(const C& z) {
        using std::atan2;
        R a = atan2(imag(z), real(z));
        if (a < R(0)) a += two_pi<R>();
        return a;
    }

  private:
    std::vector<C> zeros_;
    std::size_t d1_ = 0;
    std::vector<C> coeffs_;
};

}  // namespace opalab
