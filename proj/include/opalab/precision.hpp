#pragma once

// Precision policies and the small generic numeric layer shared by every
// module.  All computational code in this library is templated on a policy
// type P that supplies a real type, a matching complex type, and the
// significand width.  Generic code pulls elementary functions in through
// unqualified calls (`using std::abs;` + ADL), which resolves to libm for
// binary64 and to Boost.Multiprecision overloads for the wider types.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace opalab {

/// IEEE binary64; the default working precision everywhere.
struct p53 {
    using real = double;
    using cplx = std::complex<double>;
    static constexpr int significand_bits = 53;
};

/// IEEE binary128 emulated in software (quad).
struct p113 {
    using real = boost::multiprecision::cpp_bin_float_quad;
    using cplx = boost::multiprecision::cpp_complex_quad;
    static constexpr int significand_bits = 113;
};

/// 256 binary digits, for conditioning experiments near degenerate configurations.
struct p256 {
    using real = boost::multiprecision::number<
        boost::multiprecision::cpp_bin_float<256, boost::multiprecision::digit_base_2>,
        boost::multiprecision::et_off>;
    using cplx = boost::multiprecision::number<
        boost::multiprecision::complex_adaptor<
            boost::multiprecision::cpp_bin_float<256, boost::multiprecision::digit_base_2>>,
        boost::multiprecision::et_off>;
    static constexpr int significand_bits = 256;
};

/// Raised when a solve or iteration cannot reach working precision; the
/// message says what failed and suggests a wider precision policy when that
/// is the likely cure.
class numeric_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when two redundant computations of the same quantity disagree
/// beyond their stated tolerance.  This always indicates a bug or a loss of
/// precision severe enough that results must not be trusted.
class consistency_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised for malformed experiment configuration (bad keys, bad values).
class config_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

template <class R> R pi_value() {
    using std::atan;
    static const R v = R(4) * atan(R(1));
    return v;
}

template <class R> R two_pi() {
    static const R v = R(2) * pi_value<R>();
    return v;
}

template <class T> double to_double(const T& x) { return static_cast<double>(x); }

template <class C> std::complex<double> to_complex_double(const C& z) {
    return {to_double(real(z)), to_double(imag(z))};
}

/// e^{it} in the policy's complex type.
template <class P> typename P::cplx unit_point(const typename P::real& t) {
    using std::cos;
    using std::sin;
    return typename P::cplx(cos(t), sin(t));
}

/// Largest x with exp(x) comfortably inside the representable range of R.
template <class R> R safe_log_range() {
    using std::log;
    static const R v = log(std::numeric_limits<R>::max()) * R(98) / R(100);
    return v;
}

/// Neumaier-compensated accumulator: the running compensation keeps the sum
/// accurate even when individual terms exceed the partial sum.
template <class R> class compensated {
  public:
    void add(const R& x) {
        using std::abs;
        const R t = sum_ + x;
        if (abs(sum_) >= abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    R value() const { return sum_ + comp_; }

  private:
    R sum_{};
    R comp_{};
};

/// Componentwise compensated accumulation for complex terms.
template <class P> class compensated_cplx {
  public:
    void add(const typename P::cplx& z) {
        re_.add(real(z));
        im_.add(imag(z));
    }
    typename P::cplx value() const { return typename P::cplx(re_.value(), im_.value()); }

  private:
    compensated<typename P::real> re_;
    compensated<typename P::real> im_;
};

}  // namespace opalab
