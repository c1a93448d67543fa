#pragma once

// Scalar plumbing shared by the double and quad-precision code paths.

#include <complex>

#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>

namespace orthoasym {

using quad = boost::multiprecision::float128;
using cquad = boost::multiprecision::complex128;

template <class R>
struct complex_of {
    using type = std::complex<R>;
};
template <>
struct complex_of<quad> {
    using type = cquad;
};
template <class R>
using complex_t = typename complex_of<R>::type;

template <class R>
inline complex_t<R> cis(const R& t)
{
    using std::cos;
    using std::sin;
    return complex_t<R>(cos(t), sin(t));
}

template <class C>
inline C ipow(C z, long m)
{
    if (m < 0) {
        z = C(1) / z;
        m = -m;
    }
    C r(1);
    while (m) {
        if (m & 1)
            r *= z;
        z *= z;
        m >>= 1;
    }
    return r;
}

template <class R>
inline R pi_v()
{
    return R(3.14159265358979323846264338327950288419716939937510L);
}
template <>
inline quad pi_v<quad>()
{
    static const quad p = acos(quad(-1));
    return p;
}

} // namespace orthoasym
