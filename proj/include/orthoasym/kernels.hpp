#pragma once

// The kernel functions f, g, h, l, eps_m of the asymptotic representation.
// Templates are shared by the double API (asym.hpp) and the quad-precision
// lemma verifier; no validation happens here.

#include <cmath>

#include "orthoasym/quad.hpp"

namespace orthoasym::kernels {

/// The four logarithm arguments with u = 1 - x^2/2:
///   A1 = u - ix + x^2/2 e^{it},  A2 = u + ix + x^2/2 e^{-it},
///   A3 = u - ix - x^2/2 e^{-it}, A4 = u + ix - x^2/2 e^{it}.
template <class R>
struct LogArgs {
    complex_t<R> A1, A2, A3, A4;
};

template <class R>
LogArgs<R> log_args(const R& x, const R& t)
{
    using C = complex_t<R>;
    const R u = R(1) - x * x / R(2);
    const R h = x * x / R(2);
    const C e = cis(t), em = cis(R(-t));
    return {C(u, -x) + h * e, C(u, x) + h * em, C(u, -x) - h * em, C(u, x) - h * e};
}

template <class R>
struct FG {
    complex_t<R> f, g; ///< complex values; imaginary parts vanish up to roundoff
};

template <class R>
FG<R> fg_complex(const R& x, const R& t)
{
    using C = complex_t<R>;
    const auto a = log_args(x, t);
    const C L1 = log(a.A1), L2 = log(a.A2), L3 = log(a.A3), L4 = log(a.A4);
    const C I(0, 1);
    return {L1 + L2 - L3 - L4, I * L1 - I * L2 + I * L3 - I * L4};
}

/// Taylor expansion of h in x through x^4.
template <class R>
R h_series(const R& x, const R& t)
{
    using std::cos;
    using std::sin;
    const R c = cos(t), s = sin(t);
    const R x2 = x * x, x3 = x2 * x, x4 = x3 * x;
    return x / R(2) * c + x2 / R(4) * s * c + x3 * (s * s * c / R(8) - c / R(3)) +
           x4 * (s * s * s * c / R(16) + s * c / R(6));
}

template <class R>
R h_value(const R& x, const R& t)
{
    using std::abs;
    if (abs(x) < R(1e-4))
        return h_series(x, t);
    const auto v = fg_complex(x, t);
    return v.f.real() / v.g.real();
}

/// The simplified log/arctan closed form of h.
template <class R>
R h_simplified(const R& x, const R& t)
{
    using std::atan;
    using std::cos;
    using std::log;
    using std::sin;
    const R x2 = x * x, x3 = x2 * x, x4 = x3 * x;
    const R c = cos(t), s = sin(t), ch = cos(t / R(2));
    const R num = log(R(1) + R(2) * x2 * (R(1) - x2 / R(2)) * c / (R(1) - x2 * c - x3 * s + x4 * ch * ch));
    const R den = R(2) * atan(R(2) * x * (R(1) - x2 / R(2)) * (R(1) - x / R(2) * s) / (R(1) - R(2) * x2 + x3 * s));
    return num / den;
}

template <class R>
complex_t<R> l_value(long m, const R& x, const R& t)
{
    const auto a = log_args(x, t);
    const complex_t<R> I(0, 1);
    return I * (ipow(complex_t<R>(a.A3 / a.A4), m) - ipow(complex_t<R>(a.A2 / a.A1), m));
}

/// Taylor expansion of l/(m g) - 1 in x through x^4 (the x^0 and x^1 terms vanish).
template <class R>
complex_t<R> lg_minus_one_series(long m, const R& x, const R& t)
{
    using std::cos;
    using std::sin;
    const R c = cos(t), s = sin(t), mm = R(m), m2 = mm * mm;
    const R x2 = x * x, x3 = x2 * x, x4 = x3 * x;
    const R re = -R(2) * m2 / R(3) * x2 + R(2) * m2 * s / R(3) * x3 +
                 (R(2) * m2 * m2 / R(15) + m2 * c * c / R(6) - R(7) * m2 / R(18)) * x4;
    const R im = -mm * c * x3 + mm * s * c / R(2) * x4;
    return complex_t<R>(re, im);
}

template <class R>
complex_t<R> lg_minus_one(long m, const R& x, const R& t)
{
    using std::abs;
    if (abs(x) < R(1e-4))
        return lg_minus_one_series(m, x, t);
    const auto g = fg_complex(x, t).g.real();
    return l_value(m, x, t) / (R(m) * g) - complex_t<R>(1);
}

template <class R>
complex_t<R> eps_value(long m, const R& x, const R& t)
{
    return cis(R(R(m) * t)) * lg_minus_one(m, x, t);
}

} // namespace orthoasym::kernels
