// Copyright 2026 The freewitt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FREEWITT_SCALAR_HPP
#define FREEWITT_SCALAR_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace freewitt {

/// Exact rational numbers (GMP, always kept canonical).
using Rational = mpq_class;

/// Builds num/den in canonical form.
Rational rational(long num, long den = 1);

/// Parses "p", "p/q", or a decimal literal such as "-1.25" or "3e-2" into an
/// exact rational. Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// Closest rational with denominator <= max_den (continued fractions).
Rational approximate_rational(double x, long max_den);

/// Gaussian rationals: exact complex numbers re + i*im.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)), im(0) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(long r) : re(r), im(0) {}

    GaussianRational& operator+=(const GaussianRational& o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o)
    {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o)
    {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b)
    {
        return a.re == b.re && a.im == b.im;
    }
};

/// Storage backend of a series; a per-type attribute.
enum class Backend { exact, real_float, complex_float };

std::string_view backend_name(Backend b);

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr Backend backend = Backend::exact;
    static constexpr bool is_exact = true;
    static constexpr bool is_complex = false;
    using complex_type = GaussianRational;
    using real_type = Rational;
};

template <>
struct scalar_traits<double> {
    static constexpr Backend backend = Backend::real_float;
    static constexpr bool is_exact = false;
    static constexpr bool is_complex = false;
    using complex_type = std::complex<double>;
    using real_type = double;
};

template <>
struct scalar_traits<GaussianRational> {
    static constexpr Backend backend = Backend::exact;
    static constexpr bool is_exact = true;
    static constexpr bool is_complex = true;
    using complex_type = GaussianRational;
    using real_type = Rational;
};

template <>
struct scalar_traits<std::complex<double>> {
    static constexpr Backend backend = Backend::complex_float;
    static constexpr bool is_exact = false;
    static constexpr bool is_complex = true;
    using complex_type = std::complex<double>;
    using real_type = double;
};

template <class T>
concept Scalar = requires { scalar_traits<T>::backend; };

template <class T>
concept RealScalar = Scalar<T> && !scalar_traits<T>::is_complex;

template <Scalar T>
using complex_of = typename scalar_traits<T>::complex_type;

template <Scalar T>
T from_rational(const Rational& q)
{
    if constexpr (std::same_as<T, Rational> || std::same_as<T, GaussianRational>) {
        return T(q);
    } else {
        return T(q.get_d());
    }
}

template <Scalar T>
T from_int(long n)
{
    return T(n);
}

template <Scalar T>
bool is_zero(const T& x)
{
    if constexpr (std::same_as<T, Rational>) {
        return sgn(x) == 0;
    } else if constexpr (std::same_as<T, GaussianRational>) {
        return sgn(x.re) == 0 && sgn(x.im) == 0;
    } else {
        return x == T(0);
    }
}

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }
inline std::complex<double> to_complex_double(const GaussianRational& z)
{
    return {z.re.get_d(), z.im.get_d()};
}
inline std::complex<double> to_complex_double(const std::complex<double>& z) { return z; }

/// Lifts a real scalar into its complex counterpart.
template <RealScalar T>
complex_of<T> to_complex(const T& x)
{
    return complex_of<T>(x);
}

/// The imaginary unit in the complex counterpart of T.
template <RealScalar T>
complex_of<T> imaginary_unit()
{
    if constexpr (std::same_as<T, Rational>) {
        return GaussianRational(Rational(0), Rational(1));
    } else {
        return {0.0, 1.0};
    }
}

/// Relative/absolute closeness used by float comparisons.
inline bool close(double a, double b, double rel, double abs_floor = 0.0)
{
    double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= std::max(rel * scale, abs_floor);
}

} // namespace freewitt

#endif
