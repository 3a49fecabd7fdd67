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

#ifndef FREEWITT_CONVOLVE_HPP
#define FREEWITT_CONVOLVE_HPP

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "freewitt/measures.hpp"
#include "freewitt/series.hpp"

namespace freewitt {

// --- Additive coordinates -------------------------------------------------

/// Free additive convolution: free cumulants add.
template <Scalar T>
FreeCumulants<T> boxplus(const FreeCumulants<T>& mu, const FreeCumulants<T>& nu)
{
    mu.check_same_order(nu);
    FreeCumulants<T> out(mu.order());
    for (std::size_t n = 1; n <= mu.order(); ++n) {
        out(n) = mu(n) + nu(n);
    }
    return out;
}

/// Hadamard product of free cumulant sequences.
template <Scalar T>
FreeCumulants<T> boxdot(const FreeCumulants<T>& mu, const FreeCumulants<T>& nu)
{
    mu.check_same_order(nu);
    FreeCumulants<T> out(mu.order());
    for (std::size_t n = 1; n <= mu.order(); ++n) {
        out(n) = mu(n) * nu(n);
    }
    return out;
}

/// Classical convolution: classical cumulants add.
template <Scalar T>
ClassicalCumulants<T> classical_convolve(const ClassicalCumulants<T>& mu, const ClassicalCumulants<T>& nu)
{
    mu.check_same_order(nu);
    ClassicalCumulants<T> out(mu.order());
    for (std::size_t n = 1; n <= mu.order(); ++n) {
        out(n) = mu(n) + nu(n);
    }
    return out;
}

/// Componentwise product of classical cumulants.
template <Scalar T>
ClassicalCumulants<T> star(const ClassicalCumulants<T>& mu, const ClassicalCumulants<T>& nu)
{
    mu.check_same_order(nu);
    ClassicalCumulants<T> out(mu.order());
    for (std::size_t n = 1; n <= mu.order(); ++n) {
        out(n) = mu(n) * nu(n);
    }
    return out;
}

/// R(z) = sum_{n>=0} k_{n+1} z^n as a series of order N-1.
template <Scalar T>
Series<T> r_transform(const FreeCumulants<T>& k)
{
    if (k.order() == 0) {
        throw std::invalid_argument("r_transform: empty cumulant sequence");
    }
    return Series<T>(std::vector<T>(k.values().begin(), k.values().end()));
}

template <Scalar T>
FreeCumulants<T> from_r_transform(const Series<T>& r)
{
    return FreeCumulants<T>(std::vector<T>(r.coeffs().begin(), r.coeffs().end()));
}

// --- Multiplicative coordinates ---------------------------------------------

/// S-transform S(z) = s_0 + s_1 z + ..., with s_0 != 0.
template <Scalar T>
class STransform
{
public:
    explicit STransform(Series<T> s) : m_series(std::move(s))
    {
        if (is_zero(m_series[0])) {
            throw std::domain_error("S-transform needs a nonzero constant term");
        }
    }
    const Series<T>& series() const noexcept { return m_series; }
    std::size_t order() const noexcept { return m_series.order(); }

    friend STransform operator*(const STransform& a, const STransform& b)
    {
        return STransform(mul(a.m_series, b.m_series));
    }
    friend bool operator==(const STransform&, const STransform&) = default;

private:
    Series<T> m_series;
};

/// S-transform from moments m_1..m_N: psi = sum m_n z^n, chi = psi^{<-1>},
/// S = chi (1+z)/z. The result has order N-1.
template <Scalar T>
STransform<T> s_transform(const MomentSeq<T>& m)
{
    const std::size_t N = m.order();
    if (N == 0 || is_zero(m(1))) {
        throw std::domain_error("s_transform: first moment vanishes");
    }
    Series<T> psi(N);
    for (std::size_t n = 1; n <= N; ++n) {
        psi[n] = m(n);
    }
    Series<T> chi = comp_inverse(psi);
    Series<T> chi_over_z(N - 1);
    for (std::size_t n = 0; n + 1 <= N; ++n) {
        chi_over_z[n] = chi[n + 1];
    }
    Series<T> one_plus_z = Series<T>::constant(T(1), N - 1);
    if (N >= 2) {
        one_plus_z[1] = T(1);
    }
    return STransform<T>(mul(chi_over_z, one_plus_z));
}

/// Inverse of s_transform: chi = z S/(1+z), psi = chi^{<-1>}.
template <Scalar T>
MomentSeq<T> moments_from_s(const STransform<T>& s)
{
    const std::size_t M = s.order();
    const std::size_t N = M + 1;
    Series<T> one_plus_z = Series<T>::constant(T(1), M);
    if (M >= 1) {
        one_plus_z[1] = T(1);
    }
    Series<T> q = divide(s.series(), one_plus_z);
    Series<T> chi(N);
    for (std::size_t n = 0; n <= M; ++n) {
        chi[n + 1] = q[n];
    }
    Series<T> psi = comp_inverse(chi);
    MomentSeq<T> m(N);
    for (std::size_t n = 1; n <= N; ++n) {
        m(n) = psi[n];
    }
    return m;
}

/// Free multiplicative convolution via S_{mu [x] nu} = S_mu S_nu.
template <Scalar T>
MomentSeq<T> boxtimes(const MomentSeq<T>& mu, const MomentSeq<T>& nu)
{
    mu.check_same_order(nu);
    return moments_from_s(s_transform(mu) * s_transform(nu));
}

/// Logarithmic derivative S'/S, read as an R-transform. Moments of order N
/// give free cumulants of order N-1. Real backends require s_0 > 0.
template <RealScalar T>
FreeCumulants<T> log_map(const MomentSeq<T>& m)
{
    if (m.order() < 2) {
        throw std::invalid_argument("log_map: needs at least two moments");
    }
    STransform<T> s = s_transform(m);
    if (!(s.series()[0] > T(0))) {
        throw std::domain_error("log_map: S-transform constant term must be positive on the real backend");
    }
    Series<T> ghost = divide(derivative(s.series()), s.series());
    const std::size_t M = s.order();
    FreeCumulants<T> k(M);
    for (std::size_t n = 1; n <= M; ++n) {
        k(n) = ghost[n - 1];
    }
    return k;
}

/// exp(exponent) * unit(z), with unit(0) = 1. Keeps the exact backend exact
/// when the constant term of the exponentiated series is irrational after exp.
template <Scalar C>
struct ExpSeries {
    C exponent;
    Series<C> unit;

    friend ExpSeries operator*(const ExpSeries& a, const ExpSeries& b)
    {
        return {a.exponent + b.exponent, mul(a.unit, b.unit)};
    }
    friend bool operator==(const ExpSeries&, const ExpSeries&) = default;
};

/// exp of an arbitrary series, split into constant and unit parts.
template <Scalar C>
ExpSeries<C> exp_split(const Series<C>& v)
{
    Series<C> tail = v;
    tail[0] = C(0);
    return {v[0], exp(tail)};
}

/// Materializes exp(exponent) * unit on the matching float backend.
inline Series<double> evaluate(const ExpSeries<Rational>& e)
{
    const double scale = std::exp(to_double(e.exponent));
    std::vector<double> c;
    for (const auto& x : e.unit.coeffs()) {
        c.push_back(scale * to_double(x));
    }
    return Series<double>(std::move(c));
}

inline Series<double> evaluate(const ExpSeries<double>& e)
{
    return std::exp(e.exponent) * e.unit;
}

inline Series<std::complex<double>> evaluate(const ExpSeries<GaussianRational>& e)
{
    const auto scale = std::exp(to_complex_double(e.exponent));
    std::vector<std::complex<double>> c;
    for (const auto& x : e.unit.coeffs()) {
        c.push_back(scale * to_complex_double(x));
    }
    return Series<std::complex<double>>(std::move(c));
}

inline Series<std::complex<double>> evaluate(const ExpSeries<std::complex<double>>& e)
{
    return std::exp(e.exponent) * e.unit;
}

/// S-transform e^{-R(z)} of the image on R_+^*, without the analyticity
/// check (see exp_map_rplus). Order N-1 for N cumulants.
template <RealScalar T>
ExpSeries<T> exp_map_rplus_unchecked(const FreeCumulants<T>& k)
{
    return exp_split(Series<T>(-r_transform(k)));
}

/// R(i(z + 1/2)) for the polynomial truncation of R, re-expanded around 0.
/// Exact whenever R is a polynomial of degree < N.
template <RealScalar T>
Series<complex_of<T>> r_on_shifted_axis(const FreeCumulants<T>& k)
{
    using C = complex_of<T>;
    const std::size_t M = k.order() - 1;
    const C i = imaginary_unit<T>();
    const C half = to_complex(T(T(1) / T(2)));
    Series<C> out(M);
    // (i(z + 1/2))^n accumulated by repeated multiplication with i z + i/2.
    Series<C> power = Series<C>::constant(C(1), M);
    Series<C> step(M);
    step[0] = i * half;
    if (M >= 1) {
        step[1] = i;
    }
    for (std::size_t n = 0; n <= M; ++n) {
        out += power * to_complex(k(n + 1));
        power = mul(power, step);
    }
    return out;
}

/// S-transform e^{-i R(i(z+1/2))} of the image on the unit circle.
template <RealScalar T>
ExpSeries<complex_of<T>> exp_map_circle(const FreeCumulants<T>& k)
{
    using C = complex_of<T>;
    Series<C> u = r_on_shifted_axis(k) * C(-imaginary_unit<T>());
    return exp_split(u);
}

// --- Analyticity checks on rational R-transforms -----------------------------

enum class GermRegion { upper_halfplane, interval };

struct GermOptions {
    int grid = 10;                 ///< grid points per axis
    double extent = 4.0;           ///< |Re z| <= extent, 0 < Im z <= extent
    double interval_margin = 0.1;  ///< required pole distance from [-1, 0]
    double tolerance = 1e-12;
};

struct GermReport {
    GermRegion region = GermRegion::upper_halfplane;
    bool pass = false;
    double min_im = 0.0;
    double conj_residual = 0.0;
    std::vector<double> poles;
    double pole_distance = 0.0; ///< min distance of a pole to [-1, 0]; +inf if none
    std::string reason;
};

/// R(z) = gamma + sum_i w_i z / (1 - x_i z) at a complex point.
std::complex<double> evaluate_r(const LevyPair<Rational>& rho_pair, std::complex<double> z);

GermReport germ_check(const LevyPair<Rational>& pair, GermRegion region, const GermOptions& opts = {});

/// Classical families are checked through their Bercovici-Pata image.
GermReport germ_check(const FamilyMeasure& f, GermRegion region, const GermOptions& opts = {});

nlohmann::json to_json(const GermReport& r);

std::string_view region_name(GermRegion r);

/// Image of an exact free-ID sequence on R_+^*. Recovers the Levy pair,
/// requires it to pass the interval germ check, and throws std::domain_error
/// otherwise.
ExpSeries<Rational> exp_map_rplus(const FreeCumulants<Rational>& k, const GermOptions& opts = {});

} // namespace freewitt

#endif
