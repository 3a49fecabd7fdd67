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

#ifndef FREEWITT_SERIES_HPP
#define FREEWITT_SERIES_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "freewitt/scalar.hpp"

namespace freewitt {

/// Default number of retained coefficients beyond c_0.
inline constexpr std::size_t default_order = 16;

// Truncated formal power series c_0 + c_1 z + ... + c_N z^N. The backend is
// fixed by the coefficient type, so mixing backends fails to compile; mixing
// orders throws std::invalid_argument.
template <Scalar T>
class Series
{
public:
    using value_type = T;

    /// Zero series of the given order.
    explicit Series(std::size_t order = default_order) : m_coeffs(order + 1, T(0)) {}

    explicit Series(std::vector<T> coeffs) : m_coeffs(std::move(coeffs))
    {
        if (m_coeffs.empty()) {
            throw std::invalid_argument("series needs at least the constant coefficient");
        }
    }

    Series(std::initializer_list<T> coeffs) : Series(std::vector<T>(coeffs)) {}

    static Series constant(T c, std::size_t order)
    {
        Series s(order);
        s.m_coeffs[0] = std::move(c);
        return s;
    }

    /// The series z.
    static Series identity(std::size_t order)
    {
        Series s(order);
        if (order >= 1) {
            s.m_coeffs[1] = T(1);
        }
        return s;
    }

    std::size_t order() const noexcept { return m_coeffs.size() - 1; }
    static constexpr Backend backend() noexcept { return scalar_traits<T>::backend; }

    const T& operator[](std::size_t n) const { return m_coeffs[n]; }
    T& operator[](std::size_t n) { return m_coeffs[n]; }

    std::span<const T> coeffs() const noexcept { return m_coeffs; }

    /// Drops or zero-pads coefficients to reach the requested order.
    Series resized(std::size_t order) const
    {
        std::vector<T> c(m_coeffs.begin(), m_coeffs.begin() + std::min(order + 1, m_coeffs.size()));
        c.resize(order + 1, T(0));
        return Series(std::move(c));
    }

    Series& operator+=(const Series& o)
    {
        check_same_order(o);
        for (std::size_t n = 0; n < m_coeffs.size(); ++n) {
            m_coeffs[n] += o.m_coeffs[n];
        }
        return *this;
    }
    Series& operator-=(const Series& o)
    {
        check_same_order(o);
        for (std::size_t n = 0; n < m_coeffs.size(); ++n) {
            m_coeffs[n] -= o.m_coeffs[n];
        }
        return *this;
    }
    Series& operator*=(const T& c)
    {
        for (auto& x : m_coeffs) {
            x *= c;
        }
        return *this;
    }

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(Series a, const T& c) { return a *= c; }
    friend Series operator*(const T& c, Series a) { return a *= c; }
    friend Series operator-(Series a)
    {
        for (auto& x : a.m_coeffs) {
            x = -x;
        }
        return a;
    }
    friend bool operator==(const Series& a, const Series& b) { return a.m_coeffs == b.m_coeffs; }

    void check_same_order(const Series& o) const
    {
        if (o.order() != order()) {
            throw std::invalid_argument("series order mismatch: " + std::to_string(order()) + " vs "
                                        + std::to_string(o.order()));
        }
    }

private:
    std::vector<T> m_coeffs;
};

template <Scalar T>
Series<T> add(const Series<T>& a, const Series<T>& b)
{
    return a + b;
}

/// Truncated Cauchy product.
template <Scalar T>
Series<T> mul(const Series<T>& a, const Series<T>& b)
{
    a.check_same_order(b);
    const std::size_t N = a.order();
    Series<T> out(N);
    for (std::size_t i = 0; i <= N; ++i) {
        if (is_zero(a[i])) {
            continue;
        }
        for (std::size_t j = 0; i + j <= N; ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

template <Scalar T>
Series<T> operator*(const Series<T>& a, const Series<T>& b)
{
    return mul(a, b);
}

/// Coefficientwise product.
template <Scalar T>
Series<T> hadamard(const Series<T>& a, const Series<T>& b)
{
    a.check_same_order(b);
    Series<T> out(a.order());
    for (std::size_t n = 0; n <= a.order(); ++n) {
        out[n] = a[n] * b[n];
    }
    return out;
}

/// Formal derivative; the top coefficient becomes zero so the order is kept.
template <Scalar T>
Series<T> derivative(const Series<T>& a)
{
    Series<T> out(a.order());
    for (std::size_t n = 1; n <= a.order(); ++n) {
        out[n - 1] = a[n] * T(static_cast<long>(n));
    }
    return out;
}

/// Termwise antiderivative with zero constant; c_N of the input is dropped.
template <Scalar T>
Series<T> integral(const Series<T>& a)
{
    Series<T> out(a.order());
    for (std::size_t n = 1; n <= a.order(); ++n) {
        out[n] = a[n - 1] / T(static_cast<long>(n));
    }
    return out;
}

template <Scalar T>
Series<T> reciprocal(const Series<T>& a)
{
    if (is_zero(a[0])) {
        throw std::domain_error("reciprocal: constant coefficient is zero");
    }
    const std::size_t N = a.order();
    Series<T> out(N);
    T inv0 = T(1) / a[0];
    out[0] = inv0;
    for (std::size_t n = 1; n <= N; ++n) {
        T acc(0);
        for (std::size_t k = 1; k <= n; ++k) {
            acc += a[k] * out[n - k];
        }
        out[n] = -(acc * inv0);
    }
    return out;
}

template <Scalar T>
Series<T> divide(const Series<T>& a, const Series<T>& b)
{
    return mul(a, reciprocal(b));
}

/// exp via the recursion n f_n = sum_k k a_k f_{n-k} (from f' = a' f). On the
/// exact backends the constant term must vanish; the float backends factor
/// out exp(a_0).
template <Scalar T>
Series<T> exp(const Series<T>& a)
{
    const std::size_t N = a.order();
    Series<T> out(N);
    if constexpr (scalar_traits<T>::is_exact) {
        if (!is_zero(a[0])) {
            throw std::domain_error("exp: nonzero constant term has no exact image");
        }
        out[0] = T(1);
    } else {
        using std::exp;
        out[0] = exp(a[0]);
    }
    for (std::size_t n = 1; n <= N; ++n) {
        T acc(0);
        for (std::size_t k = 1; k <= n; ++k) {
            acc += T(static_cast<long>(k)) * a[k] * out[n - k];
        }
        out[n] = acc / T(static_cast<long>(n));
    }
    return out;
}

template <Scalar T>
bool is_unit_series(const Series<T>& a)
{
    if constexpr (scalar_traits<T>::is_exact) {
        return a[0] == T(1);
    } else {
        return std::abs(a[0] - T(1)) <= 1e-12;
    }
}

/// log of a unit series (c_0 = 1) by integrating a'/a.
template <Scalar T>
Series<T> log(const Series<T>& a)
{
    if (!is_unit_series(a)) {
        throw std::domain_error("log: constant coefficient must be 1");
    }
    const std::size_t N = a.order();
    // (log a)' = a'/a, solved termwise: a'_n = sum_k a_k d_{n-k}.
    Series<T> d(N);
    Series<T> da = derivative(a);
    for (std::size_t n = 0; n < N; ++n) {
        T acc = da[n];
        for (std::size_t k = 1; k <= n; ++k) {
            acc -= a[k] * d[n - k];
        }
        d[n] = acc / a[0];
    }
    return integral(d);
}

/// f(g(z)) mod z^{N+1}; requires g(0) = 0.
template <Scalar T>
Series<T> compose(const Series<T>& f, const Series<T>& g)
{
    f.check_same_order(g);
    if (!is_zero(g[0])) {
        throw std::domain_error("compose: inner series must have zero constant term");
    }
    const std::size_t N = f.order();
    Series<T> out = Series<T>::constant(f[N], N);
    for (std::size_t k = N; k-- > 0;) {
        out = mul(out, g);
        out[0] += f[k];
    }
    return out;
}

namespace detail {

template <Scalar T>
void check_invertible(const Series<T>& f)
{
    if (!is_zero(f[0]) || f.order() < 1 || is_zero(f[1])) {
        throw std::domain_error("comp_inverse: need c_0 = 0 and c_1 != 0");
    }
}

} // namespace detail

/// Compositional inverse by order-doubling Newton iteration
/// g <- g - (f(g) - z) / f'(g).
template <Scalar T>
Series<T> comp_inverse(const Series<T>& f)
{
    detail::check_invertible(f);
    const std::size_t N = f.order();
    const Series<T> df = derivative(f);

    Series<T> g(1);
    g[1] = T(1) / f[1];
    std::size_t w = 1;
    while (w < N) {
        w = std::min(2 * w, N);
        g = g.resized(w);
        Series<T> fw = f.resized(w);
        Series<T> residual = compose(fw, g) - Series<T>::identity(w);
        Series<T> slope = compose(df.resized(w), g);
        g -= divide(residual, slope);
    }
    return g.resized(N);
}

/// Compositional inverse by solving [z^n] f(g(z)) = 0 one coefficient at a
/// time. Slow; kept as an independent cross-check of comp_inverse.
template <Scalar T>
Series<T> comp_inverse_termwise(const Series<T>& f)
{
    detail::check_invertible(f);
    const std::size_t N = f.order();
    Series<T> g(N);
    g[1] = T(1) / f[1];
    for (std::size_t n = 2; n <= N; ++n) {
        // With g_n = 0 the coefficient of z^n in f(g) misses exactly f_1 g_n.
        Series<T> fg = compose(f, g);
        g[n] = -(fg[n] / f[1]);
    }
    return g;
}

template <Scalar T>
nlohmann::json to_json(const Series<T>& s);

/// Parses the JSON series form; the backend field must match T.
template <Scalar T>
Series<T> series_from_json(const nlohmann::json& j);

} // namespace freewitt

#endif
