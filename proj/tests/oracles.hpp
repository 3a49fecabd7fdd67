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

// Slow, independent reference computations. Nothing here calls into the
// library's partition enumeration, series arithmetic or linear algebra.

#ifndef FREEWITT_TESTS_ORACLES_HPP
#define FREEWITT_TESTS_ORACLES_HPP

#include <map>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Q = mpq_class;
using Blocks = std::vector<std::vector<int>>;

/// All set partitions of {0..n-1}: insert each element into an existing
/// block or open a new one.
inline std::vector<Blocks> set_partitions(int n)
{
    std::vector<Blocks> out{{}};
    for (int i = 0; i < n; ++i) {
        std::vector<Blocks> next;
        for (const auto& p : out) {
            for (std::size_t b = 0; b < p.size(); ++b) {
                Blocks q = p;
                q[b].push_back(i);
                next.push_back(std::move(q));
            }
            Blocks q = p;
            q.push_back({i});
            next.push_back(std::move(q));
        }
        out = std::move(next);
    }
    return out;
}

/// a < b < c < d with a, c in one block and b, d in another.
inline bool crossing(const Blocks& p)
{
    for (std::size_t x = 0; x < p.size(); ++x) {
        for (std::size_t y = 0; y < p.size(); ++y) {
            if (x == y) {
                continue;
            }
            for (int a : p[x]) {
                for (int c : p[x]) {
                    for (int b : p[y]) {
                        for (int d : p[y]) {
                            if (a < b && b < c && c < d) {
                                return true;
                            }
                        }
                    }
                }
            }
        }
    }
    return false;
}

inline std::vector<Blocks> nc_partitions(int n)
{
    std::vector<Blocks> out;
    for (auto& p : set_partitions(n)) {
        if (!crossing(p)) {
            out.push_back(std::move(p));
        }
    }
    return out;
}

/// Enumerations reused across calls; tests are single-threaded.
inline const std::vector<Blocks>& cached_partitions(int n, bool noncrossing)
{
    static std::map<std::pair<int, bool>, std::vector<Blocks>> cache;
    auto it = cache.find({n, noncrossing});
    if (it == cache.end()) {
        it = cache.emplace(std::pair{n, noncrossing}, noncrossing ? nc_partitions(n) : set_partitions(n)).first;
    }
    return it->second;
}

inline mpz_class binomial(unsigned long n, unsigned long k)
{
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline mpz_class catalan(unsigned long n)
{
    return binomial(2 * n, n) / (n + 1);
}

/// Bell numbers from the Bell triangle.
inline mpz_class bell(int n)
{
    std::vector<mpz_class> row{1};
    for (int i = 0; i < n; ++i) {
        std::vector<mpz_class> next{row.back()};
        for (const auto& x : row) {
            next.push_back(next.back() + x);
        }
        row = std::move(next);
    }
    return row.front();
}

/// m_n = sum over partitions of prod k_{|b|}; k is 1-based in k[n-1].
inline std::vector<Q> moments_by_sum(const std::vector<Q>& k, bool noncrossing)
{
    std::vector<Q> m;
    for (int n = 1; n <= static_cast<int>(k.size()); ++n) {
        Q acc = 0;
        for (const auto& p : cached_partitions(n, noncrossing)) {
            Q term = 1;
            for (const auto& b : p) {
                term *= k[b.size() - 1];
            }
            acc += term;
        }
        m.push_back(acc);
    }
    return m;
}

/// Inverse of moments_by_sum, solved one order at a time: k_n is m_n minus
/// the contribution of every partition other than the one-block partition.
inline std::vector<Q> cumulants_by_sum(const std::vector<Q>& m, bool noncrossing)
{
    std::vector<Q> k;
    for (int n = 1; n <= static_cast<int>(m.size()); ++n) {
        k.push_back(0);
        Q rest = 0;
        for (const auto& p : cached_partitions(n, noncrossing)) {
            if (p.size() == 1) {
                continue;
            }
            Q term = 1;
            for (const auto& b : p) {
                term *= k[b.size() - 1];
            }
            rest += term;
        }
        k.back() = m[n - 1] - rest;
    }
    return k;
}

/// Kreweras complement by brute force: the non-crossing partition of the
/// primed points with n + 1 - |p| blocks whose interleaving with p is
/// non-crossing.
inline Blocks kreweras(const Blocks& p, int n)
{
    const std::size_t want = static_cast<std::size_t>(n) + 1 - p.size();
    for (const auto& s : cached_partitions(n, true)) {
        if (s.size() != want) {
            continue;
        }
        Blocks joined;
        for (const auto& b : p) {
            joined.push_back({});
            for (int x : b) {
                joined.back().push_back(2 * x);
            }
        }
        for (const auto& b : s) {
            joined.push_back({});
            for (int x : b) {
                joined.back().push_back(2 * x + 1);
            }
        }
        if (!crossing(joined)) {
            return s;
        }
    }
    return {};
}

/// Moments of the free multiplicative convolution from the free cumulants of
/// one factor and the moments of the other:
/// m_n = sum over NC(n) of k_pi(a) m_{K(pi)}(b).
inline std::vector<Q> boxtimes_moments(const std::vector<Q>& ka, const std::vector<Q>& mb)
{
    std::vector<Q> out;
    for (int n = 1; n <= static_cast<int>(ka.size()); ++n) {
        Q acc = 0;
        for (const auto& p : cached_partitions(n, true)) {
            Q term = 1;
            for (const auto& b : p) {
                term *= ka[b.size() - 1];
            }
            for (const auto& b : kreweras(p, n)) {
                term *= mb[b.size() - 1];
            }
            acc += term;
        }
        out.push_back(acc);
    }
    return out;
}

/// Truncated Cauchy product with schoolbook loops.
inline std::vector<Q> cauchy(const std::vector<Q>& a, const std::vector<Q>& b)
{
    std::vector<Q> c(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; i + j < a.size(); ++j) {
            c[i + j] += a[i] * b[j];
        }
    }
    return c;
}

/// f(g(z)) by summing f_k g^k with explicit powers.
inline std::vector<Q> compose(const std::vector<Q>& f, const std::vector<Q>& g)
{
    std::vector<Q> out(f.size(), 0);
    std::vector<Q> power(f.size(), 0);
    power[0] = 1;
    for (std::size_t k = 0; k < f.size(); ++k) {
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] += f[k] * power[i];
        }
        power = cauchy(power, g);
    }
    return out;
}

/// Determinant by Gaussian elimination over Q.
inline Q determinant(std::vector<std::vector<Q>> a)
{
    const std::size_t n = a.size();
    Q det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) {
            ++p;
        }
        if (p == n) {
            return 0;
        }
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            Q f = a[r][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) {
                a[r][j] -= f * a[c][j];
            }
        }
    }
    return det;
}

/// A symmetric matrix is PSD iff every principal minor is nonnegative.
inline bool psd_by_minors(const std::vector<std::vector<Q>>& h)
{
    const std::size_t n = h.size();
    for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1UL << i)) {
                idx.push_back(i);
            }
        }
        std::vector<std::vector<Q>> sub(idx.size(), std::vector<Q>(idx.size()));
        for (std::size_t i = 0; i < idx.size(); ++i) {
            for (std::size_t j = 0; j < idx.size(); ++j) {
                sub[i][j] = h[idx[i]][idx[j]];
            }
        }
        if (determinant(sub) < 0) {
            return false;
        }
    }
    return true;
}

/// (k_{i+j+2}) for a 1-based cumulant list stored from k[0] = k_1.
inline std::vector<std::vector<Q>> shifted_hankel(const std::vector<Q>& k)
{
    const std::size_t d = (k.size() - 2) / 2 + 1;
    std::vector<std::vector<Q>> h(d, std::vector<Q>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            h[i][j] = k[i + j + 1];
        }
    }
    return h;
}

inline Q quadratic_form(const std::vector<std::vector<Q>>& h, const std::vector<Q>& v)
{
    Q acc = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        for (std::size_t j = 0; j < h.size(); ++j) {
            acc += v[i] * h[i][j] * v[j];
        }
    }
    return acc;
}

inline Q power(const Q& x, unsigned n)
{
    Q r = 1;
    for (unsigned i = 0; i < n; ++i) {
        r *= x;
    }
    return r;
}

inline Q factorial(unsigned n)
{
    Q r = 1;
    for (unsigned i = 2; i <= n; ++i) {
        r *= i;
    }
    return r;
}

} // namespace oracle

#endif
