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

#ifndef FREEWITT_PARTITIONS_HPP
#define FREEWITT_PARTITIONS_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "freewitt/sequences.hpp"

namespace freewitt {

inline constexpr int max_nc_enumeration = 14;
inline constexpr int max_set_enumeration = 12;

/// A set partition of {1..n} stored as a restricted-growth string: label[i]
/// is the block of element i+1, and each new block gets the next label.
class Partition
{
public:
    static constexpr int max_size = 16;

    Partition() = default;
    /// Throws std::invalid_argument unless labels form a restricted-growth string.
    explicit Partition(const std::vector<int>& labels);

    int size() const noexcept { return m_size; }
    int block_count() const noexcept { return m_blocks; }
    int label(int i) const { return m_label.at(static_cast<std::size_t>(i)); }

    /// Block sizes in label order.
    std::vector<int> block_sizes() const;
    /// Blocks as sorted 1-based element lists, in label order.
    std::vector<std::vector<int>> blocks() const;

    bool is_noncrossing() const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    friend class PartitionBuilder;
    std::uint8_t m_size = 0;
    std::uint8_t m_blocks = 0;
    std::array<std::uint8_t, max_size> m_label{};
};

/// Calls visit for every set partition of {1..n}; no bound on n beyond
/// Partition::max_size.
void for_each_set_partition(int n, const std::function<void(const Partition&)>& visit);

/// Calls visit for every non-crossing partition of {1..n}, generated directly
/// (no filtering).
void for_each_nc_partition(int n, const std::function<void(const Partition&)>& visit);

/// All set partitions of {1..n}, 1 <= n <= 12.
std::vector<Partition> set_partitions(int n);

/// All non-crossing partitions of {1..n}, 1 <= n <= 14.
std::vector<Partition> nc_partitions(int n);

/// Catalan and Bell numbers (closed form / triangle), n <= 25.
std::uint64_t catalan_number(int n);

/// Block sizes of the Kreweras complement, read off the cycles of pi^{-1} gamma
/// with gamma = (1 2 ... n) and pi the cyclic permutation of each block.
std::vector<int> kreweras_block_sizes(const Partition& p);
std::uint64_t bell_number(int n);

namespace detail {

// pow[s][j] = [z^j] M(z)^s for the moment series M = 1 + sum m_n z^n, filled
// row by row as moments become known.
template <Scalar T>
class MomentPowers
{
public:
    explicit MomentPowers(std::size_t order) : m_order(order), m_moments(order + 1, T(0)), m_pow(order + 1)
    {
        m_moments[0] = T(1);
        for (std::size_t s = 0; s <= order; ++s) {
            m_pow[s].assign(order + 1, T(0));
        }
        m_pow[0][0] = T(1);
        fill(0);
    }

    void set_moment(std::size_t j, T value)
    {
        m_moments[j] = std::move(value);
        fill(j);
    }

    const T& power(std::size_t s, std::size_t j) const { return m_pow[s][j]; }

private:
    void fill(std::size_t j)
    {
        for (std::size_t s = 1; s <= m_order; ++s) {
            T acc(0);
            for (std::size_t i = 0; i <= j; ++i) {
                acc += m_pow[s - 1][i] * m_moments[j - i];
            }
            m_pow[s][j] = std::move(acc);
        }
    }

    std::size_t m_order;
    std::vector<T> m_moments;
    std::vector<std::vector<T>> m_pow;
};

inline std::vector<std::vector<long>> binomial_table(std::size_t n)
{
    std::vector<std::vector<long>> c(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        c[i].assign(i + 1, 1);
        for (std::size_t k = 1; k < i; ++k) {
            c[i][k] = c[i - 1][k - 1] + c[i - 1][k];
        }
    }
    return c;
}

void check_enumeration_bound(std::size_t n, int bound, const char* what);

} // namespace detail

/// Moments from free cumulants via the functional equation
/// M(z) = 1 + sum_s k_s z^s M(z)^s, solved coefficient by coefficient.
template <Scalar T>
MomentSeq<T> moments_from_free_cumulants(const FreeCumulants<T>& kappa)
{
    const std::size_t N = kappa.order();
    detail::MomentPowers<T> powers(N);
    MomentSeq<T> m(N);
    for (std::size_t n = 1; n <= N; ++n) {
        T acc(0);
        for (std::size_t s = 1; s <= n; ++s) {
            acc += kappa(s) * powers.power(s, n - s);
        }
        m(n) = acc;
        powers.set_moment(n, std::move(acc));
    }
    return m;
}

/// Exact inverse of moments_from_free_cumulants.
template <Scalar T>
FreeCumulants<T> free_cumulants_from_moments(const MomentSeq<T>& m)
{
    const std::size_t N = m.order();
    detail::MomentPowers<T> powers(N);
    FreeCumulants<T> kappa(N);
    for (std::size_t n = 1; n <= N; ++n) {
        // m_n = k_n + sum_{s<n} k_s [z^{n-s}] M^s, where the sum only sees m_1..m_{n-1}.
        T acc = m(n);
        for (std::size_t s = 1; s < n; ++s) {
            acc -= kappa(s) * powers.power(s, n - s);
        }
        kappa(n) = std::move(acc);
        powers.set_moment(n, m(n));
    }
    return kappa;
}

/// m_n = sum_k C(n-1,k-1) c_k m_{n-k}.
template <Scalar T>
MomentSeq<T> moments_from_classical_cumulants(const ClassicalCumulants<T>& c)
{
    const std::size_t N = c.order();
    const auto binom = detail::binomial_table(N);
    std::vector<T> m(N + 1, T(0));
    m[0] = T(1);
    for (std::size_t n = 1; n <= N; ++n) {
        T acc(0);
        for (std::size_t k = 1; k <= n; ++k) {
            acc += T(binom[n - 1][k - 1]) * c(k) * m[n - k];
        }
        m[n] = std::move(acc);
    }
    return MomentSeq<T>(std::vector<T>(m.begin() + 1, m.end()));
}

template <Scalar T>
ClassicalCumulants<T> classical_cumulants_from_moments(const MomentSeq<T>& m)
{
    const std::size_t N = m.order();
    const auto binom = detail::binomial_table(N);
    ClassicalCumulants<T> c(N);
    auto moment = [&](std::size_t j) { return j == 0 ? T(1) : m(j); };
    for (std::size_t n = 1; n <= N; ++n) {
        T acc = m(n);
        for (std::size_t k = 1; k < n; ++k) {
            acc -= T(binom[n - 1][k - 1]) * c(k) * moment(n - k);
        }
        c(n) = std::move(acc);
    }
    return c;
}

// Partition-sum forms of the same transforms. Exponential cost; these are the
// reference the recursions are checked against. Partitions are enumerated once
// per (n, lattice) and tallied by block-size type.

namespace detail {

enum class Lattice { noncrossing, all };

struct BlockTally {
    std::vector<int> sizes;  ///< block sizes, sorted
    std::int64_t count = 0;  ///< partitions of this type
    std::int64_t mobius = 0; ///< sum of mu(pi, 1_n) over them
};

/// Cached and safe to call concurrently. Moebius values: on NC(n) the product
/// of (-1)^{|b|-1} Cat_{|b|-1} over the blocks of the Kreweras complement; on
/// the full lattice (-1)^{k-1} (k-1)! for k blocks.
const std::vector<BlockTally>& block_tallies(int n, Lattice lattice);

template <Scalar T, class Seq>
T tally_sum(int n, Lattice lattice, bool mobius, const Seq& x)
{
    T acc(0);
    for (const auto& t : block_tallies(n, lattice)) {
        T term(static_cast<long>(mobius ? t.mobius : t.count));
        for (int b : t.sizes) {
            term *= x(static_cast<std::size_t>(b));
        }
        acc += term;
    }
    return acc;
}

} // namespace detail

template <Scalar T>
MomentSeq<T> moments_from_free_cumulants_by_partitions(const FreeCumulants<T>& kappa)
{
    detail::check_enumeration_bound(kappa.order(), max_nc_enumeration, "partition-sum transform");
    MomentSeq<T> m(kappa.order());
    for (std::size_t n = 1; n <= kappa.order(); ++n) {
        m(n) = detail::tally_sum<T>(static_cast<int>(n), detail::Lattice::noncrossing, false, kappa);
    }
    return m;
}

/// Moebius inversion on NC(n).
template <Scalar T>
FreeCumulants<T> free_cumulants_from_moments_by_partitions(const MomentSeq<T>& m)
{
    detail::check_enumeration_bound(m.order(), max_nc_enumeration, "partition-sum transform");
    FreeCumulants<T> kappa(m.order());
    for (std::size_t n = 1; n <= m.order(); ++n) {
        kappa(n) = detail::tally_sum<T>(static_cast<int>(n), detail::Lattice::noncrossing, true, m);
    }
    return kappa;
}

template <Scalar T>
MomentSeq<T> moments_from_classical_cumulants_by_partitions(const ClassicalCumulants<T>& c)
{
    detail::check_enumeration_bound(c.order(), max_set_enumeration, "partition-sum transform");
    MomentSeq<T> m(c.order());
    for (std::size_t n = 1; n <= c.order(); ++n) {
        m(n) = detail::tally_sum<T>(static_cast<int>(n), detail::Lattice::all, false, c);
    }
    return m;
}

/// Moebius inversion on the full partition lattice.
template <Scalar T>
ClassicalCumulants<T> classical_cumulants_from_moments_by_partitions(const MomentSeq<T>& m)
{
    detail::check_enumeration_bound(m.order(), max_set_enumeration, "partition-sum transform");
    ClassicalCumulants<T> c(m.order());
    for (std::size_t n = 1; n <= m.order(); ++n) {
        c(n) = detail::tally_sum<T>(static_cast<int>(n), detail::Lattice::all, true, m);
    }
    return c;
}

} // namespace freewitt

#endif
