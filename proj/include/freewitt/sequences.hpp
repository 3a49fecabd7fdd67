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

#ifndef FREEWITT_SEQUENCES_HPP
#define FREEWITT_SEQUENCES_HPP

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "freewitt/scalar.hpp"

namespace freewitt {

enum class CumulantKind { free_kind, classical_kind };

namespace detail {

// 1-based sequence x_1..x_N with a fixed order N.
template <Scalar T>
class IndexedSeq
{
public:
    IndexedSeq() = default;
    explicit IndexedSeq(std::size_t order) : m_values(order, T(0)) {}
    explicit IndexedSeq(std::vector<T> values) : m_values(std::move(values)) {}
    IndexedSeq(std::initializer_list<T> values) : m_values(values) {}

    std::size_t order() const noexcept { return m_values.size(); }

    /// n-th entry, 1-based.
    const T& operator()(std::size_t n) const { return m_values.at(n - 1); }
    T& operator()(std::size_t n) { return m_values.at(n - 1); }

    std::span<const T> values() const noexcept { return m_values; }
    std::vector<T>& mutable_values() noexcept { return m_values; }

    void check_same_order(const IndexedSeq& o) const
    {
        if (o.order() != order()) {
            throw std::invalid_argument("sequence order mismatch: " + std::to_string(order()) + " vs "
                                        + std::to_string(o.order()));
        }
    }

    friend bool operator==(const IndexedSeq&, const IndexedSeq&) = default;

private:
    std::vector<T> m_values;
};

} // namespace detail

/// Moments m_1..m_N of a probability measure (m_0 = 1 implied).
template <Scalar T>
class MomentSeq : public detail::IndexedSeq<T>
{
public:
    using detail::IndexedSeq<T>::IndexedSeq;
    friend bool operator==(const MomentSeq&, const MomentSeq&) = default;

    /// Keeps the first n moments.
    MomentSeq truncated(std::size_t n) const
    {
        auto v = this->values();
        return MomentSeq(std::vector<T>(v.begin(), v.begin() + std::min(n, v.size())));
    }
};

/// Cumulants k_1..k_N. Free and classical sequences are distinct types, so an
/// operation cannot mix the two coordinate systems.
template <CumulantKind K, Scalar T>
class Cumulants : public detail::IndexedSeq<T>
{
public:
    static constexpr CumulantKind kind = K;
    using detail::IndexedSeq<T>::IndexedSeq;
    friend bool operator==(const Cumulants&, const Cumulants&) = default;

    Cumulants truncated(std::size_t n) const
    {
        auto v = this->values();
        return Cumulants(std::vector<T>(v.begin(), v.begin() + std::min(n, v.size())));
    }
};

template <Scalar T = Rational>
using FreeCumulants = Cumulants<CumulantKind::free_kind, T>;

template <Scalar T = Rational>
using ClassicalCumulants = Cumulants<CumulantKind::classical_kind, T>;

inline const char* kind_name(CumulantKind k)
{
    return k == CumulantKind::free_kind ? "free" : "classical";
}

/// Converts every entry of a sequence to another scalar type.
template <class To, class Seq>
auto convert_values(const Seq& s)
{
    std::vector<To> out;
    out.reserve(s.order());
    for (const auto& x : s.values()) {
        if constexpr (std::same_as<To, double>) {
            out.push_back(to_double(x));
        } else {
            out.push_back(To(x));
        }
    }
    return out;
}

} // namespace freewitt

#endif
