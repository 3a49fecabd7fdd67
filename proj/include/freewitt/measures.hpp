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

#ifndef FREEWITT_MEASURES_HPP
#define FREEWITT_MEASURES_HPP

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "freewitt/partitions.hpp"
#include "freewitt/sequences.hpp"

namespace freewitt {

/// Which integral kernel a Levy pair is expressed in:
///   rho:   R(z) = gamma + int z/(1-xz) d rho(x)
///   sigma: R(z) = gamma + int (z+x)/(1-xz) d sigma(x)
enum class LevyKernel { rho, sigma };

template <Scalar T>
struct Atom {
    T x;
    T w;
    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Drift plus a finitely atomic nonnegative measure.
template <Scalar T>
class LevyPair
{
public:
    LevyPair() = default;

    /// Throws std::invalid_argument on a nonpositive weight or repeated atom.
    LevyPair(T gamma, std::vector<Atom<T>> atoms, LevyKernel kernel = LevyKernel::rho)
        : m_gamma(std::move(gamma)), m_atoms(std::move(atoms)), m_kernel(kernel)
    {
        for (std::size_t i = 0; i < m_atoms.size(); ++i) {
            if (!(m_atoms[i].w > T(0))) {
                throw std::invalid_argument("levy pair: atom weights must be positive");
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (m_atoms[i].x == m_atoms[j].x) {
                    throw std::invalid_argument("levy pair: atoms must be distinct");
                }
            }
        }
    }

    const T& gamma() const noexcept { return m_gamma; }
    const std::vector<Atom<T>>& atoms() const noexcept { return m_atoms; }
    LevyKernel kernel() const noexcept { return m_kernel; }

    /// n-th moment of the atomic measure.
    T moment(std::size_t n) const
    {
        T acc(0);
        for (const auto& a : m_atoms) {
            T p = a.w;
            for (std::size_t k = 0; k < n; ++k) {
                p *= a.x;
            }
            acc += p;
        }
        return acc;
    }

    friend bool operator==(const LevyPair&, const LevyPair&) = default;

private:
    T m_gamma{0};
    std::vector<Atom<T>> m_atoms;
    LevyKernel m_kernel = LevyKernel::rho;
};

// Closed-form families. Parameters are exact; the float backend converts at
// the cumulant stage.

struct Dirac {
    Rational a;
};

struct Semicircle {
    Rational a;
    Rational r; ///< radius; the second free cumulant is r^2/4
};

struct FreePoisson {
    Rational rate; ///< lambda >= 0
    Rational jump; ///< alpha
};

struct ClassicalNormal {
    Rational mean;
    Rational variance;
};

struct ClassicalPoisson {
    Rational rate;
};

struct LevyKhintchine {
    LevyPair<Rational> pair;
};

using FamilyMeasure = std::variant<Dirac, Semicircle, FreePoisson, ClassicalNormal, ClassicalPoisson, LevyKhintchine>;

// Validating constructors; they throw std::invalid_argument on bad parameters.
FamilyMeasure make_dirac(Rational a);
FamilyMeasure make_semicircle(Rational a, Rational r);
FamilyMeasure make_free_poisson(Rational rate, Rational jump);
FamilyMeasure make_normal(Rational mean, Rational variance);
FamilyMeasure make_classical_poisson(Rational rate);
FamilyMeasure make_lk(LevyPair<Rational> pair);

std::string family_name(const FamilyMeasure& f);
bool is_free_family(const FamilyMeasure& f);
bool is_classical_family(const FamilyMeasure& f);

/// Free cumulants of the rho-kernel pair: k_1 = gamma, k_{n+2} = m_n(rho).
template <Scalar T>
FreeCumulants<T> levy_pair_to_free_cumulants(const LevyPair<T>& p, std::size_t order)
{
    if (p.kernel() != LevyKernel::rho) {
        throw std::invalid_argument("levy_pair_to_free_cumulants: expects a rho-kernel pair");
    }
    FreeCumulants<T> k(order);
    if (order >= 1) {
        k(1) = p.gamma();
    }
    for (std::size_t n = 2; n <= order; ++n) {
        k(n) = p.moment(n - 2);
    }
    return k;
}

template <Scalar T>
LevyPair<T> convert_pair(const LevyPair<Rational>& p)
{
    std::vector<Atom<T>> atoms;
    for (const auto& a : p.atoms()) {
        atoms.push_back({from_rational<T>(a.x), from_rational<T>(a.w)});
    }
    return LevyPair<T>(from_rational<T>(p.gamma()), std::move(atoms), p.kernel());
}

/// rho-kernel Levy pair of a free family. Throws for classical families.
LevyPair<Rational> free_family_levy_pair(const FamilyMeasure& f);

template <Scalar T = Rational>
FreeCumulants<T> family_to_free_cumulants(const FamilyMeasure& f, std::size_t order)
{
    if (!is_free_family(f)) {
        throw std::invalid_argument("family_to_free_cumulants: " + family_name(f) + " is a classical family");
    }
    return levy_pair_to_free_cumulants(convert_pair<T>(free_family_levy_pair(f)), order);
}

template <Scalar T = Rational>
ClassicalCumulants<T> family_to_classical_cumulants(const FamilyMeasure& f, std::size_t order)
{
    ClassicalCumulants<T> c(order);
    if (order == 0) {
        return c;
    }
    if (const auto* d = std::get_if<Dirac>(&f)) {
        c(1) = from_rational<T>(d->a);
    } else if (const auto* n = std::get_if<ClassicalNormal>(&f)) {
        c(1) = from_rational<T>(n->mean);
        if (order >= 2) {
            c(2) = from_rational<T>(n->variance);
        }
    } else if (const auto* p = std::get_if<ClassicalPoisson>(&f)) {
        for (std::size_t i = 1; i <= order; ++i) {
            c(i) = from_rational<T>(p->rate);
        }
    } else {
        throw std::invalid_argument("family_to_classical_cumulants: " + family_name(f) + " is a free family");
    }
    return c;
}

/// Re-expresses a sigma-kernel pair in the rho kernel:
/// gamma' = gamma + m_1(sigma), w' = w (1 + x^2).
template <Scalar T>
LevyPair<T> sigma_to_rho(const LevyPair<T>& p)
{
    if (p.kernel() != LevyKernel::sigma) {
        throw std::invalid_argument("sigma_to_rho: expects a sigma-kernel pair");
    }
    std::vector<Atom<T>> atoms;
    for (const auto& a : p.atoms()) {
        T w = a.w * (T(1) + a.x * a.x);
        atoms.push_back({a.x, std::move(w)});
    }
    return LevyPair<T>(T(p.gamma() + p.moment(1)), std::move(atoms), LevyKernel::rho);
}

/// Inverse of sigma_to_rho.
template <Scalar T>
LevyPair<T> rho_to_sigma(const LevyPair<T>& p)
{
    if (p.kernel() != LevyKernel::rho) {
        throw std::invalid_argument("rho_to_sigma: expects a rho-kernel pair");
    }
    std::vector<Atom<T>> atoms;
    T shift(0);
    for (const auto& a : p.atoms()) {
        T w = a.w / (T(1) + a.x * a.x);
        shift += w * a.x;
        atoms.push_back({a.x, std::move(w)});
    }
    return LevyPair<T>(T(p.gamma() - shift), std::move(atoms), LevyKernel::sigma);
}

template <Scalar T = Rational>
MomentSeq<T> family_moments(const FamilyMeasure& f, std::size_t order)
{
    if (is_free_family(f)) {
        return moments_from_free_cumulants(family_to_free_cumulants<T>(f, order));
    }
    return moments_from_classical_cumulants(family_to_classical_cumulants<T>(f, order));
}

/// Moments of the semicircle from its defining density
/// 2/(pi r^2) sqrt(r^2 - (x-a)^2) on [a-r, a+r], integrated in closed form:
/// centred moments vanish for odd k and equal Cat_{k/2} (r/2)^k for even k.
MomentSeq<Rational> semicircle_moments_by_integral(const Semicircle& s, std::size_t order);

/// Anything the JSON measure schema can describe.
using MeasureSpec = std::variant<FamilyMeasure, FreeCumulants<Rational>, ClassicalCumulants<Rational>, LevyPair<Rational>>;

nlohmann::json measure_to_json(const MeasureSpec& m);
MeasureSpec measure_from_json(const nlohmann::json& j);

nlohmann::json levy_pair_to_json(const LevyPair<Rational>& p);
nlohmann::json levy_pair_to_json(const LevyPair<double>& p);
LevyPair<Rational> levy_pair_from_json(const nlohmann::json& j);

nlohmann::json rational_to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);

template <class Seq>
nlohmann::json values_to_json(const Seq& s)
{
    auto out = nlohmann::json::array();
    for (const auto& v : s.values()) {
        if constexpr (std::same_as<std::decay_t<decltype(v)>, Rational>) {
            out.push_back(rational_to_json(v));
        } else {
            out.push_back(v);
        }
    }
    return out;
}

} // namespace freewitt

#endif
