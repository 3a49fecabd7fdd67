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

#ifndef FREEWITT_WITT_HPP
#define FREEWITT_WITT_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "freewitt/convolve.hpp"
#include "freewitt/infdiv.hpp"

namespace freewitt {

// --- Endomorphisms and actions on free cumulant coordinates --------------------

/// tau(a) = nu_{inf,1,a}: cumulants (a, a^2, a^3, ...).
template <Scalar T>
FreeCumulants<T> teichmueller(const T& a, std::size_t order)
{
    FreeCumulants<T> k(order);
    T p(1);
    for (std::size_t n = 1; n <= order; ++n) {
        p *= a;
        k(n) = p;
    }
    return k;
}

/// Index shift by two on a certified free-ID sequence; throws
/// std::domain_error when the input does not certify.
FreeCumulants<Rational> decalage(const FreeCumulants<Rational>& k);

/// Componentwise n-th power. n = 0 gives all ones (0^0 = 1), the boxdot unit.
template <Scalar T>
FreeCumulants<T> frobenius(unsigned n, const FreeCumulants<T>& k)
{
    FreeCumulants<T> out(k.order());
    for (std::size_t j = 1; j <= k.order(); ++j) {
        T p(1);
        for (unsigned e = 0; e < n; ++e) {
            p *= k(j);
        }
        out(j) = p;
    }
    return out;
}

/// r.mu = delta_r boxplus mu.
template <Scalar T>
FreeCumulants<T> shift_action(const T& r, const FreeCumulants<T>& k)
{
    FreeCumulants<T> out = k;
    if (out.order() >= 1) {
        out(1) += r;
    }
    return out;
}

/// c.mu = nu_{inf,c,1} boxdot mu, c >= 0.
template <RealScalar T>
FreeCumulants<T> scale_action(const T& c, const FreeCumulants<T>& k)
{
    if (c < T(0)) {
        throw std::invalid_argument("scale_action: scale must be nonnegative");
    }
    FreeCumulants<T> out(k.order());
    for (std::size_t n = 1; n <= k.order(); ++n) {
        out(n) = c * k(n);
    }
    return out;
}

/// The base point of the fibration: rho of the Levy pair, when recoverable.
std::optional<LevyPair<Rational>> fibre_projection(const FreeCumulants<Rational>& k);

/// alpha R_mu + beta R_nu.
template <RealScalar T>
FreeCumulants<T> plus_alpha_beta(const T& alpha, const T& beta, const FreeCumulants<T>& mu, const FreeCumulants<T>& nu)
{
    if (alpha < T(0) || beta < T(0)) {
        throw std::invalid_argument("plus_alpha_beta: weights must be nonnegative");
    }
    mu.check_same_order(nu);
    FreeCumulants<T> out(mu.order());
    for (std::size_t n = 1; n <= mu.order(); ++n) {
        out(n) = alpha * mu(n) + beta * nu(n);
    }
    return out;
}

template <RealScalar T>
void check_unit_weight(const T& q, const char* what)
{
    if (q < T(0) || q > T(1)) {
        throw std::invalid_argument(std::string(what) + ": weight must lie in [0, 1]");
    }
}

/// Barycentric addition +_q = +_{q, 1-q} in cumulant coordinates.
template <RealScalar T>
FreeCumulants<T> plus_q(const T& q, const FreeCumulants<T>& mu, const FreeCumulants<T>& nu)
{
    check_unit_weight(q, "plus_q");
    return plus_alpha_beta(q, T(T(1) - q), mu, nu);
}

/// Convex combination of moments (a mixture of the measures).
template <RealScalar T>
MomentSeq<T> mix_moments(const T& q, const MomentSeq<T>& mu, const MomentSeq<T>& nu)
{
    check_unit_weight(q, "mix_moments");
    mu.check_same_order(nu);
    MomentSeq<T> out(mu.order());
    for (std::size_t n = 1; n <= mu.order(); ++n) {
        out(n) = q * mu(n) + (T(1) - q) * nu(n);
    }
    return out;
}

// --- Finite Giry monad ---------------------------------------------------------

/// Nonnegative rationals under + and *.
struct NonNegativeRationals {
    using value_type = Rational;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational add(const Rational& a, const Rational& b) { return a + b; }
    static Rational mul(const Rational& a, const Rational& b) { return a * b; }
    static bool admissible(const Rational& a) { return sgn(a) >= 0; }
    static std::string name() { return "nonnegative-rationals"; }
};

/// Booleans under (or, and).
struct BooleanSemiring {
    using value_type = bool;
    static bool zero() { return false; }
    static bool one() { return true; }
    static bool add(bool a, bool b) { return a || b; }
    static bool mul(bool a, bool b) { return a && b; }
    static bool admissible(bool) { return true; }
    static std::string name() { return "booleans"; }
};

template <class S>
concept Semiring = requires(typename S::value_type a) {
    { S::zero() } -> std::convertible_to<typename S::value_type>;
    { S::one() } -> std::convertible_to<typename S::value_type>;
    { S::add(a, a) } -> std::convertible_to<typename S::value_type>;
    { S::mul(a, a) } -> std::convertible_to<typename S::value_type>;
    { S::admissible(a) } -> std::convertible_to<bool>;
};

/// A finite formal sum s_1 x_1 + ... + s_n x_n with weights summing to the
/// semiring unit. Repeated points and zero weights are allowed.
template <class X, Semiring S>
class FormalDistribution
{
public:
    using weight_type = typename S::value_type;

    struct Term {
        weight_type weight;
        X point;
    };

    explicit FormalDistribution(std::vector<Term> terms) : m_terms(std::move(terms))
    {
        weight_type total = S::zero();
        for (const auto& t : m_terms) {
            if (!S::admissible(t.weight)) {
                throw std::invalid_argument("formal distribution: inadmissible weight");
            }
            total = S::add(total, t.weight);
        }
        if (!(total == S::one())) {
            throw std::invalid_argument("formal distribution: weights must sum to the semiring unit");
        }
    }

    const std::vector<Term>& terms() const noexcept { return m_terms; }

    /// Collected weights per point, zeros dropped.
    std::map<X, weight_type> reduced() const
        requires requires(const X& a, const X& b) { a < b; }
    {
        std::map<X, weight_type> out;
        for (const auto& t : m_terms) {
            auto [it, inserted] = out.try_emplace(t.point, t.weight);
            if (!inserted) {
                it->second = S::add(it->second, t.weight);
            }
        }
        std::erase_if(out, [](const auto& kv) { return kv.second == S::zero(); });
        return out;
    }

private:
    std::vector<Term> m_terms;
};

/// Equality of formal distributions as functions X -> S.
template <class X, Semiring S>
bool equivalent(const FormalDistribution<X, S>& a, const FormalDistribution<X, S>& b)
{
    return a.reduced() == b.reduced();
}

template <Semiring S, class X>
FormalDistribution<X, S> giry_unit(X x)
{
    using D = FormalDistribution<X, S>;
    return D({typename D::Term{S::one(), std::move(x)}});
}

template <class F, class X, Semiring S>
auto giry_map(const F& f, const FormalDistribution<X, S>& phi)
{
    using Y = std::decay_t<decltype(f(std::declval<const X&>()))>;
    using D = FormalDistribution<Y, S>;
    std::vector<typename D::Term> terms;
    for (const auto& t : phi.terms()) {
        terms.push_back({t.weight, f(t.point)});
    }
    return D(std::move(terms));
}

/// x -> sum_i s_i phi_i(x).
template <class X, Semiring S>
FormalDistribution<X, S> giry_join(const FormalDistribution<FormalDistribution<X, S>, S>& phi)
{
    using D = FormalDistribution<X, S>;
    std::vector<typename D::Term> terms;
    for (const auto& outer : phi.terms()) {
        for (const auto& inner : outer.point.terms()) {
            terms.push_back({S::mul(outer.weight, inner.weight), inner.point});
        }
    }
    return D(std::move(terms));
}

using IdDistribution = FormalDistribution<FreeCumulants<Rational>, NonNegativeRationals>;

/// The Giry algebra structure: sum_i lambda_i R_{mu_i}.
FreeCumulants<Rational> giry_algebra_fold(const IdDistribution& phi);

/// The same combination as nested binary +_q, right-folded with
/// q_k = lambda_k / (lambda_k + ... + lambda_n).
FreeCumulants<Rational> giry_algebra_fold_nested(const IdDistribution& phi);

// --- Axiom harness -------------------------------------------------------------

struct AxiomFailure {
    nlohmann::json inputs;
    nlohmann::json lhs;
    nlohmann::json rhs;
};

struct AxiomResult {
    std::string axiom_id;
    std::string statement;
    std::size_t cases = 0;
    std::vector<AxiomFailure> failures;
};

struct AxiomReport {
    std::size_t order = 0;
    std::size_t cases = 0;
    std::uint64_t seed = 0;
    std::vector<AxiomResult> axioms;

    bool pass() const;
};

/// Randomized exact check of the convolution-algebra relations (semiring,
/// convex space, decalage and Frobenius endomorphisms) plus the Giry monad
/// and algebra laws. Deterministic in (order, cases, seed).
AxiomReport check_omega_e_axioms(std::size_t order, std::size_t cases, std::uint64_t seed);

nlohmann::json to_json(const AxiomReport& r);

} // namespace freewitt

#endif
