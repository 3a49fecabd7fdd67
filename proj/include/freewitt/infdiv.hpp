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

#ifndef FREEWITT_INFDIV_HPP
#define FREEWITT_INFDIV_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "freewitt/measures.hpp"

namespace freewitt {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Hankel matrix (k_{i+j+2}) of the shifted sequence, of size floor((N-2)/2)+1.
RationalMatrix shifted_hankel(const FreeCumulants<Rational>& k);

struct PsdResult {
    bool psd = false;
    std::size_t rank = 0;
    /// For an indefinite matrix: v with v^T H v < 0.
    std::vector<Rational> witness;
    Rational witness_value;
};

/// Exact symmetric elimination. A zero pivot is accepted only when its whole
/// remaining row vanishes.
PsdResult decide_psd(const RationalMatrix& h);

Rational quadratic_form(const RationalMatrix& h, const std::vector<Rational>& v);

/// Outcome of reading an atomic measure off its moments m_0..m_M.
struct AtomicRecovery {
    bool identified = false;
    std::optional<LevyPair<Rational>> exact;  ///< gamma = 0; only atoms are meaningful
    std::optional<LevyPair<double>> numeric;
    std::string reason;
};

/// Gauss quadrature from exact moments: exact three-term recurrence,
/// float eigen-decomposition of the Jacobi matrix, then an exact re-check of
/// rational-looking nodes. The rank comes from decide_psd on the Hankel matrix.
AtomicRecovery recover_atomic_measure(const std::vector<Rational>& moments, std::size_t rank);

enum class IdVerdict { certified, refuted, inconclusive };

std::string_view verdict_name(IdVerdict v);

struct IdCertificate {
    IdVerdict verdict = IdVerdict::inconclusive;
    std::size_t hankel_order = 0;
    std::size_t rank = 0;
    std::vector<Rational> witness;
    Rational witness_value;
    std::optional<LevyPair<Rational>> exact_pair;
    std::optional<LevyPair<double>> numeric_pair;
    std::string note;

    /// Re-evaluates the witness form, or the pair's cumulants, against k.
    bool recheck(const FreeCumulants<Rational>& k) const;
};

/// Conditional positive definiteness of k plus finite-atomic pair recovery.
/// Throws std::invalid_argument for N < 3.
IdCertificate is_conditionally_pd(const FreeCumulants<Rational>& k);

nlohmann::json to_json(const IdCertificate& c);

struct LevyRecovery {
    std::optional<LevyPair<Rational>> exact;
    std::optional<LevyPair<double>> numeric;
    bool identified = false;
    std::string reason;
};

/// gamma = k_1 and rho from the moments k_{n+2}. Throws std::domain_error when
/// the shifted Hankel matrix is not PSD; otherwise reports whether the rank
/// was identifiable within the truncation.
LevyRecovery cumulants_to_levy_pair(const FreeCumulants<Rational>& k);

struct DecalageResult {
    FreeCumulants<Rational> shifted;
    IdCertificate certificate;
};

/// k_n -> k_{n+2}; the input must certify as ID. Order drops by two.
DecalageResult decalage_well_defined(const FreeCumulants<Rational>& k);

/// Sequence-level Bercovici-Pata map: classical cumulants read as free ones.
template <Scalar T>
FreeCumulants<T> bp_bijection(const ClassicalCumulants<T>& c)
{
    return FreeCumulants<T>(std::vector<T>(c.values().begin(), c.values().end()));
}

template <Scalar T>
ClassicalCumulants<T> bp_inverse(const FreeCumulants<T>& k)
{
    return ClassicalCumulants<T>(std::vector<T>(k.values().begin(), k.values().end()));
}

/// Free cumulants from a sigma-kernel pair by expanding (z+x)/(1-xz):
/// k_1 = gamma + m_1(sigma), k_n = m_{n-2}(sigma) + m_n(sigma) for n >= 2.
template <Scalar T>
FreeCumulants<T> pair_to_free_cumulants_bp(const LevyPair<T>& p, std::size_t order)
{
    if (p.kernel() != LevyKernel::sigma) {
        throw std::invalid_argument("pair_to_free_cumulants_bp: expects a sigma-kernel pair");
    }
    FreeCumulants<T> k(order);
    if (order >= 1) {
        k(1) = p.gamma() + p.moment(1);
    }
    for (std::size_t n = 2; n <= order; ++n) {
        k(n) = p.moment(n - 2) + p.moment(n);
    }
    return k;
}

/// Classical cumulants of the ID law with Khintchine pair (gamma, sigma),
/// computed from its Levy measure: an atom at 0 is the Gaussian part, an atom
/// x != 0 of weight w is a compensated Poisson component of rate
/// w (1+x^2)/x^2 and jump x.
template <Scalar T>
ClassicalCumulants<T> classical_pair_to_cumulants(const LevyPair<T>& p, std::size_t order)
{
    if (p.kernel() != LevyKernel::sigma) {
        throw std::invalid_argument("classical_pair_to_cumulants: expects a sigma-kernel pair");
    }
    ClassicalCumulants<T> c(order);
    if (order == 0) {
        return c;
    }
    c(1) = p.gamma();
    for (const auto& a : p.atoms()) {
        if (is_zero(a.x)) {
            if (order >= 2) {
                c(2) += a.w;
            }
            continue;
        }
        T x2 = a.x * a.x;
        T rate = a.w * (T(1) + x2) / x2;
        // drift: the compensator subtracts x / (1 + x^2) per unit rate
        c(1) += rate * (a.x - a.x / (T(1) + x2));
        T power = x2;
        for (std::size_t n = 2; n <= order; ++n) {
            c(n) += rate * power;
            power *= a.x;
        }
    }
    return c;
}

/// Projection onto the sigma component of the free Khintchine pair.
std::optional<LevyPair<Rational>> free_sigma_projection(const FreeCumulants<Rational>& k);

/// Projection onto the sigma component of the classical Khintchine pair.
std::optional<LevyPair<Rational>> classical_sigma_projection(const ClassicalCumulants<Rational>& c);

/// alpha * p + beta * q on pairs of the same kernel (drifts and measures).
LevyPair<Rational> combine_pairs(const Rational& alpha, const LevyPair<Rational>& p, const Rational& beta,
                                 const LevyPair<Rational>& q);

} // namespace freewitt

#endif
