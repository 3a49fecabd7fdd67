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

#ifndef FREEWITT_RANDOM_HPP
#define FREEWITT_RANDOM_HPP

#include <cstdint>
#include <random>

#include "freewitt/measures.hpp"

namespace freewitt {

// Seeded generators for exact test inputs. Small numerators and denominators
// keep the rationals short and quadrature nodes recoverable exactly.
class RandomSource
{
public:
    explicit RandomSource(std::uint64_t seed) : m_engine(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(m_engine); }

    /// p/q with p in [-max_num, max_num], q in [1, max_den].
    Rational rational(long max_num, long max_den) { return freewitt::rational(integer(-max_num, max_num), integer(1, max_den)); }

    Rational positive_rational(long max_num, long max_den)
    {
        return freewitt::rational(integer(1, max_num), integer(1, max_den));
    }

    /// A weight in [0, 1] with denominator at most max_den; the endpoints
    /// come up with positive probability.
    Rational unit_interval(long max_den)
    {
        long den = integer(1, max_den);
        return freewitt::rational(integer(0, den), den);
    }

    /// rho-kernel pair with 0..max_atoms distinct atoms.
    LevyPair<Rational> levy_pair(std::size_t max_atoms, long max_num = 3, long max_den = 3)
    {
        const auto count = static_cast<std::size_t>(integer(0, static_cast<long>(max_atoms)));
        std::vector<Atom<Rational>> atoms;
        while (atoms.size() < count) {
            Rational x = rational(max_num, max_den);
            bool fresh = true;
            for (const auto& a : atoms) {
                fresh = fresh && a.x != x;
            }
            if (fresh) {
                atoms.push_back({x, positive_rational(5, 4)});
            }
        }
        return LevyPair<Rational>(rational(4, 3), std::move(atoms));
    }

    /// Free cumulants of a random finitely atomic free-ID law.
    FreeCumulants<Rational> id_measure(std::size_t order, std::size_t max_atoms)
    {
        return levy_pair_to_free_cumulants(levy_pair(max_atoms), order);
    }

    std::mt19937_64& engine() noexcept { return m_engine; }

private:
    std::mt19937_64 m_engine;
};

} // namespace freewitt

#endif
