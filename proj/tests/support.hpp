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

#ifndef FREEWITT_TESTS_SUPPORT_HPP
#define FREEWITT_TESTS_SUPPORT_HPP

#include <vector>

#include "freewitt/random.hpp"
#include "freewitt/series.hpp"

namespace testing_support {

using freewitt::Rational;

inline std::vector<Rational> random_values(freewitt::RandomSource& rng, std::size_t n, long max_num = 5,
                                           long max_den = 4)
{
    std::vector<Rational> v;
    for (std::size_t i = 0; i < n; ++i) {
        v.push_back(rng.rational(max_num, max_den));
    }
    return v;
}

inline freewitt::Series<Rational> random_series(freewitt::RandomSource& rng, std::size_t order)
{
    return freewitt::Series<Rational>(random_values(rng, order + 1));
}

template <class Seq>
std::vector<Rational> as_vector(const Seq& s)
{
    return std::vector<Rational>(s.values().begin(), s.values().end());
}

inline Rational q(long num, long den = 1)
{
    return freewitt::rational(num, den);
}

} // namespace testing_support

#endif
