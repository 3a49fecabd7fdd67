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


#include <doctest.h>

#include <algorithm>
#include <set>

#include "freewitt/partitions.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace freewitt;
using testing_support::as_vector;
using testing_support::q;
using testing_support::random_values;

namespace {

// Library blocks are 1-based; the oracle's are 0-based.
std::set<oracle::Blocks> canonical(const std::vector<oracle::Blocks>& ps)
{
    std::set<oracle::Blocks> out;
    for (auto p : ps) {
        for (auto& b : p) {
            std::sort(b.begin(), b.end());
        }
        std::sort(p.begin(), p.end());
        out.insert(p);
    }
    return out;
}

std::set<oracle::Blocks> canonical(const std::vector<Partition>& ps)
{
    std::vector<oracle::Blocks> shifted;
    for (const auto& p : ps) {
        auto blocks = p.blocks();
        for (auto& b : blocks) {
            for (int& x : b) {
                --x;
            }
        }
        shifted.push_back(blocks);
    }
    return canonical(shifted);
}

std::vector<Rational> powers(const Rational& a, std::size_t n)
{
    std::vector<Rational> out;
    Rational p = 1;
    for (std::size_t i = 0; i < n; ++i) {
        p *= a;
        out.push_back(p);
    }
    return out;
}

} // namespace

TEST_SUITE("partitions")
{
    TEST_CASE("non-crossing counts")
    {
        CHECK(nc_partitions(1).size() == 1);
        CHECK(nc_partitions(3).size() == 5);
        CHECK(nc_partitions(4).size() == 14);
        CHECK(set_partitions(2).size() == 2);
        CHECK(set_partitions(3).size() == 5);
        CHECK(set_partitions(4).size() == 15);
        for (const auto& p : set_partitions(4)) {
            const bool the_crossing_one = p.blocks() == std::vector<std::vector<int>>{{1, 3}, {2, 4}};
            CHECK(p.is_noncrossing() == !the_crossing_one);
        }
    }

    TEST_CASE("enumerations match the brute-force oracle")
    {
        for (int n = 1; n <= 8; ++n) {
            CHECK(canonical(set_partitions(n)) == canonical(oracle::cached_partitions(n, false)));
            CHECK(canonical(nc_partitions(n)) == canonical(oracle::cached_partitions(n, true)));
        }
        for (int n = 1; n <= 10; ++n) {
            CHECK(mpz_class(static_cast<unsigned long>(catalan_number(n))) == oracle::catalan(n));
            CHECK(mpz_class(static_cast<unsigned long>(bell_number(n))) == oracle::bell(n));
            CHECK(nc_partitions(n).size() == catalan_number(n));
        }
        for (int n = 9; n <= 10; ++n) {
            std::size_t nc = 0;
            for_each_set_partition(n, [&](const Partition& p) {
                const auto blocks = p.blocks();
                oracle::Blocks b0;
                for (auto b : blocks) {
                    for (int& x : b) {
                        --x;
                    }
                    b0.push_back(b);
                }
                CHECK(p.is_noncrossing() == !oracle::crossing(b0));
                nc += p.is_noncrossing() ? 1 : 0;
            });
            CHECK(nc == catalan_number(n));
        }
    }

    TEST_CASE("restricted growth strings")
    {
        CHECK_NOTHROW(Partition({0, 1, 0, 2}));
        CHECK_THROWS_AS(Partition({1, 0}), std::invalid_argument);
        CHECK_THROWS_AS(Partition({0, 2}), std::invalid_argument);
        Partition p({0, 1, 0, 1});
        CHECK(p.block_count() == 2);
        CHECK_FALSE(p.is_noncrossing());
        CHECK(p.block_sizes() == std::vector<int>{2, 2});
    }

    TEST_CASE("free moment-cumulant examples")
    {
        FreeCumulants<Rational> semicircle{0, 1, 0, 0, 0, 0};
        CHECK(moments_from_free_cumulants(semicircle) == MomentSeq<Rational>{0, 1, 0, 2, 0, 5});
        FreeCumulants<Rational> poisson{1, 1, 1, 1};
        CHECK(moments_from_free_cumulants(poisson) == MomentSeq<Rational>{1, 2, 5, 14});
        CHECK(free_cumulants_from_moments(MomentSeq<Rational>{1, 2, 5, 14}) == poisson);

        const Rational a = q(-3, 2);
        MomentSeq<Rational> dirac(powers(a, 6));
        FreeCumulants<Rational> single{a, 0, 0, 0, 0, 0};
        CHECK(moments_from_free_cumulants(single) == dirac);
        CHECK(free_cumulants_from_moments(dirac) == single);

        auto bernoulli = free_cumulants_from_moments(MomentSeq<Rational>{0, 1, 0, 1, 0, 1});
        CHECK(bernoulli == FreeCumulants<Rational>{0, 1, 0, -1, 0, 2});
        CHECK(as_vector(bernoulli) == oracle::cumulants_by_sum({0, 1, 0, 1, 0, 1}, true));
    }

    TEST_CASE("classical cumulant table")
    {
        auto normal = classical_cumulants_from_moments(moments_from_classical_cumulants(ClassicalCumulants<Rational>{q(1, 2), 3, 0, 0, 0}));
        CHECK(normal == ClassicalCumulants<Rational>{q(1, 2), 3, 0, 0, 0});
        // Poisson(1) moments are the Bell numbers
        auto poisson = moments_from_classical_cumulants(ClassicalCumulants<Rational>{1, 1, 1, 1, 1, 1});
        for (std::size_t n = 1; n <= 6; ++n) {
            CHECK(poisson(n) == Rational(oracle::bell(static_cast<int>(n))));
        }
        const Rational a = 5;
        CHECK(classical_cumulants_from_moments(MomentSeq<Rational>(powers(a, 5)))
              == ClassicalCumulants<Rational>{5, 0, 0, 0, 0});
    }

    TEST_CASE("recursions agree with partition sums on 200 random sequences")
    {
        RandomSource rng(21);
        for (int rep = 0; rep < 200; ++rep) {
            const std::size_t n = 1 + static_cast<std::size_t>(rng.integer(0, 7));
            auto v = random_values(rng, n);

            FreeCumulants<Rational> k(v);
            MomentSeq<Rational> m = moments_from_free_cumulants(k);
            CHECK(as_vector(m) == oracle::moments_by_sum(v, true));
            CHECK(free_cumulants_from_moments(m) == k);
            CHECK(m == moments_from_free_cumulants_by_partitions(k));

            ClassicalCumulants<Rational> c(v);
            MomentSeq<Rational> mc = moments_from_classical_cumulants(c);
            CHECK(as_vector(mc) == oracle::moments_by_sum(v, false));
            CHECK(classical_cumulants_from_moments(mc) == c);
            CHECK(mc == moments_from_classical_cumulants_by_partitions(c));

            MomentSeq<Rational> raw(v);
            CHECK(as_vector(free_cumulants_from_moments(raw)) == oracle::cumulants_by_sum(v, true));
            CHECK(as_vector(classical_cumulants_from_moments(raw)) == oracle::cumulants_by_sum(v, false));
            CHECK(free_cumulants_from_moments(raw) == free_cumulants_from_moments_by_partitions(raw));
            CHECK(classical_cumulants_from_moments(raw) == classical_cumulants_from_moments_by_partitions(raw));
        }
    }

    TEST_CASE("float backend follows the exact recursion")
    {
        RandomSource rng(22);
        for (int rep = 0; rep < 50; ++rep) {
            auto v = random_values(rng, 10);
            FreeCumulants<Rational> k(v);
            FreeCumulants<double> kd(convert_values<double>(k));
            auto exact = moments_from_free_cumulants(k);
            auto approx = moments_from_free_cumulants(kd);
            for (std::size_t n = 1; n <= 10; ++n) {
                const double x = exact(n).get_d();
                if (std::abs(x) >= 1e-6) {
                    CHECK(std::abs(approx(n) - x) <= 1e-9 * std::abs(x));
                }
            }
        }
    }
}
