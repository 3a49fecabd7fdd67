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

#include <set>
#include <string>

#include "freewitt/witt.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace freewitt;
using testing_support::q;

namespace {

using K = FreeCumulants<Rational>;
using M = MomentSeq<Rational>;
using QDist = FormalDistribution<std::string, NonNegativeRationals>;
using BDist = FormalDistribution<std::string, BooleanSemiring>;

K fc(const FamilyMeasure& f, std::size_t n)
{
    return family_to_free_cumulants(f, n);
}

M dirac_moments(const Rational& a, std::size_t n)
{
    return family_moments(make_dirac(a), n);
}

} // namespace

TEST_SUITE("witt")
{
    TEST_CASE("Teichmueller character")
    {
        CHECK(teichmueller(Rational(1), 6) == fc(make_free_poisson(1, 1), 6));
        CHECK(boxdot(teichmueller(Rational(2), 6), teichmueller(Rational(3), 6)) == teichmueller(Rational(6), 6));
        CHECK(teichmueller(Rational(0), 5) == K(5));
        RandomSource rng(61);
        for (int rep = 0; rep < 30; ++rep) {
            Rational a = rng.rational(5, 4), b = rng.rational(5, 4);
            CHECK(boxdot(teichmueller(a, 8), teichmueller(b, 8)) == teichmueller(Rational(a * b), 8));
            if (a != 0) {
                CHECK(boxdot(teichmueller(a, 8), teichmueller(Rational(1 / a), 8)) == teichmueller(Rational(1), 8));
            }
        }
    }

    TEST_CASE("decalage")
    {
        CHECK(decalage(teichmueller(Rational(1), 8)) == teichmueller(Rational(1), 6));
        CHECK(decalage(K(8)) == K(6));
        const Rational l = q(5, 3), a = q(3, 4);
        CHECK(decalage(fc(make_free_poisson(l, a), 9)) == fc(make_free_poisson(l * a * a, a), 7));
        CHECK_THROWS_AS(decalage(K{0, 1, 0, -1, 0, 2}), std::domain_error);

        RandomSource rng(62);
        for (int rep = 0; rep < 30; ++rep) {
            K x = rng.id_measure(12, 2), y = rng.id_measure(12, 2);
            CHECK(decalage(boxplus(x, y)) == boxplus(decalage(x), decalage(y)));
            CHECK(decalage(boxdot(x, y)) == boxdot(decalage(x), decalage(y)));
        }
    }

    TEST_CASE("Frobenius maps")
    {
        const Rational a = q(-2, 3);
        CHECK(frobenius(2, fc(make_free_poisson(1, a), 7)) == fc(make_free_poisson(1, a * a), 7));
        CHECK(frobenius(2, fc(make_free_poisson(1, a), 7)) == boxdot(fc(make_free_poisson(1, a), 7), fc(make_free_poisson(1, a), 7)));
        K mu{q(1, 2), 3, -1, 0};
        CHECK(frobenius(1, mu) == mu);
        CHECK(frobenius(0, mu) == teichmueller(Rational(1), 4));
        CHECK(frobenius(2, fc(make_semicircle(0, 2), 5)) == fc(make_semicircle(0, 2), 5));

        RandomSource rng(63);
        for (int rep = 0; rep < 30; ++rep) {
            K x = rng.id_measure(8, 3), y = rng.id_measure(8, 3);
            const unsigned n = static_cast<unsigned>(rng.integer(1, 4));
            CHECK(frobenius(n, boxdot(x, y)) == boxdot(frobenius(n, x), frobenius(n, y)));
            K power = x;
            for (unsigned i = 1; i < n; ++i) {
                power = boxdot(power, x);
            }
            CHECK(frobenius(n, x) == power);
            // the free Poisson family is stable under both endomorphisms
            Rational l = rng.positive_rational(4, 3), al = rng.rational(3, 2);
            CHECK(frobenius(n, fc(make_free_poisson(1, al), 8)) == fc(make_free_poisson(1, oracle::power(al, n)), 8));
            if (al != 0) {
                CHECK(decalage(fc(make_free_poisson(l, al), 8)) == fc(make_free_poisson(l * al * al, al), 6));
            }
        }
    }

    TEST_CASE("group actions")
    {
        const Rational c = q(9, 4), a = q(1, 3), r = 2;
        CHECK(scale_action(c, fc(make_semicircle(a, r), 6)) == fc(make_semicircle(c * a, q(3, 2) * r), 6));
        CHECK(scale_action(c, fc(make_free_poisson(q(2, 5), q(-1, 2)), 6)) == fc(make_free_poisson(c * q(2, 5), q(-1, 2)), 6));
        CHECK(scale_action(c, K{1, 2, 3}) == boxdot(fc(make_free_poisson(c, 1), 3), K{1, 2, 3}));
        K mu{q(1, 2), 3, -1, 4};
        CHECK(shift_action(Rational(0), mu) == mu);
        CHECK(shift_action(Rational(5), mu) == boxplus(fc(make_dirac(5), 4), mu));
        CHECK_THROWS_AS(scale_action(Rational(-1), mu), std::invalid_argument);

        RandomSource rng(64);
        for (int rep = 0; rep < 20; ++rep) {
            K x = rng.id_measure(8, 2);
            auto base = fibre_projection(x);
            auto moved = fibre_projection(shift_action(rng.rational(4, 3), x));
            REQUIRE(base);
            REQUIRE(moved);
            CHECK(*base == *moved);
            CHECK(base->gamma() == 0);
        }
    }

    TEST_CASE("barycentric addition")
    {
        K mu{1, q(1, 2), 0, 3}, nu{-2, 1, q(7, 3), 0}, xi{q(1, 3), 2, -1, 1};
        const Rational qq = q(2, 7);
        CHECK(plus_q(qq, mu, mu) == mu);
        CHECK(plus_q(Rational(0), mu, nu) == nu);
        CHECK(boxdot(plus_q(qq, mu, nu), xi) == plus_q(qq, boxdot(mu, xi), boxdot(nu, xi)));
        CHECK(boxplus(plus_q(qq, mu, nu), xi) == plus_q(qq, boxplus(mu, xi), boxplus(nu, xi)));
        CHECK(plus_alpha_beta(Rational(2), Rational(3), mu, nu) == K{-4, 4, 7, 6});
        CHECK_THROWS_AS(plus_q(Rational(2), mu, nu), std::invalid_argument);
        CHECK_THROWS_AS(plus_alpha_beta(Rational(-1), Rational(1), mu, nu), std::invalid_argument);
    }

    TEST_CASE("the printed reweighting law fails and the corrected one holds")
    {
        RandomSource rng(65);
        const Rational p = q(1, 2), qq = q(1, 2);
        const Rational r = p + (1 - p) * qq;
        K x = rng.id_measure(6, 2), y = rng.id_measure(6, 2), z = rng.id_measure(6, 2);
        while (x == z) {
            z = rng.id_measure(6, 2);
        }
        K printed_lhs = plus_q(p, plus_q(qq, x, y), z);
        K corrected_lhs = plus_q(p, x, plus_q(qq, y, z));
        K rhs = plus_q(r, plus_q(Rational(p / r), x, y), z);
        CHECK(corrected_lhs == rhs);
        CHECK(printed_lhs != rhs);
        // weights on (x, y, z): 1/4, 1/4, 1/2 against 1/2, 1/4, 1/4
        for (std::size_t n = 1; n <= 6; ++n) {
            CHECK(printed_lhs(n) == x(n) / 4 + y(n) / 4 + z(n) / 2);
            CHECK(rhs(n) == x(n) / 2 + y(n) / 4 + z(n) / 4);
        }
    }

    TEST_CASE("moment mixtures")
    {
        M bern = mix_moments(q(1, 2), dirac_moments(-1, 6), dirac_moments(1, 6));
        CHECK(bern == M{0, 1, 0, 1, 0, 1});
        M mu{1, 2, 3};
        CHECK(mix_moments(Rational(1), mu, M{4, 5, 6}) == mu);

        // mixing does not commute with boxplus
        const std::size_t N = 4;
        K kb = free_cumulants_from_moments(bern.truncated(N));
        M lhs = moments_from_free_cumulants(boxplus(kb, kb));
        M rhs = mix_moments(q(1, 2), moments_from_free_cumulants(boxplus(fc(make_dirac(-1), N), kb)),
                            moments_from_free_cumulants(boxplus(fc(make_dirac(1), N), kb)));
        CHECK(lhs != rhs);
        CHECK(lhs(2) == 2);
        CHECK(rhs(2) == 2);
        CHECK(lhs(4) == 6);
        CHECK(rhs(4) == 8);
    }

    TEST_CASE("finite Giry monad")
    {
        QDist x = giry_unit<NonNegativeRationals>(std::string("x"));
        CHECK(x.terms().size() == 1);
        CHECK(x.terms()[0].weight == 1);
        QDist half({{q(1, 2), "x"}, {q(1, 2), "y"}});
        using Outer = FormalDistribution<QDist, NonNegativeRationals>;
        CHECK(equivalent(giry_join(giry_unit<NonNegativeRationals>(half)), half));
        QDist joined = giry_join(Outer({{q(1, 2), x}, {q(1, 2), half}}));
        CHECK(joined.reduced() == std::map<std::string, Rational>{{"x", q(3, 4)}, {"y", q(1, 4)}});
        CHECK(equivalent(giry_join(giry_map([](const std::string& s) { return giry_unit<NonNegativeRationals>(s); }, half)), half));
        CHECK_THROWS_AS(QDist({{q(1, 2), "x"}}), std::invalid_argument);
        CHECK_THROWS_AS(QDist({{q(3, 2), "x"}, {q(-1, 2), "y"}}), std::invalid_argument);

        BDist bx({{true, "x"}, {true, "y"}, {false, "z"}});
        CHECK(bx.reduced() == std::map<std::string, bool>{{"x", true}, {"y", true}});
        using BOuter = FormalDistribution<BDist, BooleanSemiring>;
        BDist bj = giry_join(BOuter({{true, bx}, {true, giry_unit<BooleanSemiring>(std::string("w"))}}));
        CHECK(bj.reduced().size() == 3);
        CHECK_THROWS_AS(BDist({{false, "x"}}), std::invalid_argument);
    }

    TEST_CASE("Giry algebra fold")
    {
        const std::size_t N = 5;
        K mu{1, 2, 3, 4, 5};
        CHECK(giry_algebra_fold(giry_unit<NonNegativeRationals>(mu)) == mu);
        CHECK(giry_algebra_fold(IdDistribution({{q(1, 2), mu}, {q(1, 2), mu}})) == mu);
        IdDistribution three({{q(1, 3), fc(make_dirac(0), N)},
                              {q(1, 3), fc(make_dirac(3), N)},
                              {q(1, 3), fc(make_semicircle(0, 2), N)}});
        CHECK(giry_algebra_fold(three) == K{1, q(1, 3), 0, 0, 0});
        CHECK(giry_algebra_fold_nested(three) == giry_algebra_fold(three));
    }

    TEST_CASE("axiom harness")
    {
        AxiomReport empty = check_omega_e_axioms(8, 0, 1);
        CHECK(empty.pass());
        for (const auto& a : empty.axioms) {
            CHECK(a.cases == 0);
            CHECK(a.failures.empty());
        }

        AxiomReport r = check_omega_e_axioms(10, 10, 7);
        CHECK(r.pass());
        CHECK(r.order == 10);
        CHECK(r.seed == 7);
        auto j = to_json(r);
        CHECK(j["pass"] == true);
        CHECK(j["axioms"].size() == r.axioms.size());
        std::set<std::string> ids;
        for (const auto& a : r.axioms) {
            ids.insert(a.axiom_id);
            CHECK(a.cases > 0);
        }
        for (const char* id : {"S1", "S8", "C1", "C4", "D1", "D2", "D3", "D4", "F1", "F2", "A1", "A2", "A3",
                               "G1[nonnegative-rationals]", "G3[booleans]"}) {
            CHECK(ids.count(id) == 1);
        }

        AxiomReport again = check_omega_e_axioms(10, 10, 7);
        CHECK(to_json(again) == j);

        // distributivity instance from the harness description
        K d1 = fc(make_dirac(1), 6), g = fc(make_semicircle(0, 2), 6), unit = fc(make_free_poisson(1, 1), 6);
        CHECK(boxdot(boxplus(d1, g), unit) == boxplus(boxdot(d1, unit), boxdot(g, unit)));
    }
}
