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

#include "freewitt/measures.hpp"

#include <stdexcept>

namespace freewitt {

using nlohmann::json;

namespace {

void require_nonnegative(const Rational& x, const char* what)
{
    if (sgn(x) < 0) {
        throw std::invalid_argument(std::string(what) + " must be nonnegative, got " + to_string(x));
    }
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

FamilyMeasure make_dirac(Rational a) { return Dirac{std::move(a)}; }

FamilyMeasure make_semicircle(Rational a, Rational r)
{
    require_nonnegative(r, "semicircle radius");
    return Semicircle{std::move(a), std::move(r)};
}

FamilyMeasure make_free_poisson(Rational rate, Rational jump)
{
    require_nonnegative(rate, "free Poisson rate");
    return FreePoisson{std::move(rate), std::move(jump)};
}

FamilyMeasure make_normal(Rational mean, Rational variance)
{
    require_nonnegative(variance, "normal variance");
    return ClassicalNormal{std::move(mean), std::move(variance)};
}

FamilyMeasure make_classical_poisson(Rational rate)
{
    require_nonnegative(rate, "Poisson rate");
    return ClassicalPoisson{std::move(rate)};
}

FamilyMeasure make_lk(LevyPair<Rational> pair) { return LevyKhintchine{std::move(pair)}; }

std::string family_name(const FamilyMeasure& f)
{
    return std::visit(overloaded{
                          [](const Dirac&) { return std::string("dirac"); },
                          [](const Semicircle&) { return std::string("semicircle"); },
                          [](const FreePoisson&) { return std::string("fpoisson"); },
                          [](const ClassicalNormal&) { return std::string("normal"); },
                          [](const ClassicalPoisson&) { return std::string("cpoisson"); },
                          [](const LevyKhintchine&) { return std::string("lk"); },
                      },
                      f);
}

// Dirac belongs to both coordinate systems.
bool is_free_family(const FamilyMeasure& f)
{
    return !std::holds_alternative<ClassicalNormal>(f) && !std::holds_alternative<ClassicalPoisson>(f);
}

bool is_classical_family(const FamilyMeasure& f)
{
    return std::holds_alternative<Dirac>(f) || std::holds_alternative<ClassicalNormal>(f)
        || std::holds_alternative<ClassicalPoisson>(f);
}

LevyPair<Rational> free_family_levy_pair(const FamilyMeasure& f)
{
    return std::visit(overloaded{
                          [](const Dirac& d) { return LevyPair<Rational>(d.a, {}); },
                          [](const Semicircle& s) {
                              Rational var = s.r * s.r / 4;
                              if (sgn(var) == 0) {
                                  return LevyPair<Rational>(s.a, {});
                              }
                              return LevyPair<Rational>(s.a, {{Rational(0), var}});
                          },
                          [](const FreePoisson& p) {
                              // lambda alpha / (1 - alpha z) = lambda alpha + lambda alpha^2 z / (1 - alpha z)
                              Rational w = p.rate * p.jump * p.jump;
                              if (sgn(w) == 0) {
                                  return LevyPair<Rational>(Rational(p.rate * p.jump), {});
                              }
                              return LevyPair<Rational>(Rational(p.rate * p.jump), {{p.jump, w}});
                          },
                          [](const LevyKhintchine& lk) {
                              return lk.pair.kernel() == LevyKernel::sigma ? sigma_to_rho(lk.pair) : lk.pair;
                          },
                          [](const auto& other) -> LevyPair<Rational> {
                              (void)other;
                              throw std::invalid_argument("free_family_levy_pair: classical family");
                          },
                      },
                      f);
}

MomentSeq<Rational> semicircle_moments_by_integral(const Semicircle& s, std::size_t order)
{
    const Rational quarter_r2 = s.r * s.r / 4;
    // central[k] = int (x-a)^k d gamma_{a,r}
    std::vector<Rational> central(order + 1, Rational(0));
    central[0] = 1;
    Rational pow_q(1);
    for (std::size_t k = 2; k <= order; k += 2) {
        pow_q *= quarter_r2;
        central[k] = Rational(static_cast<long>(catalan_number(static_cast<int>(k / 2)))) * pow_q;
    }
    const auto binom = detail::binomial_table(order);
    MomentSeq<Rational> m(order);
    for (std::size_t n = 1; n <= order; ++n) {
        Rational acc(0);
        Rational a_pow(1); // a^{n-k}, built as k descends
        for (std::size_t k = n + 1; k-- > 0;) {
            acc += Rational(binom[n][k]) * a_pow * central[k];
            a_pow *= s.a;
        }
        m(n) = acc;
    }
    return m;
}

json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const json& j)
{
    if (j.is_string()) {
        return parse_rational(j.get<std::string>());
    }
    if (j.is_number()) {
        // Read the literal as written so 0.1 stays exactly 1/10.
        return parse_rational(j.dump());
    }
    throw std::invalid_argument("expected a number, got " + j.dump());
}

json levy_pair_to_json(const LevyPair<Rational>& p)
{
    json atoms = json::array();
    for (const auto& a : p.atoms()) {
        atoms.push_back(json::array({rational_to_json(a.x), rational_to_json(a.w)}));
    }
    return {{"gamma", rational_to_json(p.gamma())},
            {"atoms", atoms},
            {"kernel", p.kernel() == LevyKernel::rho ? "rho" : "sigma"}};
}

json levy_pair_to_json(const LevyPair<double>& p)
{
    json atoms = json::array();
    for (const auto& a : p.atoms()) {
        atoms.push_back(json::array({a.x, a.w}));
    }
    return {{"gamma", p.gamma()}, {"atoms", atoms}, {"kernel", p.kernel() == LevyKernel::rho ? "rho" : "sigma"}};
}

LevyPair<Rational> levy_pair_from_json(const json& j)
{
    LevyKernel kernel = LevyKernel::rho;
    if (j.contains("kernel")) {
        const auto k = j.at("kernel").get<std::string>();
        if (k == "sigma") {
            kernel = LevyKernel::sigma;
        } else if (k != "rho") {
            throw std::invalid_argument("unknown levy kernel '" + k + "'");
        }
    }
    std::vector<Atom<Rational>> atoms;
    if (j.contains("atoms")) {
        for (const auto& a : j.at("atoms")) {
            if (!a.is_array() || a.size() != 2) {
                throw std::invalid_argument("levy atom must be [x, w], got " + a.dump());
            }
            atoms.push_back({rational_from_json(a[0]), rational_from_json(a[1])});
        }
    }
    return LevyPair<Rational>(rational_from_json(j.at("gamma")), std::move(atoms), kernel);
}

namespace {

json family_params(const FamilyMeasure& f)
{
    return std::visit(overloaded{
                          [](const Dirac& d) { return json{{"a", rational_to_json(d.a)}}; },
                          [](const Semicircle& s) {
                              return json{{"a", rational_to_json(s.a)}, {"r", rational_to_json(s.r)}};
                          },
                          [](const FreePoisson& p) {
                              return json{{"lambda", rational_to_json(p.rate)}, {"alpha", rational_to_json(p.jump)}};
                          },
                          [](const ClassicalNormal& n) {
                              return json{{"mean", rational_to_json(n.mean)},
                                          {"variance", rational_to_json(n.variance)}};
                          },
                          [](const ClassicalPoisson& p) { return json{{"lambda", rational_to_json(p.rate)}}; },
                          [](const LevyKhintchine& lk) { return levy_pair_to_json(lk.pair); },
                      },
                      f);
}

FamilyMeasure family_from_json(const std::string& name, const json& params)
{
    auto get = [&](const char* key) { return rational_from_json(params.at(key)); };
    if (name == "dirac") {
        return make_dirac(get("a"));
    }
    if (name == "semicircle") {
        return make_semicircle(get("a"), get("r"));
    }
    if (name == "fpoisson") {
        return make_free_poisson(get("lambda"), get("alpha"));
    }
    if (name == "normal") {
        return make_normal(get("mean"), get("variance"));
    }
    if (name == "cpoisson") {
        return make_classical_poisson(get("lambda"));
    }
    if (name == "lk") {
        return make_lk(levy_pair_from_json(params));
    }
    throw std::invalid_argument("unknown family '" + name + "'");
}

template <class Seq>
Seq values_from_json(const json& values)
{
    std::vector<Rational> v;
    for (const auto& x : values) {
        v.push_back(rational_from_json(x));
    }
    return Seq(std::move(v));
}

} // namespace

json measure_to_json(const MeasureSpec& m)
{
    return std::visit(overloaded{
                          [](const FamilyMeasure& f) {
                              return json{{"family", family_name(f)}, {"params", family_params(f)}};
                          },
                          [](const FreeCumulants<Rational>& k) {
                              return json{{"cumulants", {{"kind", "free"}, {"values", values_to_json(k)}}}};
                          },
                          [](const ClassicalCumulants<Rational>& c) {
                              return json{{"cumulants", {{"kind", "classical"}, {"values", values_to_json(c)}}}};
                          },
                          [](const LevyPair<Rational>& p) { return json{{"levy", levy_pair_to_json(p)}}; },
                      },
                      m);
}

MeasureSpec measure_from_json(const json& j)
{
    if (j.contains("family")) {
        return family_from_json(j.at("family").get<std::string>(), j.value("params", json::object()));
    }
    if (j.contains("cumulants")) {
        const auto& c = j.at("cumulants");
        const auto kind = c.at("kind").get<std::string>();
        if (kind == "free") {
            return values_from_json<FreeCumulants<Rational>>(c.at("values"));
        }
        if (kind == "classical") {
            return values_from_json<ClassicalCumulants<Rational>>(c.at("values"));
        }
        throw std::invalid_argument("unknown cumulant kind '" + kind + "'");
    }
    if (j.contains("levy")) {
        return levy_pair_from_json(j.at("levy"));
    }
    throw std::invalid_argument("measure JSON needs one of 'family', 'cumulants', 'levy'");
}

} // namespace freewitt
