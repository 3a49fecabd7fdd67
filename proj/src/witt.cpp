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

#include "freewitt/witt.hpp"

#include <algorithm>

#include "freewitt/random.hpp"

namespace freewitt {

using nlohmann::json;

FreeCumulants<Rational> decalage(const FreeCumulants<Rational>& k)
{
    return decalage_well_defined(k).shifted;
}

std::optional<LevyPair<Rational>> fibre_projection(const FreeCumulants<Rational>& k)
{
    LevyRecovery rec = cumulants_to_levy_pair(k);
    if (!rec.exact) {
        return std::nullopt;
    }
    return LevyPair<Rational>(Rational(0), rec.exact->atoms());
}

namespace {

void check_fold_weights(const IdDistribution& phi)
{
    if (phi.terms().empty()) {
        throw std::invalid_argument("giry_algebra_fold: empty distribution");
    }
    const std::size_t order = phi.terms().front().point.order();
    for (const auto& t : phi.terms()) {
        if (t.point.order() != order) {
            throw std::invalid_argument("giry_algebra_fold: order mismatch");
        }
    }
}

} // namespace

FreeCumulants<Rational> giry_algebra_fold(const IdDistribution& phi)
{
    check_fold_weights(phi);
    FreeCumulants<Rational> out(phi.terms().front().point.order());
    for (const auto& t : phi.terms()) {
        for (std::size_t n = 1; n <= out.order(); ++n) {
            out(n) += t.weight * t.point(n);
        }
    }
    return out;
}

FreeCumulants<Rational> giry_algebra_fold_nested(const IdDistribution& phi)
{
    check_fold_weights(phi);
    const auto& terms = phi.terms();
    // Innermost first: acc = mu_n, then acc = mu_k +_{q_k} acc.
    FreeCumulants<Rational> acc = terms.back().point;
    Rational tail = terms.back().weight;
    for (std::size_t i = terms.size() - 1; i-- > 0;) {
        tail += terms[i].weight;
        Rational q = sgn(tail) == 0 ? Rational(0) : Rational(terms[i].weight / tail);
        acc = plus_q(q, terms[i].point, acc);
    }
    return acc;
}

bool AxiomReport::pass() const
{
    return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.failures.empty(); });
}

json to_json(const AxiomReport& r)
{
    json axioms = json::array();
    for (const auto& a : r.axioms) {
        json failures = json::array();
        for (const auto& f : a.failures) {
            failures.push_back({{"inputs", f.inputs}, {"lhs", f.lhs}, {"rhs", f.rhs}});
        }
        axioms.push_back({{"axiom_id", a.axiom_id},
                          {"statement", a.statement},
                          {"cases", a.cases},
                          {"passed", a.cases - a.failures.size()},
                          {"failures", failures}});
    }
    return {{"order", r.order}, {"cases", r.cases}, {"seed", r.seed}, {"pass", r.pass()}, {"axioms", axioms}};
}

namespace {

using K = FreeCumulants<Rational>;

// Only the first few failures per law keep their inputs and both sides.
constexpr std::size_t max_recorded_failures = 5;

json seq_json(const K& k)
{
    return values_to_json(k);
}

class Harness
{
public:
    explicit Harness(AxiomReport& report) : m_report(report) {}

    AxiomResult& axiom(const std::string& id, const std::string& statement)
    {
        for (auto& a : m_report.axioms) {
            if (a.axiom_id == id) {
                return a;
            }
        }
        m_report.axioms.push_back({id, statement, 0, {}});
        return m_report.axioms.back();
    }

    template <class L, class R>
    void expect(const std::string& id, const std::string& statement, const json& inputs, const L& lhs, const R& rhs)
    {
        AxiomResult& a = axiom(id, statement);
        ++a.cases;
        if (lhs == rhs) {
            return;
        }
        if (a.failures.size() < max_recorded_failures) {
            a.failures.push_back({inputs, to_report(lhs), to_report(rhs)});
        } else {
            a.failures.push_back({json(), json(), json()});
        }
    }

private:
    static json to_report(const K& k) { return seq_json(k); }
    static json to_report(bool b) { return b; }
    template <class T>
    static json to_report(const std::map<T, Rational>& m)
    {
        json out = json::array();
        for (const auto& [x, w] : m) {
            out.push_back({x, rational_to_json(w)});
        }
        return out;
    }
    template <class T>
    static json to_report(const std::map<T, bool>& m)
    {
        json out = json::array();
        for (const auto& [x, w] : m) {
            out.push_back({x, w});
        }
        return out;
    }

    AxiomReport& m_report;
};

/// Largest atom count such that sums and boxdot products of random inputs
/// still have rank below the Hankel dimension, so decalage certifies them.
std::size_t atom_budget(std::size_t order)
{
    if (order < 3) {
        return 0;
    }
    const std::size_t dim = (order - 2) / 2 + 1;
    std::size_t a = 0;
    while (2 * (a + 1) <= dim - 1 && (a + 1) * (a + 1) <= dim - 1) {
        ++a;
    }
    return a;
}

K ones(std::size_t order)
{
    return teichmueller(Rational(1), order);
}

/// Random nonnegative rational weights summing to one.
std::vector<Rational> random_weights(RandomSource& rng, std::size_t count)
{
    std::vector<Rational> w;
    Rational total(0);
    for (std::size_t i = 0; i < count; ++i) {
        w.push_back(Rational(rng.integer(0, 4)));
        total += w.back();
    }
    if (sgn(total) == 0) {
        w.back() = 1;
        total = 1;
    }
    for (auto& x : w) {
        x /= total;
    }
    return w;
}

std::vector<bool> random_flags(RandomSource& rng, std::size_t count)
{
    std::vector<bool> w;
    bool any = false;
    for (std::size_t i = 0; i < count; ++i) {
        w.push_back(rng.integer(0, 1) == 1);
        any = any || w.back();
    }
    if (!any) {
        w[static_cast<std::size_t>(rng.integer(0, static_cast<long>(count) - 1))] = true;
    }
    return w;
}

template <Semiring S>
FormalDistribution<int, S> random_int_distribution(RandomSource& rng, const std::vector<typename S::value_type>& w)
{
    using D = FormalDistribution<int, S>;
    std::vector<typename D::Term> terms;
    for (const auto& x : w) {
        terms.push_back({x, static_cast<int>(rng.integer(0, 3))});
    }
    return D(std::move(terms));
}

template <Semiring S>
std::vector<typename S::value_type> semiring_weights(RandomSource& rng, std::size_t count)
{
    if constexpr (std::same_as<S, BooleanSemiring>) {
        return random_flags(rng, count);
    } else {
        return random_weights(rng, count);
    }
}

template <Semiring S>
json weights_json(const std::vector<typename S::value_type>& w)
{
    json out = json::array();
    for (const auto& x : w) {
        if constexpr (std::same_as<S, BooleanSemiring>) {
            out.push_back(static_cast<bool>(x));
        } else {
            out.push_back(rational_to_json(x));
        }
    }
    return out;
}

template <Semiring S>
json distribution_json(const FormalDistribution<int, S>& d)
{
    json out = json::array();
    for (const auto& t : d.terms()) {
        if constexpr (std::same_as<S, BooleanSemiring>) {
            out.push_back({static_cast<bool>(t.weight), t.point});
        } else {
            out.push_back({rational_to_json(t.weight), t.point});
        }
    }
    return out;
}

template <Semiring S>
void check_monad_laws(Harness& h, RandomSource& rng)
{
    using D = FormalDistribution<int, S>;
    using DD = FormalDistribution<D, S>;
    using DDD = FormalDistribution<DD, S>;
    const std::string tag = S::name();

    auto random_d = [&] { return random_int_distribution<S>(rng, semiring_weights<S>(rng, 1 + rng.integer(0, 2))); };
    auto random_dd = [&] {
        auto w = semiring_weights<S>(rng, 1 + rng.integer(0, 2));
        std::vector<typename DD::Term> terms;
        for (const auto& x : w) {
            terms.push_back({x, random_d()});
        }
        return DD(std::move(terms));
    };

    D phi = random_d();
    json in{{"phi", distribution_json(phi)}};
    h.expect("G1[" + tag + "]", "join . map(unit) = id", in,
             giry_join(giry_map([](int x) { return giry_unit<S>(x); }, phi)).reduced(), phi.reduced());
    h.expect("G2[" + tag + "]", "join . unit = id", in, giry_join(giry_unit<S>(phi)).reduced(), phi.reduced());

    auto w = semiring_weights<S>(rng, 1 + rng.integer(0, 2));
    std::vector<typename DDD::Term> terms;
    for (const auto& x : w) {
        terms.push_back({x, random_dd()});
    }
    DDD phi3(std::move(terms));
    auto lhs = giry_join(giry_join(phi3));
    auto rhs = giry_join(giry_map([](const DD& d) { return giry_join(d); }, phi3));
    h.expect("G3[" + tag + "]", "join . join = join . map(join)", json{{"outer_weights", weights_json<S>(w)}},
             lhs.reduced(), rhs.reduced());
}

} // namespace

AxiomReport check_omega_e_axioms(std::size_t order, std::size_t cases, std::uint64_t seed)
{
    if (order < 1) {
        throw std::invalid_argument("check_omega_e_axioms: order must be at least 1");
    }
    AxiomReport report;
    report.order = order;
    report.cases = cases;
    report.seed = seed;
    Harness h(report);

    // Register every law up front so a vacuous run still lists them.
    const std::vector<std::pair<std::string, std::string>> laws = {
        {"S1", "(x + y) + z = x + (y + z) for boxplus"},
        {"S2", "x + y = y + x for boxplus"},
        {"S3", "delta_0 + x = x"},
        {"S4", "(x . y) . z = x . (y . z) for boxdot"},
        {"S5", "x . y = y . x for boxdot"},
        {"S6", "nu_{inf,1,1} . x = x"},
        {"S7", "(x + y) . z = x . z + y . z"},
        {"S8", "delta_0 . x = delta_0"},
        {"C1", "+_q(x, y) = +_{1-q}(y, x)"},
        {"C2", "+_q(x, x) = x"},
        {"C3", "+_0(x, y) = y"},
        {"C4", "+_p(x, +_q(y, z)) = +_{p+(1-p)q}(+_{p/(p+(1-p)q)}(x, y), z) for p+(1-p)q != 0"},
        {"D1", "decalage(x + y) = decalage(x) + decalage(y)"},
        {"D2", "decalage(x . y) = decalage(x) . decalage(y)"},
        {"D3", "decalage(+_q(x, y)) = +_q(decalage(x), decalage(y))"},
        {"D4", "decalage fixes delta_0 and nu_{inf,1,1}"},
        {"F1", "f_n(x . y) = f_n(x) . f_n(y)"},
        {"F2", "f_n(x) = x^{. n}"},
        {"A1", "alpha(unit(x)) = x"},
        {"A2", "alpha(join(Phi)) = alpha(map(alpha)(Phi))"},
        {"A3", "alpha equals the right-nested binary +_q fold"},
    };
    for (const auto& [id, statement] : laws) {
        h.axiom(id, statement);
    }
    for (const char* id : {"G1", "G2", "G3"}) {
        for (const std::string& tag : {NonNegativeRationals::name(), BooleanSemiring::name()}) {
            static const std::map<std::string, std::string> statements = {
                {"G1", "join . map(unit) = id"}, {"G2", "join . unit = id"}, {"G3", "join . join = join . map(join)"}};
            h.axiom(std::string(id) + "[" + tag + "]", statements.at(id));
        }
    }

    RandomSource rng(seed);
    const std::size_t atoms = atom_budget(order);
    const bool decalage_applicable = order >= 3;
    const K zero(order);
    const K unit = ones(order);

    for (std::size_t c = 0; c < cases; ++c) {
        const K x = rng.id_measure(order, atoms);
        const K y = rng.id_measure(order, atoms);
        const K z = rng.id_measure(order, atoms);
        const json xyz{{"x", seq_json(x)}, {"y", seq_json(y)}, {"z", seq_json(z)}};

        h.expect("S1", "", xyz, boxplus(boxplus(x, y), z), boxplus(x, boxplus(y, z)));
        h.expect("S2", "", xyz, boxplus(x, y), boxplus(y, x));
        h.expect("S3", "", xyz, boxplus(zero, x), x);
        h.expect("S4", "", xyz, boxdot(boxdot(x, y), z), boxdot(x, boxdot(y, z)));
        h.expect("S5", "", xyz, boxdot(x, y), boxdot(y, x));
        h.expect("S6", "", xyz, boxdot(unit, x), x);
        h.expect("S7", "", xyz, boxdot(boxplus(x, y), z), boxplus(boxdot(x, z), boxdot(y, z)));
        h.expect("S8", "", xyz, boxdot(zero, x), zero);

        const Rational p = rng.unit_interval(6);
        const Rational q = rng.unit_interval(6);
        json pq = xyz;
        pq["p"] = rational_to_json(p);
        pq["q"] = rational_to_json(q);
        h.expect("C1", "", pq, plus_q(q, x, y), plus_q(Rational(1 - q), y, x));
        h.expect("C2", "", pq, plus_q(q, x, x), x);
        h.expect("C3", "", pq, plus_q(Rational(0), x, y), y);
        const Rational r = p + (1 - p) * q;
        if (sgn(r) != 0) {
            h.expect("C4", "", pq, plus_q(p, x, plus_q(q, y, z)), plus_q(r, plus_q(Rational(p / r), x, y), z));
        }

        if (decalage_applicable) {
            h.expect("D1", "", xyz, decalage(boxplus(x, y)), boxplus(decalage(x), decalage(y)));
            h.expect("D2", "", xyz, decalage(boxdot(x, y)), boxdot(decalage(x), decalage(y)));
            h.expect("D3", "", pq, decalage(plus_q(q, x, y)), plus_q(q, decalage(x), decalage(y)));
        }

        const auto n = static_cast<unsigned>(rng.integer(1, 4));
        json nxy = xyz;
        nxy["n"] = n;
        h.expect("F1", "", nxy, frobenius(n, boxdot(x, y)), boxdot(frobenius(n, x), frobenius(n, y)));
        K power = unit;
        for (unsigned i = 0; i < n; ++i) {
            power = boxdot(power, x);
        }
        h.expect("F2", "", nxy, frobenius(n, x), power);

        // Giry algebra on ID measures with nonnegative rational weights.
        const std::vector<K> pts{x, y, z};
        const auto w = random_weights(rng, pts.size());
        std::vector<IdDistribution::Term> terms;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            terms.push_back({w[i], pts[i]});
        }
        const IdDistribution phi(terms);
        json in = xyz;
        in["weights"] = weights_json<NonNegativeRationals>(w);
        h.expect("A1", "", in, giry_algebra_fold(giry_unit<NonNegativeRationals>(x)), x);
        h.expect("A3", "", in, giry_algebra_fold(phi), giry_algebra_fold_nested(phi));

        const auto outer = random_weights(rng, 2);
        const auto w2 = random_weights(rng, 2);
        std::vector<IdDistribution::Term> terms2{{w2[0], z}, {w2[1], x}};
        using IdDD = FormalDistribution<IdDistribution, NonNegativeRationals>;
        const IdDD phi2({{outer[0], phi}, {outer[1], IdDistribution(terms2)}});
        h.expect("A2", "", in, giry_algebra_fold(giry_join(phi2)),
                 giry_algebra_fold(giry_map([](const IdDistribution& d) { return giry_algebra_fold(d); }, phi2)));

        check_monad_laws<NonNegativeRationals>(h, rng);
        check_monad_laws<BooleanSemiring>(h, rng);
    }

    if (decalage_applicable && cases > 0) {
        h.expect("D4", "", json{{"x", "delta_0"}}, decalage(zero), K(order - 2));
        h.expect("D4", "", json{{"x", "nu_{inf,1,1}"}}, decalage(unit), ones(order - 2));
    }
    return report;
}

} // namespace freewitt
