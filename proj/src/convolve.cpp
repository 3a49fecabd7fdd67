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

#include "freewitt/convolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "freewitt/infdiv.hpp"

namespace freewitt {

using nlohmann::json;

std::complex<double> evaluate_r(const LevyPair<Rational>& rho_pair, std::complex<double> z)
{
    std::complex<double> acc(rho_pair.gamma().get_d(), 0.0);
    for (const auto& a : rho_pair.atoms()) {
        acc += a.w.get_d() * z / (1.0 - a.x.get_d() * z);
    }
    return acc;
}

namespace {

// Distance from a real point to the segment [-1, 0].
double distance_to_interval(double p)
{
    if (p < -1.0) {
        return -1.0 - p;
    }
    if (p > 0.0) {
        return p;
    }
    return 0.0;
}

LevyPair<Rational> rho_form(const LevyPair<Rational>& p)
{
    return p.kernel() == LevyKernel::sigma ? sigma_to_rho(p) : p;
}

} // namespace

std::string_view region_name(GermRegion r)
{
    return r == GermRegion::upper_halfplane ? "uhp" : "interval";
}

GermReport germ_check(const LevyPair<Rational>& pair, GermRegion region, const GermOptions& opts)
{
    const LevyPair<Rational> p = rho_form(pair);
    GermReport rep;
    rep.region = region;
    rep.min_im = std::numeric_limits<double>::infinity();
    rep.pole_distance = std::numeric_limits<double>::infinity();

    for (const auto& a : p.atoms()) {
        if (sgn(a.x) != 0) {
            double pole = 1.0 / a.x.get_d();
            rep.poles.push_back(pole);
            rep.pole_distance = std::min(rep.pole_distance, distance_to_interval(pole));
        }
    }
    std::sort(rep.poles.begin(), rep.poles.end());

    const int n = std::max(opts.grid, 1);
    for (int i = 0; i < n; ++i) {
        double re = n == 1 ? 0.0 : -opts.extent + 2.0 * opts.extent * i / (n - 1);
        for (int j = 1; j <= n; ++j) {
            double im = opts.extent * j / n;
            std::complex<double> z(re, im);
            std::complex<double> rz = evaluate_r(p, z);
            std::complex<double> rzbar = evaluate_r(p, std::conj(z));
            rep.min_im = std::min(rep.min_im, rz.imag());
            double scale = std::max(1.0, std::abs(rz));
            rep.conj_residual = std::max(rep.conj_residual, std::abs(rzbar - std::conj(rz)) / scale);
        }
    }

    if (rep.min_im < -opts.tolerance) {
        rep.reason = "Im R < 0 somewhere in the upper half-plane";
    } else if (rep.conj_residual > opts.tolerance) {
        rep.reason = "R(conj z) != conj R(z)";
    } else if (region == GermRegion::interval && rep.pole_distance <= opts.interval_margin) {
        rep.reason = "pole within the required neighbourhood of [-1, 0]";
    } else {
        rep.pass = true;
    }
    return rep;
}

GermReport germ_check(const FamilyMeasure& f, GermRegion region, const GermOptions& opts)
{
    if (const auto* n = std::get_if<ClassicalNormal>(&f)) {
        std::vector<Atom<Rational>> atoms;
        if (sgn(n->variance) > 0) {
            atoms.push_back({Rational(0), n->variance});
        }
        return germ_check(LevyPair<Rational>(n->mean, std::move(atoms)), region, opts);
    }
    if (const auto* p = std::get_if<ClassicalPoisson>(&f)) {
        return germ_check(free_family_levy_pair(make_free_poisson(p->rate, Rational(1))), region, opts);
    }
    return germ_check(free_family_levy_pair(f), region, opts);
}

json to_json(const GermReport& r)
{
    auto finite_or_null = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
    json j{{"pass", r.pass},
           {"region", std::string(region_name(r.region))},
           {"min_im", finite_or_null(r.min_im)},
           {"conj_residual", r.conj_residual},
           {"poles", r.poles},
           {"pole_distance", finite_or_null(r.pole_distance)}};
    if (!r.reason.empty()) {
        j["reason"] = r.reason;
    }
    return j;
}

ExpSeries<Rational> exp_map_rplus(const FreeCumulants<Rational>& k, const GermOptions& opts)
{
    LevyRecovery rec = cumulants_to_levy_pair(k);
    if (!rec.exact) {
        throw std::domain_error("exp_map_rplus: no exact Levy pair to verify analyticity around [-1, 0]"
                                + (rec.reason.empty() ? std::string() : " (" + rec.reason + ")"));
    }
    GermReport rep = germ_check(*rec.exact, GermRegion::interval, opts);
    if (!rep.pass) {
        throw std::domain_error("exp_map_rplus: " + rep.reason);
    }
    return exp_map_rplus_unchecked(k);
}

} // namespace freewitt
