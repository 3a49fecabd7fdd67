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

#include "freewitt/series.hpp"

#include <json.hpp>

namespace freewitt {

namespace {

using nlohmann::json;

Rational rational_from_json(const json& v)
{
    if (v.is_string()) {
        return parse_rational(v.get<std::string>());
    }
    if (v.is_number_integer()) {
        return Rational(v.get<long>());
    }
    throw std::invalid_argument("expected an exact rational string, got " + v.dump());
}

json coeff_to_json(const Rational& c) { return to_string(c); }
json coeff_to_json(double c) { return c; }
json coeff_to_json(const GaussianRational& c) { return json::array({to_string(c.re), to_string(c.im)}); }
json coeff_to_json(const std::complex<double>& c) { return json::array({c.real(), c.imag()}); }

template <Scalar T>
T coeff_from_json(const json& v)
{
    if constexpr (std::same_as<T, Rational>) {
        return rational_from_json(v);
    } else if constexpr (std::same_as<T, double>) {
        return v.get<double>();
    } else if constexpr (std::same_as<T, GaussianRational>) {
        if (!v.is_array() || v.size() != 2) {
            throw std::invalid_argument("expected [re, im], got " + v.dump());
        }
        return GaussianRational(rational_from_json(v[0]), rational_from_json(v[1]));
    } else {
        if (!v.is_array() || v.size() != 2) {
            throw std::invalid_argument("expected [re, im], got " + v.dump());
        }
        return {v[0].get<double>(), v[1].get<double>()};
    }
}

} // namespace

template <Scalar T>
json to_json(const Series<T>& s)
{
    json coeffs = json::array();
    for (const auto& c : s.coeffs()) {
        coeffs.push_back(coeff_to_json(c));
    }
    return {{"order", s.order()}, {"backend", std::string(backend_name(s.backend()))}, {"coeffs", coeffs}};
}

template <Scalar T>
Series<T> series_from_json(const json& j)
{
    const auto backend = j.at("backend").get<std::string>();
    if (backend != backend_name(Series<T>::backend())) {
        throw std::invalid_argument("series backend mismatch: '" + backend + "'");
    }
    const auto order = j.at("order").get<std::size_t>();
    const auto& coeffs = j.at("coeffs");
    if (!coeffs.is_array() || coeffs.size() != order + 1) {
        throw std::invalid_argument("series: coeffs must hold order+1 entries");
    }
    std::vector<T> c;
    c.reserve(coeffs.size());
    for (const auto& v : coeffs) {
        c.push_back(coeff_from_json<T>(v));
    }
    return Series<T>(std::move(c));
}

template json to_json(const Series<Rational>&);
template json to_json(const Series<double>&);
template json to_json(const Series<GaussianRational>&);
template json to_json(const Series<std::complex<double>>&);
template Series<Rational> series_from_json(const json&);
template Series<double> series_from_json(const json&);
template Series<GaussianRational> series_from_json(const json&);
template Series<std::complex<double>> series_from_json(const json&);

} // namespace freewitt
