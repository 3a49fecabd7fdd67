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

#include "freewitt/scalar.hpp"

#include <cctype>
#include <stdexcept>

namespace freewitt {

Rational rational(long num, long den)
{
    if (den == 0) {
        throw std::invalid_argument("rational: zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole)
{
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
        digits.remove_prefix(1);
    }
    if (!all_digits(digits)) {
        throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
    }
    mpz_class z(std::string(digits), 10);
    return (!s.empty() && s.front() == '-') ? mpz_class(-z) : z;
}

mpz_class pow10(unsigned long e)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    if (text.empty()) {
        throw std::invalid_argument("malformed number: empty");
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_integer(text.substr(0, slash), text);
        mpz_class den = parse_integer(text.substr(slash + 1), text);
        if (den == 0) {
            throw std::invalid_argument("malformed number: zero denominator in '" + std::string(text) + "'");
        }
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        mpz_class ez = parse_integer(text.substr(e + 1), text);
        if (!ez.fits_slong_p() || abs(ez) > 4096) {
            throw std::invalid_argument("exponent out of range in '" + std::string(text) + "'");
        }
        exponent = ez.get_si();
    }

    bool negative = !mantissa.empty() && mantissa.front() == '-';
    if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
        mantissa.remove_prefix(1);
    }
    std::string_view int_part = mantissa;
    std::string_view frac_part;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        int_part = mantissa.substr(0, dot);
        frac_part = mantissa.substr(dot + 1);
    }
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part))
        || (!frac_part.empty() && !all_digits(frac_part))) {
        throw std::invalid_argument("malformed number: '" + std::string(text) + "'");
    }
    std::string digits = std::string(int_part) + std::string(frac_part);
    mpz_class num(digits.empty() ? std::string("0") : digits, 10);
    exponent -= static_cast<long>(frac_part.size());
    Rational q(num);
    if (exponent > 0) {
        q *= pow10(static_cast<unsigned long>(exponent));
    } else if (exponent < 0) {
        q /= pow10(static_cast<unsigned long>(-exponent));
    }
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational approximate_rational(double x, long max_den)
{
    if (!std::isfinite(x)) {
        throw std::invalid_argument("approximate_rational: non-finite input");
    }
    // Convergents h/k of the continued fraction of x.
    long double value = x;
    mpz_class h_prev = 1, h = static_cast<long>(std::floor(value));
    mpz_class k_prev = 0, k = 1;
    long double frac = value - std::floor(value);
    for (int iter = 0; iter < 64 && frac > 1e-18L; ++iter) {
        value = 1.0L / frac;
        long a = static_cast<long>(std::floor(value));
        frac = value - std::floor(value);
        mpz_class h_next = a * h + h_prev;
        mpz_class k_next = a * k + k_prev;
        if (k_next > max_den) {
            break;
        }
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
    Rational q(h, k);
    q.canonicalize();
    return q;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o)
{
    Rational denom = o.re * o.re + o.im * o.im;
    if (sgn(denom) == 0) {
        throw std::domain_error("division by zero");
    }
    Rational r = (re * o.re + im * o.im) / denom;
    Rational i = (im * o.re - re * o.im) / denom;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

std::string_view backend_name(Backend b)
{
    switch (b) {
    case Backend::exact:
        return "exact";
    case Backend::real_float:
        return "real-float";
    case Backend::complex_float:
        return "complex-float";
    }
    return "unknown";
}

} // namespace freewitt
