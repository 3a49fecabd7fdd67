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

#include "freewitt/infdiv.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include <Eigen/Dense>

namespace freewitt {

using nlohmann::json;

namespace {

// Solves a x = b exactly for nonsingular a.
std::vector<Rational> solve_exact(RationalMatrix a, std::vector<Rational> b)
{
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && sgn(a[piv][col]) == 0) {
            ++piv;
        }
        if (piv == n) {
            throw std::domain_error("solve_exact: singular matrix");
        }
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (sgn(a[r][col]) == 0) {
                continue;
            }
            Rational f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational acc = b[i];
        for (std::size_t c = i + 1; c < n; ++c) {
            acc -= a[i][c] * x[c];
        }
        x[i] = acc / a[i][i];
    }
    return x;
}

using Poly = std::vector<Rational>; // coefficients, lowest degree first

Rational eval_poly(const Poly& p, const Rational& x)
{
    Rational acc(0);
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = acc * x + p[i];
    }
    return acc;
}

double eval_poly(const Poly& p, double x, double* magnitude)
{
    double acc = 0.0;
    double mag = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = acc * x + p[i].get_d();
        mag = mag * std::abs(x) + std::abs(p[i].get_d());
    }
    if (magnitude) {
        *magnitude = mag;
    }
    return acc;
}

// Moment functional <f, g> = sum f_a g_b m_{a+b}.
Rational inner(const Poly& f, const Poly& g, const std::vector<Rational>& m)
{
    Rational acc(0);
    for (std::size_t a = 0; a < f.size(); ++a) {
        if (sgn(f[a]) == 0) {
            continue;
        }
        for (std::size_t b = 0; b < g.size(); ++b) {
            acc += f[a] * g[b] * m.at(a + b);
        }
    }
    return acc;
}

Poly times_x(const Poly& p)
{
    Poly out(p.size() + 1, Rational(0));
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i + 1] = p[i];
    }
    return out;
}

template <class T>
std::vector<T> atomic_moments(const std::vector<Atom<T>>& atoms, std::size_t count)
{
    std::vector<T> out(count, T(0));
    for (const auto& a : atoms) {
        T p = a.w;
        for (std::size_t n = 0; n < count; ++n) {
            out[n] += p;
            p *= a.x;
        }
    }
    return out;
}

std::optional<LevyPair<Rational>> exact_nodes(const Poly& orth, const std::vector<double>& nodes,
                                              const std::vector<Rational>& m)
{
    const std::size_t r = nodes.size();
    std::vector<Rational> xs;
    for (double node : nodes) {
        std::optional<Rational> hit;
        for (long max_den : {1000L, 1000000L}) {
            Rational cand = approximate_rational(node, max_den);
            if (sgn(eval_poly(orth, cand)) == 0) {
                hit = cand;
                break;
            }
        }
        if (!hit) {
            return std::nullopt;
        }
        for (const auto& x : xs) {
            if (x == *hit) {
                return std::nullopt;
            }
        }
        xs.push_back(*hit);
    }
    RationalMatrix vander(r, std::vector<Rational>(r));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            Rational p(1);
            for (std::size_t k = 0; k < i; ++k) {
                p *= xs[j];
            }
            vander[i][j] = p;
        }
    }
    std::vector<Rational> rhs(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(r));
    std::vector<Rational> w = solve_exact(vander, rhs);
    std::vector<Atom<Rational>> atoms;
    for (std::size_t j = 0; j < r; ++j) {
        if (sgn(w[j]) <= 0) {
            return std::nullopt;
        }
        atoms.push_back({xs[j], w[j]});
    }
    if (atomic_moments(atoms, m.size()) != m) {
        return std::nullopt;
    }
    return LevyPair<Rational>(Rational(0), std::move(atoms));
}

} // namespace

RationalMatrix shifted_hankel(const FreeCumulants<Rational>& k)
{
    if (k.order() < 3) {
        throw std::invalid_argument("shifted Hankel matrix needs order >= 3");
    }
    const std::size_t d = (k.order() - 2) / 2 + 1;
    RationalMatrix h(d, std::vector<Rational>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            h[i][j] = k(i + j + 2);
        }
    }
    return h;
}

Rational quadratic_form(const RationalMatrix& h, const std::vector<Rational>& v)
{
    Rational acc(0);
    for (std::size_t i = 0; i < h.size(); ++i) {
        for (std::size_t j = 0; j < h.size(); ++j) {
            acc += v[i] * h[i][j] * v[j];
        }
    }
    return acc;
}

PsdResult decide_psd(const RationalMatrix& h)
{
    const std::size_t d = h.size();
    RationalMatrix a = h;
    std::vector<std::size_t> pivots;

    // Lifts u (supported on indices >= i of the current Schur complement) to a
    // vector in original coordinates by minimizing over the pivot coordinates.
    auto lift = [&](const std::map<std::size_t, Rational>& u) {
        std::vector<Rational> v(d, Rational(0));
        for (const auto& [idx, val] : u) {
            v[idx] = val;
        }
        if (!pivots.empty()) {
            const std::size_t p = pivots.size();
            RationalMatrix hpp(p, std::vector<Rational>(p));
            std::vector<Rational> rhs(p, Rational(0));
            for (std::size_t s = 0; s < p; ++s) {
                for (std::size_t t = 0; t < p; ++t) {
                    hpp[s][t] = h[pivots[s]][pivots[t]];
                }
                for (const auto& [idx, val] : u) {
                    rhs[s] += h[pivots[s]][idx] * val;
                }
            }
            std::vector<Rational> x = solve_exact(hpp, rhs);
            for (std::size_t s = 0; s < p; ++s) {
                v[pivots[s]] = -x[s];
            }
        }
        PsdResult out;
        out.psd = false;
        out.rank = pivots.size();
        out.witness_value = quadratic_form(h, v);
        out.witness = std::move(v);
        if (sgn(out.witness_value) >= 0) {
            throw std::logic_error("decide_psd: witness failed to certify indefiniteness");
        }
        return out;
    };

    for (std::size_t i = 0; i < d; ++i) {
        const int s = sgn(a[i][i]);
        if (s < 0) {
            return lift({{i, Rational(1)}});
        }
        if (s == 0) {
            for (std::size_t j = i + 1; j < d; ++j) {
                if (sgn(a[i][j]) != 0) {
                    // [[0, b], [b, c]] is indefinite: take t e_i + e_j with 2tb + c < 0.
                    const Rational& b = a[i][j];
                    const Rational& c = a[j][j];
                    Rational t = -(abs(c) + 1) / (2 * b);
                    return lift({{i, t}, {j, Rational(1)}});
                }
            }
            continue;
        }
        pivots.push_back(i);
        for (std::size_t r = i + 1; r < d; ++r) {
            if (sgn(a[r][i]) == 0) {
                continue;
            }
            Rational f = a[r][i] / a[i][i];
            for (std::size_t c = i; c < d; ++c) {
                a[r][c] -= f * a[i][c];
            }
        }
    }
    PsdResult out;
    out.psd = true;
    out.rank = pivots.size();
    return out;
}

AtomicRecovery recover_atomic_measure(const std::vector<Rational>& m, std::size_t rank)
{
    AtomicRecovery out;
    if (rank == 0) {
        for (const auto& x : m) {
            if (sgn(x) != 0) {
                out.reason = "zero Hankel rank but a nonzero moment";
                return out;
            }
        }
        out.identified = true;
        out.exact = LevyPair<Rational>(Rational(0), {});
        out.numeric = LevyPair<double>(0.0, {});
        return out;
    }
    if (2 * rank > m.size() - 1) {
        out.reason = "not enough moments to resolve " + std::to_string(rank) + " atoms";
        return out;
    }

    // Monic orthogonal polynomials via the three-term recurrence.
    std::vector<Rational> alpha, beta;
    Poly prev;
    Poly cur{Rational(1)};
    Rational cur_norm = m[0];
    for (std::size_t j = 0; j < rank; ++j) {
        if (sgn(cur_norm) <= 0) {
            out.reason = "moment functional degenerates before the Hankel rank";
            return out;
        }
        Rational a = inner(times_x(cur), cur, m) / cur_norm;
        Poly next = times_x(cur);
        for (std::size_t i = 0; i < cur.size(); ++i) {
            next[i] -= a * cur[i];
        }
        if (j > 0) {
            for (std::size_t i = 0; i < prev.size(); ++i) {
                next[i] -= beta.back() * prev[i];
            }
        }
        Rational next_norm = inner(next, next, m);
        alpha.push_back(a);
        beta.push_back(next_norm / cur_norm);
        prev = std::move(cur);
        cur = std::move(next);
        cur_norm = std::move(next_norm);
    }
    if (sgn(cur_norm) != 0) {
        out.reason = "orthogonal polynomial of the Hankel rank has nonzero norm";
        return out;
    }

    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rank), static_cast<Eigen::Index>(rank));
    for (std::size_t j = 0; j < rank; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        jacobi(jj, jj) = alpha[j].get_d();
        if (j + 1 < rank) {
            double off = std::sqrt(beta[j].get_d());
            jacobi(jj, jj + 1) = off;
            jacobi(jj + 1, jj) = off;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
    std::vector<double> nodes;
    std::vector<Atom<double>> numeric_atoms;
    const double m0 = m[0].get_d();
    for (std::size_t j = 0; j < rank; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        double x = eig.eigenvalues()(jj);
        double v0 = eig.eigenvectors()(0, jj);
        double mag = 0.0;
        double res = eval_poly(cur, x, &mag);
        if (std::abs(res) > 1e-9 * std::max(mag, 1.0)) {
            out.reason = "quadrature node fails the residual check";
            return out;
        }
        nodes.push_back(x);
        numeric_atoms.push_back({x, m0 * v0 * v0});
    }

    out.exact = exact_nodes(cur, nodes, m);
    if (out.exact) {
        std::vector<Atom<double>> atoms;
        for (const auto& a : out.exact->atoms()) {
            atoms.push_back({a.x.get_d(), a.w.get_d()});
        }
        out.numeric = LevyPair<double>(0.0, std::move(atoms));
        out.identified = true;
        return out;
    }

    for (const auto& a : numeric_atoms) {
        if (!(a.w > 0.0)) {
            out.reason = "quadrature produced a nonpositive weight";
            return out;
        }
    }
    auto reproduced = atomic_moments(numeric_atoms, m.size());
    for (std::size_t n = 0; n < m.size(); ++n) {
        double target = m[n].get_d();
        if (std::abs(reproduced[n] - target) > 1e-8 * std::max(1.0, std::abs(target))) {
            out.reason = "recovered atoms do not reproduce moment " + std::to_string(n);
            return out;
        }
    }
    out.numeric = LevyPair<double>(0.0, std::move(numeric_atoms));
    out.identified = true;
    return out;
}

std::string_view verdict_name(IdVerdict v)
{
    switch (v) {
    case IdVerdict::certified:
        return "certified-ID";
    case IdVerdict::refuted:
        return "refuted";
    case IdVerdict::inconclusive:
        return "inconclusive";
    }
    return "unknown";
}

namespace {

std::vector<Rational> shifted_moments(const FreeCumulants<Rational>& k)
{
    std::vector<Rational> m;
    for (std::size_t n = 2; n <= k.order(); ++n) {
        m.push_back(k(n));
    }
    return m;
}

template <class T>
LevyPair<T> with_gamma(const LevyPair<T>& p, T gamma)
{
    return LevyPair<T>(std::move(gamma), p.atoms(), p.kernel());
}

} // namespace

bool IdCertificate::recheck(const FreeCumulants<Rational>& k) const
{
    switch (verdict) {
    case IdVerdict::refuted:
        return witness.size() == hankel_order && sgn(quadratic_form(shifted_hankel(k), witness)) < 0;
    case IdVerdict::certified:
        if (exact_pair) {
            return levy_pair_to_free_cumulants(*exact_pair, k.order()) == k;
        }
        if (numeric_pair) {
            auto approx = levy_pair_to_free_cumulants(*numeric_pair, k.order());
            for (std::size_t n = 1; n <= k.order(); ++n) {
                if (!close(approx(n), k(n).get_d(), 1e-8, 1e-8)) {
                    return false;
                }
            }
            return true;
        }
        return false;
    case IdVerdict::inconclusive:
        return true;
    }
    return false;
}

IdCertificate is_conditionally_pd(const FreeCumulants<Rational>& k)
{
    if (k.order() < 3) {
        throw std::invalid_argument("is_conditionally_pd: order must be at least 3");
    }
    IdCertificate cert;
    const RationalMatrix h = shifted_hankel(k);
    cert.hankel_order = h.size();
    PsdResult psd = decide_psd(h);
    cert.rank = psd.rank;
    if (!psd.psd) {
        cert.verdict = IdVerdict::refuted;
        cert.witness = std::move(psd.witness);
        cert.witness_value = std::move(psd.witness_value);
        return cert;
    }
    if (psd.rank == h.size()) {
        cert.verdict = IdVerdict::inconclusive;
        cert.note = "shifted Hankel matrix is positive definite; atom count not identifiable at this order";
        return cert;
    }
    AtomicRecovery rec = recover_atomic_measure(shifted_moments(k), psd.rank);
    if (!rec.identified) {
        cert.verdict = IdVerdict::inconclusive;
        cert.note = rec.reason;
        return cert;
    }
    cert.verdict = IdVerdict::certified;
    if (rec.exact) {
        cert.exact_pair = with_gamma(*rec.exact, k(1));
    }
    if (rec.numeric) {
        cert.numeric_pair = with_gamma(*rec.numeric, k(1).get_d());
    }
    return cert;
}

json to_json(const IdCertificate& c)
{
    json j{{"verdict", std::string(verdict_name(c.verdict))}, {"hankel_order", c.hankel_order}, {"rank", c.rank}};
    if (c.verdict == IdVerdict::refuted) {
        json w = json::array();
        for (const auto& x : c.witness) {
            w.push_back(rational_to_json(x));
        }
        j["witness"] = w;
        j["witness_value"] = rational_to_json(c.witness_value);
    }
    if (c.exact_pair) {
        j["pair"] = levy_pair_to_json(*c.exact_pair);
        j["pair_exact"] = true;
    } else if (c.numeric_pair) {
        j["pair"] = levy_pair_to_json(*c.numeric_pair);
        j["pair_exact"] = false;
    }
    if (!c.note.empty()) {
        j["note"] = c.note;
    }
    return j;
}

LevyRecovery cumulants_to_levy_pair(const FreeCumulants<Rational>& k)
{
    const RationalMatrix h = shifted_hankel(k);
    PsdResult psd = decide_psd(h);
    if (!psd.psd) {
        throw std::domain_error("cumulants_to_levy_pair: shifted Hankel matrix is not positive semidefinite");
    }
    LevyRecovery out;
    if (psd.rank == h.size()) {
        out.reason = "shifted Hankel matrix is positive definite; atom count not identifiable at this order";
        return out;
    }
    AtomicRecovery rec = recover_atomic_measure(shifted_moments(k), psd.rank);
    out.identified = rec.identified;
    out.reason = rec.reason;
    if (rec.exact) {
        out.exact = with_gamma(*rec.exact, k(1));
    }
    if (rec.numeric) {
        out.numeric = with_gamma(*rec.numeric, k(1).get_d());
    }
    return out;
}

DecalageResult decalage_well_defined(const FreeCumulants<Rational>& k)
{
    IdCertificate parent = is_conditionally_pd(k);
    if (parent.verdict != IdVerdict::certified) {
        throw std::domain_error("decalage: input is not certified freely infinitely divisible ("
                                + std::string(verdict_name(parent.verdict)) + ")");
    }
    std::vector<Rational> tail(k.values().begin() + 2, k.values().end());
    DecalageResult out{FreeCumulants<Rational>(std::move(tail)), {}};

    if (out.shifted.order() >= 3) {
        out.certificate = is_conditionally_pd(out.shifted);
        if (out.certificate.verdict == IdVerdict::certified) {
            return out;
        }
    }
    // The shifted law has pair (m_1(rho), x^2 rho), read off the parent pair.
    if (parent.exact_pair) {
        std::vector<Atom<Rational>> atoms;
        for (const auto& a : parent.exact_pair->atoms()) {
            if (sgn(a.x) != 0) {
                atoms.push_back({a.x, a.w * a.x * a.x});
            }
        }
        LevyPair<Rational> pair(parent.exact_pair->moment(1), std::move(atoms));
        if (levy_pair_to_free_cumulants(pair, out.shifted.order()) == out.shifted) {
            out.certificate = IdCertificate{};
            out.certificate.verdict = IdVerdict::certified;
            out.certificate.hankel_order = out.shifted.order() >= 3 ? shifted_hankel(out.shifted).size() : 0;
            out.certificate.rank = pair.atoms().size();
            out.certificate.exact_pair = pair;
            out.certificate.note = "pair derived from the certified input";
        }
    }
    return out;
}

std::optional<LevyPair<Rational>> free_sigma_projection(const FreeCumulants<Rational>& k)
{
    LevyRecovery rec = cumulants_to_levy_pair(k);
    if (!rec.exact) {
        return std::nullopt;
    }
    return rho_to_sigma(*rec.exact);
}

std::optional<LevyPair<Rational>> classical_sigma_projection(const ClassicalCumulants<Rational>& c)
{
    // The measure (1 + x^2) sigma has moments c_{n+2}; c_1 = gamma + m_1(sigma).
    if (c.order() < 3) {
        throw std::invalid_argument("classical_sigma_projection: order must be at least 3");
    }
    std::vector<Rational> m;
    for (std::size_t n = 2; n <= c.order(); ++n) {
        m.push_back(c(n));
    }
    const std::size_t d = (c.order() - 2) / 2 + 1;
    RationalMatrix h(d, std::vector<Rational>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            h[i][j] = m[i + j];
        }
    }
    PsdResult psd = decide_psd(h);
    if (!psd.psd || psd.rank == d) {
        return std::nullopt;
    }
    AtomicRecovery rec = recover_atomic_measure(m, psd.rank);
    if (!rec.exact) {
        return std::nullopt;
    }
    std::vector<Atom<Rational>> atoms;
    Rational first_moment(0);
    for (const auto& a : rec.exact->atoms()) {
        Rational w = a.w / (1 + a.x * a.x);
        first_moment += w * a.x;
        atoms.push_back({a.x, w});
    }
    return LevyPair<Rational>(Rational(c(1) - first_moment), std::move(atoms), LevyKernel::sigma);
}

LevyPair<Rational> combine_pairs(const Rational& alpha, const LevyPair<Rational>& p, const Rational& beta,
                                 const LevyPair<Rational>& q)
{
    if (sgn(alpha) < 0 || sgn(beta) < 0) {
        throw std::invalid_argument("combine_pairs: weights must be nonnegative");
    }
    if (p.kernel() != q.kernel()) {
        throw std::invalid_argument("combine_pairs: kernel mismatch");
    }
    std::map<Rational, Rational> mass;
    for (const auto& a : p.atoms()) {
        mass[a.x] += alpha * a.w;
    }
    for (const auto& a : q.atoms()) {
        mass[a.x] += beta * a.w;
    }
    std::vector<Atom<Rational>> atoms;
    for (const auto& [x, w] : mass) {
        if (sgn(w) > 0) {
            atoms.push_back({x, w});
        }
    }
    return LevyPair<Rational>(Rational(alpha * p.gamma() + beta * q.gamma()), std::move(atoms), p.kernel());
}

} // namespace freewitt
