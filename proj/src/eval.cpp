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

#include "freewitt/eval.hpp"

#include <iomanip>
#include <sstream>

#include "freewitt/witt.hpp"

namespace freewitt {

using nlohmann::json;

EvalError::EvalError(SourcePos p, std::string at, const std::string& message)
    : std::runtime_error(std::to_string(p.line) + ":" + std::to_string(p.column) + ": evaluation error at " + at
                         + ": " + message),
      pos(p), path(std::move(at))
{
}

namespace {

// Frobenius powers beyond this only grow the rationals without adding anything.
constexpr unsigned max_frobenius_power = 64;

std::string node_name(const Expr& e)
{
    if (const auto* c = std::get_if<Call>(&e.node)) {
        return c->op;
    }
    return "literal";
}

template <RealScalar T>
class Evaluator
{
public:
    using F = FreeCumulants<T>;
    using C = ClassicalCumulants<T>;
    using M = MomentSeq<T>;

    explicit Evaluator(const EvalOptions& opts) : m_opts(opts) {}

    Value<T> run(const Expr& e) { return eval(e, node_name(e)); }

    F as_free(const Expr& e, const std::string& path)
    {
        if (auto d = dirac_point(e)) {
            return from_family<F>(make_dirac(*d));
        }
        Value<T> v = eval(e, path);
        if (auto* f = std::get_if<F>(&v)) {
            return *f;
        }
        if (auto* m = std::get_if<M>(&v)) {
            return free_cumulants_from_moments(*m);
        }
        throw EvalError(e.pos, path, "expected a free-coordinate measure");
    }

private:
    template <class Seq>
    Seq from_family(const FamilyMeasure& f)
    {
        if constexpr (std::same_as<Seq, F>) {
            return family_to_free_cumulants<T>(f, m_opts.order);
        } else {
            return family_to_classical_cumulants<T>(f, m_opts.order);
        }
    }

    static std::optional<Rational> dirac_point(const Expr& e)
    {
        const auto* c = std::get_if<Call>(&e.node);
        if (!c || c->op != "dirac") {
            return std::nullopt;
        }
        return std::get<NumberLit>(c->args.at(0)->node).value;
    }

    static const Rational& scalar(const Call& c, std::size_t i) { return std::get<NumberLit>(c.args.at(i)->node).value; }

    static std::string child(const std::string& path, std::size_t i, const Call& c)
    {
        return path + "[" + std::to_string(i) + "]/" + node_name(*c.args.at(i));
    }

    C as_classical(const Expr& e, const std::string& path)
    {
        if (auto d = dirac_point(e)) {
            return from_family<C>(make_dirac(*d));
        }
        Value<T> v = eval(e, path);
        if (auto* c = std::get_if<C>(&v)) {
            return *c;
        }
        throw EvalError(e.pos, path, "expected a classical-coordinate measure");
    }

    M as_moments(const Expr& e, const std::string& path)
    {
        if (auto d = dirac_point(e)) {
            return moments_from_free_cumulants(from_family<F>(make_dirac(*d)));
        }
        Value<T> v = eval(e, path);
        if (auto* m = std::get_if<M>(&v)) {
            return *m;
        }
        if (auto* f = std::get_if<F>(&v)) {
            return moments_from_free_cumulants(*f);
        }
        if (auto* c = std::get_if<C>(&v)) {
            return moments_from_classical_cumulants(*c);
        }
        throw EvalError(e.pos, path, "expected a measure");
    }

    template <class Seq>
    static std::pair<Seq, Seq> common_order(Seq a, Seq b)
    {
        const std::size_t n = std::min(a.order(), b.order());
        return {a.truncated(n), b.truncated(n)};
    }

    static LevyPair<Rational> lk_pair(const Call& c)
    {
        Rational gamma(0);
        LevyKernel kernel = LevyKernel::rho;
        std::vector<Atom<Rational>> atoms;
        for (const auto& [key, value] : c.kwargs) {
            if (key == "gamma") {
                gamma = std::get<NumberLit>(value->node).value;
            } else {
                kernel = key == "sigma" ? LevyKernel::sigma : LevyKernel::rho;
                for (const auto& [x, w] : std::get<AtomListLit>(value->node).atoms) {
                    atoms.push_back({x, w});
                }
            }
        }
        LevyPair<Rational> p(gamma, std::move(atoms), kernel);
        return kernel == LevyKernel::sigma ? sigma_to_rho(p) : p;
    }

    /// Exact evaluation of a subtree for certification on the float backend.
    FreeCumulants<Rational> exact_shadow(const Expr& e, const std::string& path)
    {
        return Evaluator<Rational>(m_opts).as_free(e, path);
    }

    Value<T> eval(const Expr& e, const std::string& path)
    {
        try {
            return eval_call(e, std::get<Call>(e.node), path);
        } catch (const EvalError&) {
            throw;
        } catch (const std::exception& ex) {
            throw EvalError(e.pos, path, ex.what());
        }
    }

    Value<T> eval_call(const Expr& e, const Call& c, const std::string& path)
    {
        const std::string& op = c.op;
        auto arg = [&](std::size_t i) -> const Expr& { return *c.args.at(i); };

        if (op == "dirac") {
            return from_family<F>(make_dirac(scalar(c, 0)));
        }
        if (op == "semicircle") {
            return from_family<F>(make_semicircle(scalar(c, 0), scalar(c, 1)));
        }
        if (op == "fpoisson") {
            return from_family<F>(make_free_poisson(scalar(c, 0), scalar(c, 1)));
        }
        if (op == "normal") {
            return from_family<C>(make_normal(scalar(c, 0), scalar(c, 1)));
        }
        if (op == "cpoisson") {
            return from_family<C>(make_classical_poisson(scalar(c, 0)));
        }
        if (op == "lk") {
            return levy_pair_to_free_cumulants(convert_pair<T>(lk_pair(c)), m_opts.order);
        }
        if (op == "teich") {
            return teichmueller(from_rational<T>(scalar(c, 0)), m_opts.order);
        }
        if (op == "decalage") {
            if constexpr (std::same_as<T, Rational>) {
                return decalage(as_free(arg(0), child(path, 0, c)));
            } else {
                decalage(exact_shadow(arg(0), child(path, 0, c)));
                F k = as_free(arg(0), child(path, 0, c));
                return F(std::vector<T>(k.values().begin() + 2, k.values().end()));
            }
        }
        if (op == "frobenius") {
            const Rational& n = scalar(c, 0);
            if (n.get_den() != 1 || sgn(n) < 0 || n > max_frobenius_power) {
                throw std::invalid_argument("frobenius: power must be an integer in [0, "
                                            + std::to_string(max_frobenius_power) + "]");
            }
            return frobenius(static_cast<unsigned>(n.get_num().get_ui()), as_free(arg(1), child(path, 1, c)));
        }
        if (op == "scale") {
            return scale_action(from_rational<T>(scalar(c, 0)), as_free(arg(1), child(path, 1, c)));
        }
        if (op == "shift") {
            return shift_action(from_rational<T>(scalar(c, 0)), as_free(arg(1), child(path, 1, c)));
        }
        if (op == "exp_rplus") {
            if constexpr (std::same_as<T, Rational>) {
                return ExpImage<T>{"rplus", exp_map_rplus(as_free(arg(0), child(path, 0, c)), m_opts.germ)};
            } else {
                exp_map_rplus(exact_shadow(arg(0), child(path, 0, c)), m_opts.germ);
                return ExpImage<T>{"rplus", exp_map_rplus_unchecked(as_free(arg(0), child(path, 0, c)))};
            }
        }
        if (op == "exp_circle") {
            F k = as_free(arg(0), child(path, 0, c));
            return ExpImage<T>{"circle", exp_map_circle(k)};
        }
        if (op == "log_mult") {
            return log_map(as_moments(arg(0), child(path, 0, c)));
        }
        if (op == "bp") {
            return bp_bijection(as_classical(arg(0), child(path, 0, c)));
        }
        if (op == "bp_inv") {
            return bp_inverse(as_free(arg(0), child(path, 0, c)));
        }
        if (op == "boxplus" || op == "boxdot") {
            auto [a, b] = common_order(as_free(arg(0), child(path, 0, c)), as_free(arg(1), child(path, 1, c)));
            return op == "boxplus" ? boxplus(a, b) : boxdot(a, b);
        }
        if (op == "boxtimes") {
            auto [a, b] = common_order(as_moments(arg(0), child(path, 0, c)), as_moments(arg(1), child(path, 1, c)));
            return boxtimes(a, b);
        }
        if (op == "star" || op == "cconv") {
            auto [a, b] =
                common_order(as_classical(arg(0), child(path, 0, c)), as_classical(arg(1), child(path, 1, c)));
            return op == "star" ? star(a, b) : classical_convolve(a, b);
        }
        if (op == "mix") {
            auto [a, b] = common_order(as_moments(arg(1), child(path, 1, c)), as_moments(arg(2), child(path, 2, c)));
            return mix_moments(from_rational<T>(scalar(c, 0)), a, b);
        }
        if (op == "plusq") {
            auto [a, b] = common_order(as_free(arg(1), child(path, 1, c)), as_free(arg(2), child(path, 2, c)));
            return plus_q(from_rational<T>(scalar(c, 0)), a, b);
        }
        if (op == "plusab") {
            auto [a, b] = common_order(as_free(arg(2), child(path, 2, c)), as_free(arg(3), child(path, 3, c)));
            return plus_alpha_beta(from_rational<T>(scalar(c, 0)), from_rational<T>(scalar(c, 1)), a, b);
        }
        throw EvalError(e.pos, path, "unknown operation '" + op + "'");
    }

    EvalOptions m_opts;
};

void check_order(const EvalOptions& opts)
{
    if (opts.order < 1 || opts.order > max_cli_order) {
        throw std::invalid_argument("order must lie in [1, " + std::to_string(max_cli_order) + "]");
    }
}

template <class T>
json scalar_json(const T& x)
{
    if constexpr (std::same_as<T, Rational>) {
        return rational_to_json(x);
    } else if constexpr (std::same_as<T, GaussianRational>) {
        return json::array({rational_to_json(x.re), rational_to_json(x.im)});
    } else if constexpr (std::same_as<T, std::complex<double>>) {
        return json::array({x.real(), x.imag()});
    } else {
        return x;
    }
}

template <class Seq>
json seq_json(const Seq& s)
{
    json out = json::array();
    for (const auto& x : s.values()) {
        out.push_back(scalar_json(x));
    }
    return out;
}

template <class Cx>
json exp_series_json(const ExpSeries<Cx>& s)
{
    json approx = json::array();
    const auto materialized = evaluate(s);
    for (const auto& x : materialized.coeffs()) {
        approx.push_back(scalar_json(x));
    }
    return {{"exponent", scalar_json(s.exponent)}, {"unit", to_json(s.unit)}, {"coeffs", approx}};
}

} // namespace

template <RealScalar T>
Value<T> evaluate(const Expr& e, const EvalOptions& opts)
{
    check_order(opts);
    type_check(e);
    return Evaluator<T>(opts).run(e);
}

template Value<Rational> evaluate<Rational>(const Expr&, const EvalOptions&);
template Value<double> evaluate<double>(const Expr&, const EvalOptions&);

FreeCumulants<Rational> evaluate_free(const Expr& e, const EvalOptions& opts)
{
    check_order(opts);
    ExprKind k = type_check(e);
    if (k == ExprKind::exp_image) {
        throw EvalError(e.pos, node_name(e), "an EXP image is not a measure on the real line");
    }
    if (k == ExprKind::classical) {
        Value<Rational> v = Evaluator<Rational>(opts).run(e);
        return bp_bijection(std::get<ClassicalCumulants<Rational>>(v));
    }
    return Evaluator<Rational>(opts).as_free(e, node_name(e));
}

template <RealScalar T>
json result_record(const Expr& e, const Value<T>& v)
{
    json r{{"expr", print(e)}, {"backend", std::string(backend_name(scalar_traits<T>::backend))}};
    if (const auto* f = std::get_if<FreeCumulants<T>>(&v)) {
        r["kind"] = "free";
        r["order"] = f->order();
        r["free_cumulants"] = seq_json(*f);
        r["moments"] = seq_json(moments_from_free_cumulants(*f));
        if constexpr (std::same_as<T, Rational>) {
            if (f->order() >= 3) {
                IdCertificate cert = is_conditionally_pd(*f);
                r["certificate"] = to_json(cert);
                if (cert.exact_pair) {
                    r["levy"] = levy_pair_to_json(*cert.exact_pair);
                } else if (cert.numeric_pair) {
                    r["levy"] = levy_pair_to_json(*cert.numeric_pair);
                }
            }
        }
    } else if (const auto* c = std::get_if<ClassicalCumulants<T>>(&v)) {
        r["kind"] = "classical";
        r["order"] = c->order();
        r["classical_cumulants"] = seq_json(*c);
        r["moments"] = seq_json(moments_from_classical_cumulants(*c));
    } else if (const auto* m = std::get_if<MomentSeq<T>>(&v)) {
        r["kind"] = "moment";
        r["order"] = m->order();
        r["moments"] = seq_json(*m);
        r["free_cumulants"] = seq_json(free_cumulants_from_moments(*m));
    } else {
        const auto& img = std::get<ExpImage<T>>(v);
        r["kind"] = "exp-image";
        r["map"] = img.map;
        std::visit(
            [&](const auto& s) {
                r["order"] = s.unit.order();
                r["s_transform"] = exp_series_json(s);
            },
            img.series);
    }
    return r;
}

template json result_record<Rational>(const Expr&, const Value<Rational>&);
template json result_record<double>(const Expr&, const Value<double>&);

namespace {

std::string cell(const json& j)
{
    if (j.is_string()) {
        return j.get<std::string>();
    }
    if (j.is_array() && j.size() == 2) {
        return cell(j[0]) + (j[1].is_string() || j[1].get<double>() >= 0 ? "+" : "") + cell(j[1]) + "i";
    }
    if (j.is_number_float()) {
        std::ostringstream os;
        os << std::setprecision(17) << j.get<double>();
        return os.str();
    }
    return j.dump();
}

} // namespace

std::string record_to_tsv(const json& record)
{
    std::vector<std::string> headers{"n"};
    std::vector<const json*> columns;
    for (const char* key : {"free_cumulants", "classical_cumulants", "moments"}) {
        if (record.contains(key)) {
            headers.emplace_back(key);
            columns.push_back(&record[key]);
        }
    }
    std::size_t first_index = 1;
    if (record.contains("s_transform")) {
        headers.emplace_back("s_transform");
        columns.push_back(&record["s_transform"]["coeffs"]);
        first_index = 0;
    }
    std::vector<std::vector<std::string>> rows{headers};
    std::size_t length = 0;
    for (const auto* c : columns) {
        length = std::max(length, c->size());
    }
    for (std::size_t i = 0; i < length; ++i) {
        std::vector<std::string> row{std::to_string(i + first_index)};
        for (const auto* c : columns) {
            row.push_back(i < c->size() ? cell((*c)[i]) : "");
        }
        rows.push_back(std::move(row));
    }
    std::vector<std::size_t> width(headers.size(), 0);
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            width[k] = std::max(width[k], row[k].size());
        }
    }
    std::ostringstream os;
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            os << row[k];
            if (k + 1 < row.size()) {
                os << std::string(width[k] - row[k].size(), ' ') << '\t';
            }
        }
        os << '\n';
    }
    return os.str();
}

} // namespace freewitt
