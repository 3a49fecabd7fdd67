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

#include <functional>

#include "freewitt/eval.hpp"
#include "freewitt/witt.hpp"
#include "support.hpp"

using namespace freewitt;
using testing_support::q;

namespace {

using K = FreeCumulants<Rational>;

ExprPtr num(const Rational& v)
{
    return std::make_shared<const Expr>(Expr{NumberLit{v}, {}});
}

ExprPtr call(std::string op, std::vector<ExprPtr> args, std::vector<std::pair<std::string, ExprPtr>> kwargs = {})
{
    return std::make_shared<const Expr>(Expr{Call{std::move(op), std::move(args), std::move(kwargs)}, {}});
}

// Random well-typed expressions, built from the leaves up by target kind.
class Generator
{
public:
    explicit Generator(std::uint64_t seed) : m_rng(seed) {}

    ExprPtr free(int depth)
    {
        const long pick = m_rng.integer(0, depth > 0 ? 13 : 4);
        switch (pick) {
        case 0: return call("dirac", {any()});
        case 1: return call("semicircle", {any(), positive()});
        case 2: return call("fpoisson", {positive(), any()});
        case 3: return call("teich", {any()});
        case 4: return lk();
        case 5: return call("boxplus", {free(depth - 1), free(depth - 1)});
        case 6: return call("boxdot", {free(depth - 1), free(depth - 1)});
        case 7: return call("frobenius", {num(m_rng.integer(0, 3)), free(depth - 1)});
        case 8: return call("scale", {positive(), free(depth - 1)});
        case 9: return call("shift", {any(), free(depth - 1)});
        case 10: return call("plusq", {weight(), free(depth - 1), free(depth - 1)});
        case 11: return call("plusab", {positive(), positive(), free(depth - 1), free(depth - 1)});
        case 12: return call("bp", {classical(depth - 1)});
        default: return call("decalage", {free(depth - 1)});
        }
    }

    ExprPtr classical(int depth)
    {
        switch (m_rng.integer(0, depth > 0 ? 5 : 2)) {
        case 0: return call("normal", {any(), positive()});
        case 1: return call("cpoisson", {positive()});
        case 2: return call("dirac", {any()});
        case 3: return call("star", {classical(depth - 1), classical(depth - 1)});
        case 4: return call("cconv", {classical(depth - 1), classical(depth - 1)});
        default: return call("bp_inv", {free(depth - 1)});
        }
    }

    ExprPtr moment(int depth)
    {
        switch (m_rng.integer(0, depth > 0 ? 3 : 1)) {
        case 0: return free(depth);
        case 1: return classical(depth);
        case 2: return call("boxtimes", {moment(depth - 1), moment(depth - 1)});
        default: return call("mix", {weight(), moment(depth - 1), moment(depth - 1)});
        }
    }

    ExprPtr top(int depth)
    {
        switch (m_rng.integer(0, 5)) {
        case 0: return classical(depth);
        case 1: return moment(depth);
        case 2: return call("exp_circle", {free(depth - 1)});
        case 3: return call("log_mult", {moment(depth - 1)});
        default: return free(depth);
        }
    }

private:
    ExprPtr any() { return num(m_rng.rational(9, 4)); }
    ExprPtr positive() { return num(m_rng.positive_rational(9, 4)); }
    ExprPtr weight() { return num(m_rng.unit_interval(6)); }

    ExprPtr lk()
    {
        AtomListLit atoms;
        const long n = m_rng.integer(0, 3);
        for (long i = 0; i < n; ++i) {
            atoms.atoms.emplace_back(m_rng.rational(3, 2) + i * 10, m_rng.positive_rational(3, 2));
        }
        std::vector<std::pair<std::string, ExprPtr>> kw;
        if (m_rng.integer(0, 1) == 1) {
            kw.emplace_back("gamma", any());
        }
        kw.emplace_back(m_rng.integer(0, 1) ? "rho" : "sigma", std::make_shared<const Expr>(Expr{atoms, {}}));
        return call("lk", {}, kw);
    }

    RandomSource m_rng;
};

template <class Error>
Error catch_error(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e;
    }
    FAIL("expected an exception");
    throw std::logic_error("unreachable");
}

Value<Rational> eval_exact(const std::string& text, std::size_t order = 6)
{
    EvalOptions o;
    o.order = order;
    return evaluate<Rational>(*parse(text), o);
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("parse examples")
    {
        ExprPtr e = parse("boxdot(semicircle(1,2), semicircle(2,2))");
        const auto& c = std::get<Call>(e->node);
        CHECK(c.op == "boxdot");
        CHECK(c.args.size() == 2);
        CHECK(print(*e) == "boxdot(semicircle(1, 2), semicircle(2, 2))");
        CHECK(type_check(*e) == ExprKind::free);

        auto err = catch_error<TypeError>([] { parse("star(fpoisson(1, 1), fpoisson(1, 1))"); });
        CHECK(err.path == "star[0]/fpoisson");
        CHECK(std::string(err.what()).find("classical") != std::string::npos);

        ExprPtr lk = parse("lk(gamma=1, rho=[(1/2,1/4)])");
        CHECK(print(*lk) == "lk(gamma=1, rho=[(1/2, 1/4)])");
        CHECK(same_tree(*parse(print(*lk)), *lk));
        CHECK(print(*parse(print(*lk))) == print(*lk));
    }

    TEST_CASE("numbers and whitespace")
    {
        CHECK(print(*parse("  dirac( 0.25 )\n")) == "dirac(1/4)");
        CHECK(print(*parse("dirac(-3/6)")) == "dirac(-1/2)");
        CHECK(print(*parse("dirac(1e-2)")) == "dirac(1/100)");
        CHECK(print(*parse("dirac(.5)")) == "dirac(1/2)");
    }

    TEST_CASE("round trip on random well-typed trees")
    {
        Generator gen(71);
        for (int rep = 0; rep < 200; ++rep) {
            ExprPtr e = gen.top(static_cast<int>(rep % 4));
            const std::string text = print(*e);
            CAPTURE(text);
            ExprPtr back;
            REQUIRE_NOTHROW(back = parse(text));
            CHECK(same_tree(*back, *e));
            CHECK(print(*back) == text);
        }
    }

    TEST_CASE("syntax errors carry positions and expected tokens")
    {
        auto a = catch_error<ParseError>([] { parse_syntax("boxplus(dirac(1), )"); });
        CHECK(a.pos.line == 1);
        CHECK(a.pos.column == 19);
        CHECK(a.expected == std::set<std::string>{"identifier", "number"});
        CHECK(std::string(a.what()).starts_with("1:19: syntax error"));

        auto b = catch_error<ParseError>([] { parse_syntax("boxplus(dirac(1) dirac(2))"); });
        CHECK(b.pos.column == 18);
        CHECK(b.expected == std::set<std::string>{"')'", "','"});

        auto c = catch_error<ParseError>([] { parse_syntax("boxplus(\n  dirac(1),"); });
        CHECK(c.pos.line == 2);
        CHECK(c.found == "end of input");

        CHECK_THROWS_AS(parse_syntax("dirac(1/0)"), ParseError);
        CHECK_THROWS_AS(parse_syntax("dirac(1) extra"), ParseError);
        CHECK_THROWS_AS(parse_syntax("dirac(\xce\xb1)"), ParseError);
        CHECK_THROWS_AS(parse_syntax("lk(rho=[(1,1)], 2)"), ParseError);
        CHECK_THROWS_AS(parse_syntax(std::string(500, '(')), ParseError);
    }

    TEST_CASE("type errors")
    {
        auto a = catch_error<TypeError>([] { parse("boxplus(dirac(1), semicircle(1))"); });
        CHECK(a.path == "boxplus[1]/semicircle");
        CHECK(a.pos.column == 19);
        CHECK_THROWS_AS(parse("foo(1)"), TypeError);
        CHECK_THROWS_AS(parse("lk(rho=[(1,1)], gamma=1, gamma=2)"), TypeError);
        CHECK_THROWS_AS(parse("lk(gamma=1)"), TypeError);
        CHECK_THROWS_AS(parse("boxplus(normal(0,1), semicircle(0,2))"), TypeError);
        CHECK_THROWS_AS(parse("exp_rplus(exp_circle(dirac(1)))"), TypeError);
        CHECK_NOTHROW(parse("boxtimes(semicircle(1,2), normal(1,1))"));
        CHECK(coercible(ExprKind::dual, ExprKind::classical));
        CHECK(coercible(ExprKind::free, ExprKind::moment));
        CHECK_FALSE(coercible(ExprKind::classical, ExprKind::free));
        CHECK(kind_label(ExprKind::dual) == "dirac");
    }

    TEST_CASE("evaluation examples")
    {
        CHECK(std::get<K>(eval_exact("boxplus(dirac(1),dirac(2))", 4)) == K{3, 0, 0, 0});
        K f = std::get<K>(eval_exact("frobenius(2, teich(3))", 4));
        CHECK(f == K{9, 81, 729, 6561});
        CHECK(std::get<K>(eval_exact("bp(cpoisson(2))", 4)) == K{2, 2, 2, 2});
        CHECK(std::get<K>(eval_exact("decalage(fpoisson(2, 1/2))", 8)) == family_to_free_cumulants(make_free_poisson(q(1, 2), q(1, 2)), 6));
        CHECK(std::get<K>(eval_exact("boxplus(decalage(teich(1)), teich(1))", 8)) == family_to_free_cumulants(make_free_poisson(2, 1), 6));
        CHECK(std::get<K>(eval_exact("lk(gamma=0, sigma=[(1, 1)])", 4)) == K{1, 2, 2, 2});
        auto m = std::get<MomentSeq<Rational>>(eval_exact("mix(1/2, dirac(-1), dirac(1))", 4));
        CHECK(m == MomentSeq<Rational>{0, 1, 0, 1});

        EvalOptions o;
        o.order = 5;
        auto fl = evaluate<double>(*parse("boxplus(semicircle(1,2), fpoisson(1, 1/2))"), o);
        auto ex = evaluate<Rational>(*parse("boxplus(semicircle(1,2), fpoisson(1, 1/2))"), o);
        for (std::size_t n = 1; n <= 5; ++n) {
            CHECK(std::get<FreeCumulants<double>>(fl)(n) == doctest::Approx(std::get<K>(ex)(n).get_d()));
        }
    }

    TEST_CASE("evaluation errors name the failing node")
    {
        auto a = catch_error<EvalError>([] { eval_exact("boxplus(dirac(1), decalage(mix(1/2, dirac(-1), dirac(1))))"); });
        CHECK(a.path == "boxplus[1]/decalage");
        auto b = catch_error<EvalError>([] { eval_exact("exp_rplus(fpoisson(1, -2))"); });
        CHECK(std::string(b.what()).find("evaluation error at exp_rplus") != std::string::npos);
        CHECK_THROWS_AS(eval_exact("dirac(1)", 0), std::exception);
        CHECK_THROWS_AS(eval_exact("dirac(1)", max_cli_order + 1), std::exception);
    }

    TEST_CASE("result records")
    {
        ExprPtr e = parse("semicircle(0, 2)");
        EvalOptions o;
        o.order = 4;
        auto rec = result_record(*e, evaluate<Rational>(*e, o));
        CHECK(rec["expr"] == "semicircle(0, 2)");
        CHECK(rec["backend"] == "exact");
        CHECK(rec["free_cumulants"] == nlohmann::json{"0", "1", "0", "0"});
        CHECK(rec["moments"] == nlohmann::json{"0", "1", "0", "2"});
        CHECK(rec["certificate"]["verdict"] == "certified-ID");
        const std::string tsv = record_to_tsv(rec);
        CHECK(tsv.find("free_cumulants") != std::string::npos);

        ExprPtr c = parse("exp_circle(semicircle(0, 2))");
        auto img = result_record(*c, evaluate<Rational>(*c, o));
        CHECK(img["map"] == "circle");
        CHECK(img["s_transform"]["coeffs"].size() == 4);
    }
}
