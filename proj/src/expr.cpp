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

#include "freewitt/expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace freewitt {

namespace {

std::string format_parse_error(SourcePos pos, const std::set<std::string>& expected, const std::string& found)
{
    std::ostringstream os;
    os << pos.line << ':' << pos.column << ": syntax error: expected ";
    if (expected.size() == 1) {
        os << *expected.begin();
    } else {
        os << "one of ";
        bool first = true;
        for (const auto& e : expected) {
            os << (first ? "" : ", ") << e;
            first = false;
        }
    }
    os << ", found " << found;
    return os.str();
}

} // namespace

ParseError::ParseError(SourcePos p, std::set<std::string> exp, const std::string& f)
    : std::runtime_error(format_parse_error(p, exp, f)), pos(p), expected(std::move(exp)), found(f)
{
}

TypeError::TypeError(SourcePos p, std::string at, const std::string& message)
    : std::runtime_error(std::to_string(p.line) + ":" + std::to_string(p.column) + ": type error at " + at + ": "
                         + message),
      pos(p), path(std::move(at))
{
}

std::string_view kind_label(ExprKind k)
{
    switch (k) {
    case ExprKind::scalar:
        return "scalar";
    case ExprKind::free:
        return "free";
    case ExprKind::classical:
        return "classical";
    case ExprKind::moment:
        return "moment";
    case ExprKind::dual:
        return "dirac";
    case ExprKind::exp_image:
        return "exp-image";
    }
    return "unknown";
}

const std::vector<OpSignature>& op_table()
{
    using enum ExprKind;
    static const std::vector<OpSignature> table = {
        {"dirac", 1, {}, dual},
        {"semicircle", 2, {}, free},
        {"fpoisson", 2, {}, free},
        {"normal", 2, {}, classical},
        {"cpoisson", 1, {}, classical},
        {"lk", 0, {}, free},
        {"teich", 1, {}, free},
        {"decalage", 0, {free}, free},
        {"frobenius", 1, {free}, free},
        {"scale", 1, {free}, free},
        {"shift", 1, {free}, free},
        {"exp_rplus", 0, {free}, exp_image},
        {"exp_circle", 0, {free}, exp_image},
        {"log_mult", 0, {moment}, free},
        {"bp", 0, {classical}, free},
        {"bp_inv", 0, {free}, classical},
        {"boxplus", 0, {free, free}, free},
        {"boxtimes", 0, {moment, moment}, moment},
        {"boxdot", 0, {free, free}, free},
        {"star", 0, {classical, classical}, classical},
        {"cconv", 0, {classical, classical}, classical},
        {"mix", 1, {moment, moment}, moment},
        {"plusq", 1, {free, free}, free},
        {"plusab", 2, {free, free}, free},
    };
    return table;
}

const OpSignature* find_op(std::string_view name)
{
    for (const auto& s : op_table()) {
        if (s.name == name) {
            return &s;
        }
    }
    return nullptr;
}

bool coercible(ExprKind from, ExprKind to)
{
    using enum ExprKind;
    if (from == to) {
        return true;
    }
    if (from == dual) {
        return to == free || to == classical || to == moment;
    }
    return (from == free && to == moment) || (from == moment && to == free) || (from == classical && to == moment);
}

// --- printing ------------------------------------------------------------------

namespace {

void print_to(std::ostream& os, const Expr& e)
{
    if (const auto* n = std::get_if<NumberLit>(&e.node)) {
        os << to_string(n->value);
    } else if (const auto* l = std::get_if<AtomListLit>(&e.node)) {
        os << '[';
        for (std::size_t i = 0; i < l->atoms.size(); ++i) {
            os << (i ? ", " : "") << '(' << to_string(l->atoms[i].first) << ", " << to_string(l->atoms[i].second)
               << ')';
        }
        os << ']';
    } else {
        const auto& c = std::get<Call>(e.node);
        os << c.op << '(';
        bool first = true;
        for (const auto& a : c.args) {
            os << (first ? "" : ", ");
            print_to(os, *a);
            first = false;
        }
        for (const auto& [key, value] : c.kwargs) {
            os << (first ? "" : ", ") << key << '=';
            print_to(os, *value);
            first = false;
        }
        os << ')';
    }
}

} // namespace

std::string print(const Expr& e)
{
    std::ostringstream os;
    print_to(os, e);
    return os.str();
}

bool same_tree(const Expr& a, const Expr& b)
{
    if (a.node.index() != b.node.index()) {
        return false;
    }
    if (const auto* n = std::get_if<NumberLit>(&a.node)) {
        return n->value == std::get<NumberLit>(b.node).value;
    }
    if (const auto* l = std::get_if<AtomListLit>(&a.node)) {
        return l->atoms == std::get<AtomListLit>(b.node).atoms;
    }
    const auto& ca = std::get<Call>(a.node);
    const auto& cb = std::get<Call>(b.node);
    if (ca.op != cb.op || ca.args.size() != cb.args.size() || ca.kwargs.size() != cb.kwargs.size()) {
        return false;
    }
    for (std::size_t i = 0; i < ca.args.size(); ++i) {
        if (!same_tree(*ca.args[i], *cb.args[i])) {
            return false;
        }
    }
    for (std::size_t i = 0; i < ca.kwargs.size(); ++i) {
        if (ca.kwargs[i].first != cb.kwargs[i].first || !same_tree(*ca.kwargs[i].second, *cb.kwargs[i].second)) {
            return false;
        }
    }
    return true;
}

// --- lexing and parsing ---------------------------------------------------------

namespace {

enum class Tok { ident, number, lparen, rparen, lbracket, rbracket, comma, equals, end };

struct Token {
    Tok type;
    std::string text;
    SourcePos pos;
};

std::string describe(const Token& t)
{
    switch (t.type) {
    case Tok::end:
        return "end of input";
    case Tok::ident:
        return "identifier '" + t.text + "'";
    case Tok::number:
        return "number '" + t.text + "'";
    default:
        return "'" + t.text + "'";
    }
}

class Lexer
{
public:
    explicit Lexer(std::string_view text) : m_text(text) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            SourcePos start = m_pos;
            if (m_i >= m_text.size()) {
                out.push_back({Tok::end, "", start});
                return out;
            }
            char c = m_text[m_i];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string id;
                while (m_i < m_text.size()
                       && (std::isalnum(static_cast<unsigned char>(m_text[m_i])) || m_text[m_i] == '_')) {
                    id += advance();
                }
                out.push_back({Tok::ident, id, start});
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
                out.push_back({Tok::number, number(), start});
            } else {
                static const std::string punct = "()[],=";
                auto k = punct.find(c);
                if (k == std::string::npos) {
                    std::string shown(1, c);
                    if (static_cast<unsigned char>(c) >= 0x80) {
                        shown = "non-ASCII byte";
                    }
                    throw ParseError(start, {"identifier", "number", "'('", "')'", "'['", "']'", "','", "'='"},
                                     "'" + shown + "'");
                }
                advance();
                out.push_back({static_cast<Tok>(static_cast<int>(Tok::lparen) + static_cast<int>(k)),
                               std::string(1, c), start});
            }
        }
    }

private:
    char advance()
    {
        char c = m_text[m_i++];
        if (c == '\n') {
            ++m_pos.line;
            m_pos.column = 1;
        } else {
            ++m_pos.column;
        }
        return c;
    }

    bool peek_digit() const { return m_i < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_i])); }

    void skip_space()
    {
        while (m_i < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[m_i]))) {
            advance();
        }
    }

    void digits(std::string& out)
    {
        if (!peek_digit()) {
            throw ParseError(m_pos, {"digit"}, m_i < m_text.size() ? "'" + std::string(1, m_text[m_i]) + "'"
                                                                   : "end of input");
        }
        while (peek_digit()) {
            out += advance();
        }
    }

    // [+-]? (digits [. digits?] | . digits) ([eE] [+-]? digits)? (/ [+-]? digits)?
    std::string number()
    {
        std::string s;
        if (m_text[m_i] == '-' || m_text[m_i] == '+') {
            s += advance();
        }
        if (peek_digit()) {
            digits(s);
            if (m_i < m_text.size() && m_text[m_i] == '.') {
                s += advance();
                while (peek_digit()) {
                    s += advance();
                }
            }
        } else if (m_i < m_text.size() && m_text[m_i] == '.') {
            s += advance();
            digits(s);
        } else {
            digits(s);
        }
        if (m_i < m_text.size() && (m_text[m_i] == 'e' || m_text[m_i] == 'E')) {
            s += advance();
            if (m_i < m_text.size() && (m_text[m_i] == '-' || m_text[m_i] == '+')) {
                s += advance();
            }
            digits(s);
        }
        if (m_i < m_text.size() && m_text[m_i] == '/') {
            s += advance();
            if (m_i < m_text.size() && (m_text[m_i] == '-' || m_text[m_i] == '+')) {
                s += advance();
            }
            digits(s);
        }
        return s;
    }

    std::string_view m_text;
    std::size_t m_i = 0;
    SourcePos m_pos;
};

constexpr std::size_t max_depth = 200;

class Parser
{
public:
    explicit Parser(std::vector<Token> tokens) : m_tokens(std::move(tokens)) {}

    ExprPtr run()
    {
        ExprPtr e = expression(0);
        expect(Tok::end, "end of input");
        return e;
    }

private:
    const Token& peek() const { return m_tokens[m_k]; }
    const Token& next() { return m_tokens[m_k++]; }

    [[noreturn]] void fail(std::set<std::string> expected) const
    {
        throw ParseError(peek().pos, std::move(expected), describe(peek()));
    }

    const Token& expect(Tok t, const std::string& what)
    {
        if (peek().type != t) {
            fail({what});
        }
        return next();
    }

    ExprPtr number_literal()
    {
        const Token& t = next();
        try {
            return std::make_shared<Expr>(Expr{NumberLit{parse_rational(t.text)}, t.pos});
        } catch (const std::invalid_argument&) {
            throw ParseError(t.pos, {"number"}, "malformed number '" + t.text + "'");
        }
    }

    Rational number_value()
    {
        if (peek().type != Tok::number) {
            fail({"number"});
        }
        return std::get<NumberLit>(number_literal()->node).value;
    }

    ExprPtr atom_list()
    {
        SourcePos pos = next().pos; // '['
        AtomListLit lit;
        if (peek().type == Tok::rbracket) {
            next();
            return std::make_shared<Expr>(Expr{lit, pos});
        }
        for (;;) {
            if (peek().type != Tok::lparen) {
                fail({"'('"});
            }
            next();
            Rational x = number_value();
            expect(Tok::comma, "','");
            Rational w = number_value();
            expect(Tok::rparen, "')'");
            lit.atoms.emplace_back(std::move(x), std::move(w));
            if (peek().type == Tok::comma) {
                next();
                continue;
            }
            if (peek().type == Tok::rbracket) {
                next();
                return std::make_shared<Expr>(Expr{lit, pos});
            }
            fail({"','", "']'"});
        }
    }

    ExprPtr value(std::size_t depth)
    {
        if (peek().type == Tok::lbracket) {
            return atom_list();
        }
        return expression(depth);
    }

    ExprPtr expression(std::size_t depth)
    {
        if (depth > max_depth) {
            throw ParseError(peek().pos, {"shallower nesting"}, "nesting deeper than " + std::to_string(max_depth));
        }
        if (peek().type == Tok::number) {
            return number_literal();
        }
        if (peek().type != Tok::ident) {
            fail({"identifier", "number"});
        }
        const Token& name = next();
        expect(Tok::lparen, "'('");
        Call call{name.text, {}, {}};
        if (peek().type == Tok::rparen) {
            next();
            return std::make_shared<Expr>(Expr{std::move(call), name.pos});
        }
        for (;;) {
            // keyword argument: ident '='
            if (peek().type == Tok::ident && m_tokens[m_k + 1].type == Tok::equals) {
                std::string key = next().text;
                next();
                call.kwargs.emplace_back(std::move(key), value(depth + 1));
            } else {
                if (!call.kwargs.empty()) {
                    fail({"keyword argument"});
                }
                if (peek().type != Tok::number && peek().type != Tok::ident) {
                    fail({"identifier", "number"});
                }
                call.args.push_back(expression(depth + 1));
            }
            if (peek().type == Tok::comma) {
                next();
                continue;
            }
            if (peek().type == Tok::rparen) {
                next();
                return std::make_shared<Expr>(Expr{std::move(call), name.pos});
            }
            fail({"','", "')'"});
        }
    }

    std::vector<Token> m_tokens;
    std::size_t m_k = 0;
};

// --- typing ----------------------------------------------------------------------

std::string child_path(const std::string& parent, std::size_t index, const Expr& child)
{
    std::string name = "literal";
    if (const auto* c = std::get_if<Call>(&child.node)) {
        name = c->op;
    }
    return parent + "[" + std::to_string(index) + "]/" + name;
}

ExprKind check_lk(const Expr& e, const Call& c, const std::string& path)
{
    if (!c.args.empty()) {
        throw TypeError(e.pos, path, "lk takes keyword arguments gamma=, and rho= or sigma=");
    }
    bool has_gamma = false;
    bool has_measure = false;
    for (const auto& [key, value] : c.kwargs) {
        if (key == "gamma") {
            if (has_gamma || !std::holds_alternative<NumberLit>(value->node)) {
                throw TypeError(value->pos, path, "gamma must be given once, as a number");
            }
            has_gamma = true;
        } else if (key == "rho" || key == "sigma") {
            if (has_measure || !std::holds_alternative<AtomListLit>(value->node)) {
                throw TypeError(value->pos, path, "exactly one atom list rho=[...] or sigma=[...] is required");
            }
            has_measure = true;
        } else {
            throw TypeError(value->pos, path, "unknown keyword '" + key + "' for lk");
        }
    }
    if (!has_measure) {
        throw TypeError(e.pos, path, "lk needs rho=[...] or sigma=[...]");
    }
    return ExprKind::free;
}

ExprKind check(const Expr& e, const std::string& path)
{
    if (std::holds_alternative<NumberLit>(e.node)) {
        return ExprKind::scalar;
    }
    if (std::holds_alternative<AtomListLit>(e.node)) {
        throw TypeError(e.pos, path, "an atom list is only valid as an lk keyword argument");
    }
    const auto& c = std::get<Call>(e.node);
    const OpSignature* sig = find_op(c.op);
    if (!sig) {
        throw TypeError(e.pos, path, "unknown operation '" + c.op + "'");
    }
    if (c.op == "lk") {
        return check_lk(e, c, path);
    }
    if (!c.kwargs.empty()) {
        throw TypeError(c.kwargs.front().second->pos, path, c.op + " takes no keyword arguments");
    }
    const std::size_t arity = sig->scalars + sig->operands.size();
    if (c.args.size() != arity) {
        throw TypeError(e.pos, path,
                        c.op + " takes " + std::to_string(arity) + " argument" + (arity == 1 ? "" : "s") + ", got "
                            + std::to_string(c.args.size()));
    }
    for (std::size_t i = 0; i < arity; ++i) {
        const Expr& a = *c.args[i];
        const std::string sub = child_path(path, i, a);
        ExprKind k = check(a, sub);
        if (i < sig->scalars) {
            if (k != ExprKind::scalar) {
                throw TypeError(a.pos, sub, c.op + " expects a number as argument " + std::to_string(i + 1));
            }
            continue;
        }
        ExprKind want = sig->operands[i - sig->scalars];
        if (k == ExprKind::scalar) {
            throw TypeError(a.pos, sub,
                            c.op + " expects a " + std::string(kind_label(want)) + " measure as argument "
                                + std::to_string(i + 1) + ", found a number");
        }
        if (!coercible(k, want)) {
            throw TypeError(a.pos, sub,
                            c.op + " requires " + std::string(kind_label(want)) + " kind at argument "
                                + std::to_string(i + 1) + ", found " + std::string(kind_label(k)));
        }
    }
    return sig->result;
}

} // namespace

ExprPtr parse_syntax(std::string_view text)
{
    return Parser(Lexer(text).run()).run();
}

ExprKind type_check(const Expr& e)
{
    std::string root = "literal";
    if (const auto* c = std::get_if<Call>(&e.node)) {
        root = c->op;
    }
    ExprKind k = check(e, root);
    if (k == ExprKind::scalar) {
        throw TypeError(e.pos, root, "expression must denote a measure, not a number");
    }
    return k;
}

ExprPtr parse(std::string_view text)
{
    ExprPtr e = parse_syntax(text);
    type_check(*e);
    return e;
}

} // namespace freewitt
