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

#ifndef FREEWITT_EXPR_HPP
#define FREEWITT_EXPR_HPP

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "freewitt/scalar.hpp"

namespace freewitt {

struct SourcePos {
    std::size_t line = 1;
    std::size_t column = 1;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct NumberLit {
    Rational value;
};

/// [(x, w), ...] as used by lk(rho=...) and lk(sigma=...).
struct AtomListLit {
    std::vector<std::pair<Rational, Rational>> atoms;
};

struct Call {
    std::string op;
    std::vector<ExprPtr> args;
    std::vector<std::pair<std::string, ExprPtr>> kwargs;
};

struct Expr {
    std::variant<NumberLit, AtomListLit, Call> node;
    SourcePos pos;
};

/// Structural equality; source positions are ignored.
bool same_tree(const Expr& a, const Expr& b);

/// Canonical text. Numbers print as integers or p/q.
std::string print(const Expr& e);

// Coordinate systems a measure-valued node lives in. `dual` is a Dirac mass,
// which is valid in every system; `exp_image` is an S-transform series.
enum class ExprKind { scalar, free, classical, moment, dual, exp_image };

std::string_view kind_label(ExprKind k);

class ParseError : public std::runtime_error
{
public:
    ParseError(SourcePos pos, std::set<std::string> expected, const std::string& found);
    SourcePos pos;
    std::set<std::string> expected;
    std::string found;
};

class TypeError : public std::runtime_error
{
public:
    TypeError(SourcePos pos, std::string path, const std::string& message);
    SourcePos pos;
    std::string path;
};

/// Syntax only.
ExprPtr parse_syntax(std::string_view text);

/// Kind of a node after checking arity and operand kinds; throws TypeError.
ExprKind type_check(const Expr& e);

/// parse_syntax followed by type_check.
ExprPtr parse(std::string_view text);

/// Whether a value of kind `from` may be used where `to` is expected:
/// dual goes anywhere, free and moment convert both ways, classical gives
/// moments. No chains.
bool coercible(ExprKind from, ExprKind to);

/// The operator table: each operator's numeric parameters and operand kinds.
struct OpSignature {
    std::string name;
    std::size_t scalars;                  ///< leading numeric literals
    std::vector<ExprKind> operands;       ///< measure operands after them
    ExprKind result;
};

const std::vector<OpSignature>& op_table();
const OpSignature* find_op(std::string_view name);

} // namespace freewitt

#endif
