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

#ifndef FREEWITT_EVAL_HPP
#define FREEWITT_EVAL_HPP

#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "freewitt/convolve.hpp"
#include "freewitt/expr.hpp"
#include "freewitt/infdiv.hpp"

namespace freewitt {

/// S-transform image of an EXP map.
template <RealScalar T>
struct ExpImage {
    std::string map; ///< "rplus" or "circle"
    std::variant<ExpSeries<T>, ExpSeries<complex_of<T>>> series;
};

template <RealScalar T>
using Value = std::variant<FreeCumulants<T>, ClassicalCumulants<T>, MomentSeq<T>, ExpImage<T>>;

/// A failure while evaluating a node, tagged with the node's path
/// (e.g. "boxplus[1]/decalage") and source position.
class EvalError : public std::runtime_error
{
public:
    EvalError(SourcePos pos, std::string path, const std::string& message);
    SourcePos pos;
    std::string path;
};

struct EvalOptions {
    std::size_t order = default_order;
    GermOptions germ;
};

constexpr std::size_t max_cli_order = 64;

/// Evaluates a type-checked expression. Binary operands of different orders
/// (after decalage or log_mult) are truncated to the smaller order.
/// On the float backend, decalage and exp_rplus certify their operand on an
/// exact evaluation of the same subtree.
template <RealScalar T>
Value<T> evaluate(const Expr& e, const EvalOptions& opts);

extern template Value<Rational> evaluate<Rational>(const Expr&, const EvalOptions&);
extern template Value<double> evaluate<double>(const Expr&, const EvalOptions&);

/// Free cumulants of a measure-valued expression, with classical results
/// sent through the Bercovici-Pata map. Throws EvalError for EXP images.
FreeCumulants<Rational> evaluate_free(const Expr& e, const EvalOptions& opts);

/// JSON record for `eval`: cumulants, moments, and for exact free results the
/// ID certificate and Levy pair when available.
template <RealScalar T>
nlohmann::json result_record(const Expr& e, const Value<T>& v);

extern template nlohmann::json result_record<Rational>(const Expr&, const Value<Rational>&);
extern template nlohmann::json result_record<double>(const Expr&, const Value<double>&);

/// Aligned tab-separated table of a result record.
std::string record_to_tsv(const nlohmann::json& record);

} // namespace freewitt

#endif
