// Copyright 2026 The SCK Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sck/checked.hpp"

#include <stdexcept>
#include <string>

namespace sck {

CheckPolicy CheckPolicy::uniform(CheckTechnique t) noexcept {
  return {t, t, t, t == CheckTechnique::both ? CheckTechnique::tech1 : t};
}

CheckTechnique CheckPolicy::for_operator(Operator op) const noexcept {
  switch (op) {
    case Operator::add: return add;
    case Operator::sub: return sub;
    case Operator::mul: return mul;
    case Operator::div: return div;
  }
  return add;
}

void CheckPolicy::validate() const {
  if (div == CheckTechnique::both) {
    throw std::invalid_argument("division supports tech1 or tech2 only");
  }
}

std::string_view to_string(Operator op) noexcept {
  switch (op) {
    case Operator::add: return "add";
    case Operator::sub: return "sub";
    case Operator::mul: return "mul";
    case Operator::div: return "div";
  }
  return "?";
}

std::string_view symbol(Operator op) noexcept {
  switch (op) {
    case Operator::add: return "+";
    case Operator::sub: return "-";
    case Operator::mul: return "*";
    case Operator::div: return "/";
  }
  return "?";
}

std::string_view to_string(CheckTechnique t) noexcept {
  switch (t) {
    case CheckTechnique::tech1: return "tech1";
    case CheckTechnique::tech2: return "tech2";
    case CheckTechnique::both: return "both";
  }
  return "?";
}

std::optional<Operator> parse_operator(std::string_view s) noexcept {
  if (s == "add" || s == "+") return Operator::add;
  if (s == "sub" || s == "-") return Operator::sub;
  if (s == "mul" || s == "*") return Operator::mul;
  if (s == "div" || s == "/") return Operator::div;
  return std::nullopt;
}

std::optional<CheckTechnique> parse_technique(std::string_view s) noexcept {
  if (s == "tech1") return CheckTechnique::tech1;
  if (s == "tech2") return CheckTechnique::tech2;
  if (s == "both") return CheckTechnique::both;
  return std::nullopt;
}

CheckedValue make_checked(std::int64_t v, int width) {
  return CheckedValue(Word::from_signed(v, width));
}

namespace detail {

void throw_operand_mismatch(const CheckedValue& x, const CheckedValue& y,
                            int nominal_width, int control_width) {
  require_same_width(x.word(), y.word());
  const int w = nominal_width != x.width() ? nominal_width : control_width;
  throw std::invalid_argument("engine width " + std::to_string(w) +
                              " does not match operand width " +
                              std::to_string(x.width()));
}

}  // namespace detail

bool run_check(Operator op, CheckTechnique tech, Word op1, Word op2, Word ris,
               std::optional<Word> rem, const ArithmeticEngine& engine) {
  if (op == Operator::div) {
    if (tech == CheckTechnique::both) {
      throw std::invalid_argument("division supports tech1 or tech2 only");
    }
    if (!rem) throw std::invalid_argument("division check needs a remainder");
  }
  return detail::controls_pass(op, tech, op1, op2, ris,
                               rem.value_or(Word::zero(op1.width())), engine);
}

CheckedValue checked_div(const CheckedValue& x, const CheckedValue& y,
                         const CheckPolicy& policy,
                         const ArithmeticEngine& nominal,
                         const ArithmeticEngine& control) {
  detail::require_operands(x, y, nominal, control);
  policy.validate();
  const int n = x.width();
  switch (division_precondition(x.word(), y.word())) {
    case DivStatus::divide_by_zero:
      return CheckedValue(Word::zero(n), true);
    case DivStatus::overflow:
      return CheckedValue(Word::min_signed(n), true);
    case DivStatus::ok:
      break;
  }
  const DivResult qr = nominal.divrem(x.word(), y.word());
  const bool ok = qr.ok() && run_check(Operator::div, policy.div, x.word(),
                                       y.word(), qr.quotient, qr.remainder,
                                       control);
  return CheckedValue(qr.quotient, !ok || x.error() || y.error());
}

CheckedValue checked_apply(Operator op, const CheckedValue& x,
                           const CheckedValue& y, const CheckPolicy& policy,
                           const ArithmeticEngine& nominal,
                           const ArithmeticEngine& control) {
  switch (op) {
    case Operator::add: return checked_add(x, y, policy, nominal, control);
    case Operator::sub: return checked_sub(x, y, policy, nominal, control);
    case Operator::mul: return checked_mul(x, y, policy, nominal, control);
    case Operator::div: return checked_div(x, y, policy, nominal, control);
  }
  throw std::invalid_argument("unknown operator");
}

}  // namespace sck
