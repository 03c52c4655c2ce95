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

#ifndef SCK_CHECKED_HPP_
#define SCK_CHECKED_HPP_

#include <concepts>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "sck/engine.hpp"
#include "sck/word.hpp"

namespace sck {

enum class Operator : std::uint8_t { add, sub, mul, div };

/// Which inverse-operation control(s) guard an operator.
///
///   op   tech1                                   tech2
///   +    op2' = ris - op1,  op2 == op2'          op1' = ris - op2,  op1 == op1'
///   -    op1' = ris + op2,  op1 == op1'          ris' = op2 - op1,  0 == ris + ris'
///   *    ris' = (-op1) * op2, 0 == ris + ris'    ris' = op1 * (-op2), 0 == ris + ris'
///   /    op1' = ris * op2 + rem, op1 == op1'     op1' = (-ris) * op2 - rem, 0 == op1 + op1'
///
/// `both` runs the two controls and fails if either fails.
enum class CheckTechnique : std::uint8_t { tech1, tech2, both };

struct CheckPolicy {
  CheckTechnique add = CheckTechnique::both;
  CheckTechnique sub = CheckTechnique::both;
  CheckTechnique mul = CheckTechnique::both;
  CheckTechnique div = CheckTechnique::tech1;  // never `both`

  /// Same technique for every operator; division falls back to tech1 when
  /// `t` is `both`.
  static CheckPolicy uniform(CheckTechnique t) noexcept;

  CheckTechnique for_operator(Operator op) const noexcept;

  /// Throws std::invalid_argument if div holds `both`.
  void validate() const;

  friend bool operator==(const CheckPolicy&, const CheckPolicy&) = default;
};

std::string_view to_string(Operator op) noexcept;
std::string_view to_string(CheckTechnique t) noexcept;
std::string_view symbol(Operator op) noexcept;
std::optional<Operator> parse_operator(std::string_view s) noexcept;
std::optional<CheckTechnique> parse_technique(std::string_view s) noexcept;

/// A fixed-width integer paired with a sticky error bit.
class CheckedValue {
 public:
  constexpr CheckedValue() noexcept = default;
  constexpr explicit CheckedValue(Word value, bool error = false) noexcept
      : value_(value), error_(error) {}

  constexpr Word word() const noexcept { return value_; }
  constexpr std::uint32_t value() const noexcept { return value_.bits(); }
  constexpr std::int64_t signed_value() const noexcept {
    return value_.to_signed();
  }
  constexpr bool error() const noexcept { return error_; }
  constexpr int width() const noexcept { return value_.width(); }

  /// Copy with the error bit raised.
  constexpr CheckedValue flagged() const noexcept {
    return CheckedValue(value_, true);
  }

  friend constexpr bool operator==(const CheckedValue&,
                                   const CheckedValue&) noexcept = default;

 private:
  Word value_;
  bool error_ = false;
};

/// {v mod 2^width, error = false}.
CheckedValue make_checked(std::int64_t v, int width);

/// (value, error) without modification.
constexpr std::pair<std::uint32_t, bool> observe(const CheckedValue& x) noexcept {
  return {x.value(), x.error()};
}

/// Runs the controls `tech` enables for `op` on `engine` and returns true iff
/// all of them pass. `rem` is required for division and ignored otherwise.
bool run_check(Operator op, CheckTechnique tech, Word op1, Word op2, Word ris,
               std::optional<Word> rem, const ArithmeticEngine& engine);

namespace detail {

template <class Engine>
SCK_ALWAYS_INLINE bool control_one(Operator op, bool first, Word op1, Word op2, Word ris, Word rem,
                 const Engine& e) {
  switch (op) {
    case Operator::add:
      return first ? e.sub(ris, op1) == op2 : e.sub(ris, op2) == op1;
    case Operator::sub:
      if (first) return e.add(ris, op2) == op1;
      return e.add(ris, e.sub(op2, op1)).bits() == 0;
    case Operator::mul:
      if (first) return e.add(ris, e.mul(e.neg(op1), op2)).bits() == 0;
      return e.add(ris, e.mul(op1, e.neg(op2))).bits() == 0;
    case Operator::div:
      if (first) return e.add(e.mul(ris, op2), rem) == op1;
      return e.add(op1, e.sub(e.mul(e.neg(ris), op2), rem)).bits() == 0;
  }
  return false;
}

template <class Engine>
SCK_ALWAYS_INLINE bool controls_pass(Operator op, CheckTechnique tech, Word op1, Word op2, Word ris,
                   Word rem, const Engine& e) {
  switch (tech) {
    case CheckTechnique::tech1: return control_one(op, true, op1, op2, ris, rem, e);
    case CheckTechnique::tech2: return control_one(op, false, op1, op2, ris, rem, e);
    case CheckTechnique::both: {
      // Both controls always execute.
      const bool first = control_one(op, true, op1, op2, ris, rem, e);
      const bool second = control_one(op, false, op1, op2, ris, rem, e);
      return first & second;
    }
  }
  return false;
}

[[noreturn]] void throw_operand_mismatch(const CheckedValue& x, const CheckedValue& y,
                                         int nominal_width, int control_width);

SCK_ALWAYS_INLINE void require_operands(const CheckedValue& x, const CheckedValue& y,
                                        const ArithmeticEngine& nominal,
                                        const ArithmeticEngine& control) {
  const int w = x.width();
  if (y.width() != w || nominal.width() != w || control.width() != w) [[unlikely]] {
    throw_operand_mismatch(x, y, nominal.width(), control.width());
  }
}

template <class Nominal, class Control>
SCK_ALWAYS_INLINE CheckedValue checked_binary(Operator op, const CheckedValue& x, const CheckedValue& y,
                            CheckTechnique tech, const Nominal& nominal,
                            const Control& control) {
  require_operands(x, y, nominal, control);
  const Word a = x.word(), b = y.word();
  Word ris;
  switch (op) {
    case Operator::add: ris = nominal.add(a, b); break;
    case Operator::sub: ris = nominal.sub(a, b); break;
    default: ris = nominal.mul(a, b); break;
  }
  const bool ok = controls_pass(op, tech, a, b, ris, Word::from_reduced(0, a.width()), control);
  return CheckedValue(ris, !ok | x.error() | y.error());
}

}  // namespace detail

template <class E>
concept Engine = std::derived_from<E, ArithmeticEngine>;

// The nominal operation runs on `nominal`, its controls on `control`. Passing
// the same engine twice models one functional unit doing both. Concrete
// engine types let the compiler bind the calls statically.

template <Engine Nominal, Engine Control>
SCK_ALWAYS_INLINE CheckedValue checked_add(const CheckedValue& x, const CheckedValue& y,
                         const CheckPolicy& policy, const Nominal& nominal,
                         const Control& control) {
  return detail::checked_binary(Operator::add, x, y, policy.add, nominal, control);
}
template <Engine Nominal, Engine Control>
SCK_ALWAYS_INLINE CheckedValue checked_sub(const CheckedValue& x, const CheckedValue& y,
                         const CheckPolicy& policy, const Nominal& nominal,
                         const Control& control) {
  return detail::checked_binary(Operator::sub, x, y, policy.sub, nominal, control);
}
template <Engine Nominal, Engine Control>
SCK_ALWAYS_INLINE CheckedValue checked_mul(const CheckedValue& x, const CheckedValue& y,
                         const CheckPolicy& policy, const Nominal& nominal,
                         const Control& control) {
  return detail::checked_binary(Operator::mul, x, y, policy.mul, nominal, control);
}
/// Division by zero yields {0, error}; most-negative / -1 yields
/// {most-negative, error}.
CheckedValue checked_div(const CheckedValue& x, const CheckedValue& y,
                         const CheckPolicy& policy,
                         const ArithmeticEngine& nominal,
                         const ArithmeticEngine& control);

CheckedValue checked_apply(Operator op, const CheckedValue& x,
                           const CheckedValue& y, const CheckPolicy& policy,
                           const ArithmeticEngine& nominal,
                           const ArithmeticEngine& control);

template <Engine E>
CheckedValue checked_add(const CheckedValue& x, const CheckedValue& y,
                         const CheckPolicy& policy, const E& engine) {
  return checked_add(x, y, policy, engine, engine);
}
template <Engine E>
CheckedValue checked_sub(const CheckedValue& x, const CheckedValue& y,
                         const CheckPolicy& policy, const E& engine) {
  return checked_sub(x, y, policy, engine, engine);
}
template <Engine E>
CheckedValue checked_mul(const CheckedValue& x, const CheckedValue& y,
                         const CheckPolicy& policy, const E& engine) {
  return checked_mul(x, y, policy, engine, engine);
}
inline CheckedValue checked_div(const CheckedValue& x, const CheckedValue& y,
                                const CheckPolicy& policy,
                                const ArithmeticEngine& engine) {
  return checked_div(x, y, policy, engine, engine);
}

/// Engines and policy shared by a group of CheckedInt values. Must outlive
/// every CheckedInt bound to it.
struct CheckContext {
  const ArithmeticEngine* nominal;
  const ArithmeticEngine* control;
  CheckPolicy policy;

  int width() const noexcept { return nominal->width(); }
};

/// Operator-overloading front end: `a + b` runs checked_add under the bound
/// context. Raw integer operands are promoted with make_checked.
class CheckedInt {
 public:
  CheckedInt(const CheckContext& ctx, std::int64_t v)
      : ctx_(&ctx), v_(make_checked(v, ctx.width())) {}
  CheckedInt(const CheckContext& ctx, CheckedValue v) : ctx_(&ctx), v_(v) {}

  std::uint32_t id() const noexcept { return v_.value(); }
  bool error() const noexcept { return v_.error(); }
  const CheckedValue& checked() const noexcept { return v_; }

  CheckedInt& operator=(std::int64_t v) {
    v_ = make_checked(v, ctx_->width());
    return *this;
  }

  friend CheckedInt operator+(const CheckedInt& a, const CheckedInt& b) {
    return a.apply(Operator::add, b.v_);
  }
  friend CheckedInt operator-(const CheckedInt& a, const CheckedInt& b) {
    return a.apply(Operator::sub, b.v_);
  }
  friend CheckedInt operator*(const CheckedInt& a, const CheckedInt& b) {
    return a.apply(Operator::mul, b.v_);
  }
  friend CheckedInt operator/(const CheckedInt& a, const CheckedInt& b) {
    return a.apply(Operator::div, b.v_);
  }

  friend CheckedInt operator+(const CheckedInt& a, std::int64_t b) {
    return a + CheckedInt(*a.ctx_, b);
  }
  friend CheckedInt operator+(std::int64_t a, const CheckedInt& b) {
    return CheckedInt(*b.ctx_, a) + b;
  }
  friend CheckedInt operator-(const CheckedInt& a, std::int64_t b) {
    return a - CheckedInt(*a.ctx_, b);
  }
  friend CheckedInt operator-(std::int64_t a, const CheckedInt& b) {
    return CheckedInt(*b.ctx_, a) - b;
  }
  friend CheckedInt operator*(const CheckedInt& a, std::int64_t b) {
    return a * CheckedInt(*a.ctx_, b);
  }
  friend CheckedInt operator*(std::int64_t a, const CheckedInt& b) {
    return CheckedInt(*b.ctx_, a) * b;
  }
  friend CheckedInt operator/(const CheckedInt& a, std::int64_t b) {
    return a / CheckedInt(*a.ctx_, b);
  }
  friend CheckedInt operator/(std::int64_t a, const CheckedInt& b) {
    return CheckedInt(*b.ctx_, a) / b;
  }

  CheckedInt& operator+=(const CheckedInt& o) { return *this = *this + o; }
  CheckedInt& operator-=(const CheckedInt& o) { return *this = *this - o; }
  CheckedInt& operator*=(const CheckedInt& o) { return *this = *this * o; }

 private:
  CheckedInt apply(Operator op, const CheckedValue& rhs) const {
    return CheckedInt(*ctx_, checked_apply(op, v_, rhs, ctx_->policy,
                                           *ctx_->nominal, *ctx_->control));
  }

  const CheckContext* ctx_;
  CheckedValue v_;
};

}  // namespace sck

#endif  // SCK_CHECKED_HPP_
