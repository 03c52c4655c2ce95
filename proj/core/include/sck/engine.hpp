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

#ifndef SCK_ENGINE_HPP_
#define SCK_ENGINE_HPP_

#include "sck/word.hpp"

namespace sck {

enum class DivStatus : std::uint8_t {
  ok,
  divide_by_zero,
  overflow,  // most-negative / -1
};

struct DivResult {
  Word quotient;
  Word remainder;
  DivStatus status = DivStatus::ok;

  bool ok() const noexcept { return status == DivStatus::ok; }
};

/// True for the operand pairs a fixed-width signed division cannot produce a
/// quotient for.
DivStatus division_precondition(Word dividend, Word divisor) noexcept;

/// The functional unit an operation executes on. All operands must carry the
/// engine's width; results are reduced modulo 2^width.
class ArithmeticEngine {
 public:
  virtual ~ArithmeticEngine() = default;

  int width() const noexcept { return width_; }
  std::uint32_t mask() const noexcept { return mask_; }

  virtual Word add(Word a, Word b) const = 0;
  virtual Word sub(Word a, Word b) const = 0;
  virtual Word neg(Word a) const = 0;
  /// Low `width` bits of the product.
  virtual Word mul(Word a, Word b) const = 0;
  /// Signed division truncating toward zero; the remainder takes the
  /// dividend's sign. Precondition failures come back as a status.
  virtual DivResult divrem(Word a, Word b) const = 0;

 protected:
  /// Throws std::invalid_argument unless 1 <= width <= 32.
  explicit ArithmeticEngine(int width)
      : width_(width), mask_(width_mask(width)) {
    require_width(width);
  }

  Word reduce(std::uint32_t raw) const noexcept {
    return Word::from_reduced(raw & mask_, width_);
  }

 private:
  int width_;
  std::uint32_t mask_;
};

/// Exact modular host arithmetic. Stateless, shareable between threads.
class ReferenceEngine final : public ArithmeticEngine {
 public:
  explicit ReferenceEngine(int width) : ArithmeticEngine(width) {}

  // Defined inline so calls through a ReferenceEngine (the class is final)
  // compile down to native integer arithmetic.
  Word add(Word a, Word b) const override { return reduce(a.bits() + b.bits()); }
  Word sub(Word a, Word b) const override { return reduce(a.bits() - b.bits()); }
  Word neg(Word a) const override { return reduce(0u - a.bits()); }
  Word mul(Word a, Word b) const override { return reduce(a.bits() * b.bits()); }
  DivResult divrem(Word a, Word b) const override;
};

}  // namespace sck

#endif  // SCK_ENGINE_HPP_
