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

#include "sck/engine.hpp"

#include <stdexcept>
#include <string>

namespace sck {

void throw_bad_width(int width) {
  throw std::invalid_argument("width " + std::to_string(width) + " outside 1..32");
}

void throw_width_differs(int a, int b) {
  throw std::invalid_argument("operand widths differ: " + std::to_string(a) + " vs " +
                              std::to_string(b));
}

std::string to_string(Word w) {
  return std::to_string(w.to_signed()) + "/" + std::to_string(w.width());
}

DivStatus division_precondition(Word dividend, Word divisor) noexcept {
  if (divisor.bits() == 0) return DivStatus::divide_by_zero;
  if (dividend == Word::min_signed(dividend.width()) &&
      divisor.bits() == width_mask(divisor.width())) {
    return DivStatus::overflow;
  }
  return DivStatus::ok;
}

DivResult ReferenceEngine::divrem(Word a, Word b) const {
  const DivStatus status = division_precondition(a, b);
  if (status != DivStatus::ok) {
    return {Word::zero(width()), Word::zero(width()), status};
  }
  const std::int64_t x = a.to_signed(), y = b.to_signed();
  return {Word::from_signed(x / y, width()), Word::from_signed(x % y, width()),
          DivStatus::ok};
}

}  // namespace sck
