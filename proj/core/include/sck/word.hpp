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

#ifndef SCK_WORD_HPP_
#define SCK_WORD_HPP_

#include <cstdint>
#include <string>

#if defined(__GNUC__) || defined(__clang__)
#define SCK_ALWAYS_INLINE [[gnu::always_inline]] inline
#else
#define SCK_ALWAYS_INLINE inline
#endif

namespace sck {

inline constexpr int kMinWidth = 1;
inline constexpr int kMaxWidth = 32;

[[noreturn]] void throw_bad_width(int width);
[[noreturn]] void throw_width_differs(int a, int b);

/// Throws std::invalid_argument unless 1 <= width <= 32.
constexpr void require_width(int width) {
  if (width < kMinWidth || width > kMaxWidth) throw_bad_width(width);
}

/// Low `width` bits set.
constexpr std::uint32_t width_mask(int width) noexcept {
  return width >= 32 ? 0xFFFFFFFFu : ((std::uint32_t{1} << width) - 1u);
}

/// An n-bit two's-complement machine word. The bit pattern is always kept
/// reduced to the low `width` bits.
class Word {
 public:
  constexpr Word() noexcept = default;

  /// Reduces `raw` modulo 2^width.
  static constexpr Word from_bits(std::uint64_t raw, int width) {
    require_width(width);
    return Word(static_cast<std::uint32_t>(raw) & width_mask(width), width);
  }

  /// No reduction or validation: `bits` must already fit a valid `width`.
  static constexpr Word from_reduced(std::uint32_t bits, int width) noexcept {
    return Word(bits, width);
  }

  /// Two's-complement encoding of `value`, reduced modulo 2^width.
  static constexpr Word from_signed(std::int64_t value, int width) {
    return from_bits(static_cast<std::uint64_t>(value), width);
  }

  static constexpr Word zero(int width) { return from_bits(0, width); }

  /// Most negative representable value, -2^(width-1).
  static constexpr Word min_signed(int width) {
    return from_bits(std::uint64_t{1} << (width - 1), width);
  }

  constexpr std::uint32_t bits() const noexcept { return bits_; }
  constexpr int width() const noexcept { return width_; }

  constexpr bool bit(int i) const noexcept { return ((bits_ >> i) & 1u) != 0; }
  constexpr bool sign() const noexcept { return bit(width_ - 1); }

  constexpr std::int64_t to_signed() const noexcept {
    const std::int64_t raw = bits_;
    return sign() ? raw - (std::int64_t{1} << width_) : raw;
  }

  /// Bitwise complement within the word's width.
  constexpr Word complement() const noexcept {
    return Word(~bits_ & width_mask(width_), width_);
  }

  friend constexpr bool operator==(Word, Word) noexcept = default;

 private:
  constexpr Word(std::uint32_t bits, int width) noexcept
      : bits_(bits), width_(width) {}

  std::uint32_t bits_ = 0;
  int width_ = 1;
};

inline void require_same_width(Word a, Word b) {
  if (a.width() != b.width()) throw_width_differs(a.width(), b.width());
}

std::string to_string(Word w);

}  // namespace sck

#endif  // SCK_WORD_HPP_
