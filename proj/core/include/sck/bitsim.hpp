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

#ifndef SCK_BITSIM_HPP_
#define SCK_BITSIM_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sck/engine.hpp"
#include "sck/word.hpp"

namespace sck::bitsim {

// Full-adder cell netlist (two half adders and an OR):
//
//   propagate   = a ^ b
//   generate    = a & b
//   carry_chain = propagate & cin
//   sum         = propagate ^ cin
//   cout        = generate | carry_chain
//
// A cell's input combination is packed as the minterm (a << 2) | (b << 1) | cin.

enum class Net : std::uint8_t {
  a,
  b,
  carry_in,
  propagate,
  generate,
  carry_chain,
  sum,
  carry_out,
};
inline constexpr int kNetCount = 8;

enum class OutputLine : std::uint8_t { sum, carry };

/// Net permanently stuck at `value`.
struct NetStuck {
  Net net;
  bool value;
  friend bool operator==(const NetStuck&, const NetStuck&) = default;
};

/// Output `line` forced to `value` whenever the cell sees `minterm`.
struct MintermForce {
  std::uint8_t minterm;
  OutputLine line;
  bool value;
  friend bool operator==(const MintermForce&, const MintermForce&) = default;
};

/// A single permanent fault in one full-adder cell of an n-bit chain.
struct FaultDescriptor {
  int cell = 0;  // 0 = least significant
  std::variant<NetStuck, MintermForce> kind;

  friend bool operator==(const FaultDescriptor&,
                         const FaultDescriptor&) = default;
};

std::string to_string(const FaultDescriptor& f);
std::string_view to_string(Net n) noexcept;

/// Faults per cell in the enumerated universe.
inline constexpr int kFaultsPerCell = 32;

/// Which structural unit a campaign targets. Multiplication and division are
/// built on the same ripple chain as addition, so every kind shares the
/// 32 * n fault universe.
enum class UnitKind : std::uint8_t { adder, multiplier, divider };

/// Deterministic, duplicate-free fault list for an n-bit chain: per cell
/// (least significant first), the 16 net stuck-at faults (net order, value
/// 0 then 1) followed by the 16 minterm output inversions (minterm order,
/// sum then carry).
std::vector<FaultDescriptor> enumerate_faults(int width, UnitKind unit = UnitKind::adder);

/// Fault-free cell outputs for a minterm, packed as (cout << 1) | sum.
constexpr std::uint8_t good_cell_output(unsigned minterm) noexcept {
  const unsigned a = (minterm >> 2) & 1u, b = (minterm >> 1) & 1u,
                 c = minterm & 1u;
  return static_cast<std::uint8_t>(((a & b) | (a & c) | (b & c)) << 1 |
                                   (a ^ b ^ c));
}

/// Complete behaviour of a (possibly faulty) cell: entry m holds
/// (cout << 1) | sum for minterm m.
using CellTable = std::array<std::uint8_t, 8>;

CellTable cell_table(const FaultDescriptor* fault) noexcept;

/// Minterms on which the fault changes the cell's outputs.
std::uint8_t activating_minterms(const FaultDescriptor& fault) noexcept;

struct AdderBits {
  bool sum;
  bool cout;
  friend bool operator==(const AdderBits&, const AdderBits&) = default;
};

/// One full-adder cell. `fault` applies only when it is non-null; the caller
/// passes it for the cell the fault targets.
AdderBits full_adder(bool a, bool b, bool cin,
                     const FaultDescriptor* fault = nullptr) noexcept;

struct RippleResult {
  Word sum;
  bool cout = false;
  bool overflow = false;  // cout[n-1] ^ cout[n-2]
};

/// n cells chained LSB to MSB; the fault (if any) is bound to its cell.
/// When `trace` is non-null it receives the minterm seen by every cell.
RippleResult ripple_add(Word a, Word b, bool cin, const FaultDescriptor* fault,
                        std::vector<std::uint8_t>* trace = nullptr);

/// a + ~b + 1 on the chain. The complement stage is fault-free.
Word ripple_sub(Word a, Word b, const FaultDescriptor* fault);

/// ~x + 0 + 1 on the chain.
Word negate(Word x, const FaultDescriptor* fault);

/// Low n bits of a * b: n accumulation steps on the chain, partial products
/// gated fault-free.
Word shiftadd_mul(Word a, Word b, const FaultDescriptor* fault);

/// Truncated signed division: restoring division on magnitudes with trial
/// subtractions on the chain, then a fault-free sign fix-up.
DivResult restoring_div(Word a, Word b, const FaultDescriptor* fault);

/// An ArithmeticEngine whose every operation runs through one n-bit ripple
/// chain carrying (at most) one permanent fault. Stateless once built.
class FaultyEngine final : public ArithmeticEngine {
 public:
  FaultyEngine(int width, std::optional<FaultDescriptor> fault,
               UnitKind unit = UnitKind::adder);

  const std::optional<FaultDescriptor>& fault() const noexcept { return fault_; }
  UnitKind unit() const noexcept { return unit_; }

  Word add(Word a, Word b) const override;
  Word sub(Word a, Word b) const override;
  Word neg(Word a) const override;
  Word mul(Word a, Word b) const override;
  DivResult divrem(Word a, Word b) const override;

  /// The chain itself: a + b + cin with carry out.
  RippleResult chain(std::uint32_t a, std::uint32_t b, bool cin) const noexcept;

 private:
  std::optional<FaultDescriptor> fault_;
  UnitKind unit_;
  int cell_ = -1;  // -1 when fault-free
  CellTable table_{};
};

}  // namespace sck::bitsim

#endif  // SCK_BITSIM_HPP_
