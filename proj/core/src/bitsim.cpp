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

#include "sck/bitsim.hpp"

#include <stdexcept>
#include <string>

namespace sck::bitsim {

namespace {

AdderBits eval_netlist(bool a, bool b, bool cin, const NetStuck* stuck) {
  auto net = [stuck](Net n, bool v) {
    return stuck != nullptr && stuck->net == n ? stuck->value : v;
  };
  a = net(Net::a, a);
  b = net(Net::b, b);
  cin = net(Net::carry_in, cin);
  const bool p = net(Net::propagate, a != b);
  const bool g = net(Net::generate, a && b);
  const bool cc = net(Net::carry_chain, p && cin);
  return {net(Net::sum, p != cin), net(Net::carry_out, g || cc)};
}

void require_cell(const FaultDescriptor* fault, int width) {
  if (fault != nullptr && (fault->cell < 0 || fault->cell >= width)) {
    throw std::invalid_argument("fault cell " + std::to_string(fault->cell) +
                                " outside a " + std::to_string(width) +
                                "-bit chain");
  }
}

// Chain: (uint32 a, uint32 b, bool cin) -> RippleResult
template <class Chain>
Word mul_on_chain(Word a, Word b, int width, const Chain& chain) {
  const std::uint32_t mask = width_mask(width);
  std::uint32_t acc = 0;
  for (int i = 0; i < width; ++i) {
    const std::uint32_t pp = b.bit(i) ? (a.bits() << i) & mask : 0u;
    acc = chain(acc, pp, false).sum.bits();
  }
  return Word::from_bits(acc, width);
}

template <class Chain>
DivResult div_on_chain(Word a, Word b, int width, const Chain& chain) {
  const DivStatus status = division_precondition(a, b);
  if (status != DivStatus::ok) {
    return {Word::zero(width), Word::zero(width), status};
  }
  const std::uint32_t mask = width_mask(width);
  const bool neg_a = a.sign(), neg_b = b.sign();
  // Magnitudes fit in n unsigned bits, including |most-negative|.
  const std::uint32_t ua = (neg_a ? 0u - a.bits() : a.bits()) & mask;
  const std::uint32_t ub = (neg_b ? 0u - b.bits() : b.bits()) & mask;
  const std::uint32_t not_ub = ~ub & mask;

  std::uint32_t rem = 0, quo = 0;
  for (int i = width - 1; i >= 0; --i) {
    rem = ((rem << 1) | ((ua >> i) & 1u)) & mask;
    const RippleResult trial = chain(rem, not_ub, true);
    if (trial.cout) {  // no borrow: rem >= ub
      rem = trial.sum.bits();
      quo |= std::uint32_t{1} << i;
    }
  }
  const std::uint32_t q = neg_a != neg_b ? 0u - quo : quo;
  const std::uint32_t r = neg_a ? 0u - rem : rem;
  return {Word::from_bits(q, width), Word::from_bits(r, width), DivStatus::ok};
}

}  // namespace

std::string_view to_string(Net n) noexcept {
  switch (n) {
    case Net::a: return "a";
    case Net::b: return "b";
    case Net::carry_in: return "cin";
    case Net::propagate: return "p";
    case Net::generate: return "g";
    case Net::carry_chain: return "pc";
    case Net::sum: return "s";
    case Net::carry_out: return "cout";
  }
  return "?";
}

std::string to_string(const FaultDescriptor& f) {
  std::string out = "cell" + std::to_string(f.cell) + ":";
  if (const auto* s = std::get_if<NetStuck>(&f.kind)) {
    out += std::string(to_string(s->net)) + "/sa" + (s->value ? "1" : "0");
  } else {
    const auto& m = std::get<MintermForce>(f.kind);
    out += "m";
    for (int bit = 2; bit >= 0; --bit) out += ((m.minterm >> bit) & 1) ? '1' : '0';
    out += m.line == OutputLine::sum ? ".s=" : ".cout=";
    out += m.value ? '1' : '0';
  }
  return out;
}

AdderBits full_adder(bool a, bool b, bool cin,
                     const FaultDescriptor* fault) noexcept {
  if (fault == nullptr) return eval_netlist(a, b, cin, nullptr);
  if (const auto* s = std::get_if<NetStuck>(&fault->kind)) {
    return eval_netlist(a, b, cin, s);
  }
  const auto& m = std::get<MintermForce>(fault->kind);
  AdderBits out = eval_netlist(a, b, cin, nullptr);
  const unsigned minterm = (unsigned{a} << 2) | (unsigned{b} << 1) | cin;
  if (minterm == m.minterm) {
    (m.line == OutputLine::sum ? out.sum : out.cout) = m.value;
  }
  return out;
}

CellTable cell_table(const FaultDescriptor* fault) noexcept {
  CellTable t{};
  for (unsigned m = 0; m < 8; ++m) {
    const AdderBits o = full_adder((m >> 2) & 1u, (m >> 1) & 1u, m & 1u, fault);
    t[m] = static_cast<std::uint8_t>((unsigned{o.cout} << 1) | o.sum);
  }
  return t;
}

std::uint8_t activating_minterms(const FaultDescriptor& fault) noexcept {
  const CellTable t = cell_table(&fault);
  std::uint8_t set = 0;
  for (unsigned m = 0; m < 8; ++m) {
    if (t[m] != good_cell_output(m)) set |= static_cast<std::uint8_t>(1u << m);
  }
  return set;
}

std::vector<FaultDescriptor> enumerate_faults(int width, UnitKind /*unit*/) {
  require_width(width);
  std::vector<FaultDescriptor> out;
  out.reserve(static_cast<std::size_t>(width) * kFaultsPerCell);
  for (int cell = 0; cell < width; ++cell) {
    for (int n = 0; n < kNetCount; ++n) {
      for (bool v : {false, true}) {
        out.push_back({cell, NetStuck{static_cast<Net>(n), v}});
      }
    }
    for (std::uint8_t m = 0; m < 8; ++m) {
      const std::uint8_t good = good_cell_output(m);
      for (OutputLine line : {OutputLine::sum, OutputLine::carry}) {
        const bool correct = line == OutputLine::sum ? (good & 1u) : (good >> 1);
        out.push_back({cell, MintermForce{m, line, !correct}});
      }
    }
  }
  return out;
}

RippleResult ripple_add(Word a, Word b, bool cin, const FaultDescriptor* fault,
                        std::vector<std::uint8_t>* trace) {
  require_same_width(a, b);
  const int n = a.width();
  require_cell(fault, n);
  if (trace != nullptr) trace->assign(static_cast<std::size_t>(n), 0);
  std::uint32_t sum = 0;
  bool carry = cin, carry_into_msb = cin;
  for (int i = 0; i < n; ++i) {
    const bool ai = a.bit(i), bi = b.bit(i);
    if (trace != nullptr) {
      (*trace)[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(
          (unsigned{ai} << 2) | (unsigned{bi} << 1) | carry);
    }
    if (i == n - 1) carry_into_msb = carry;
    const AdderBits o = full_adder(
        ai, bi, carry, fault != nullptr && fault->cell == i ? fault : nullptr);
    sum |= std::uint32_t{o.sum} << i;
    carry = o.cout;
  }
  return {Word::from_bits(sum, n), carry, carry != carry_into_msb};
}

Word ripple_sub(Word a, Word b, const FaultDescriptor* fault) {
  return ripple_add(a, b.complement(), true, fault).sum;
}

Word negate(Word x, const FaultDescriptor* fault) {
  return ripple_add(x.complement(), Word::zero(x.width()), true, fault).sum;
}

namespace {

struct SlowChain {
  int width;
  const FaultDescriptor* fault;
  RippleResult operator()(std::uint32_t a, std::uint32_t b, bool cin) const {
    return ripple_add(Word::from_bits(a, width), Word::from_bits(b, width), cin,
                      fault);
  }
};

}  // namespace

Word shiftadd_mul(Word a, Word b, const FaultDescriptor* fault) {
  require_same_width(a, b);
  require_cell(fault, a.width());
  return mul_on_chain(a, b, a.width(), SlowChain{a.width(), fault});
}

DivResult restoring_div(Word a, Word b, const FaultDescriptor* fault) {
  require_same_width(a, b);
  require_cell(fault, a.width());
  return div_on_chain(a, b, a.width(), SlowChain{a.width(), fault});
}

FaultyEngine::FaultyEngine(int width, std::optional<FaultDescriptor> fault,
                           UnitKind unit)
    : ArithmeticEngine(width), fault_(std::move(fault)), unit_(unit) {
  if (fault_) {
    require_cell(&*fault_, width);
    cell_ = fault_->cell;
    table_ = cell_table(&*fault_);
  }
}

RippleResult FaultyEngine::chain(std::uint32_t a, std::uint32_t b,
                                 bool cin) const noexcept {
  const int n = width();
  const std::uint32_t mask = width_mask(n);
  a &= mask;
  b &= mask;
  std::uint32_t sum;
  bool cout;
  if (cell_ < 0) {
    const std::uint64_t s = std::uint64_t{a} + b + cin;
    sum = static_cast<std::uint32_t>(s) & mask;
    cout = ((s >> n) & 1u) != 0;
  } else {
    // Cells below and above the faulty one are fault-free, so both runs
    // reduce to native additions around a table lookup.
    const int k = cell_;
    const std::uint32_t low_mask = width_mask(k);
    const std::uint64_t low = std::uint64_t{a & low_mask} + (b & low_mask) + cin;
    const unsigned ck = static_cast<unsigned>(low >> k) & 1u;
    const unsigned m = (((a >> k) & 1u) << 2) | (((b >> k) & 1u) << 1) | ck;
    const unsigned out = table_[m];
    sum = (static_cast<std::uint32_t>(low) & low_mask) |
          (std::uint32_t{out & 1u} << k);
    const int hi_width = n - k - 1;
    if (hi_width > 0) {
      const std::uint32_t hi_mask = width_mask(hi_width);
      const std::uint64_t hi = std::uint64_t{(a >> (k + 1)) & hi_mask} +
                               ((b >> (k + 1)) & hi_mask) + (out >> 1);
      sum |= (static_cast<std::uint32_t>(hi) & hi_mask) << (k + 1);
      cout = ((hi >> hi_width) & 1u) != 0;
    } else {
      cout = (out >> 1) != 0;
    }
    if (k == n - 1) {
      return {Word::from_bits(sum, n), cout, cout != (ck != 0)};
    }
  }
  const bool carry_into_msb = (((a ^ b ^ sum) >> (n - 1)) & 1u) != 0;
  return {Word::from_bits(sum, n), cout, cout != carry_into_msb};
}

Word FaultyEngine::add(Word a, Word b) const {
  return chain(a.bits(), b.bits(), false).sum;
}

Word FaultyEngine::sub(Word a, Word b) const {
  return chain(a.bits(), b.complement().bits(), true).sum;
}

Word FaultyEngine::neg(Word a) const {
  return chain(a.complement().bits(), 0u, true).sum;
}

Word FaultyEngine::mul(Word a, Word b) const {
  return mul_on_chain(a, b, width(),
                      [this](std::uint32_t x, std::uint32_t y, bool c) {
                        return chain(x, y, c);
                      });
}

DivResult FaultyEngine::divrem(Word a, Word b) const {
  return div_on_chain(a, b, width(),
                      [this](std::uint32_t x, std::uint32_t y, bool c) {
                        return chain(x, y, c);
                      });
}

}  // namespace sck::bitsim
