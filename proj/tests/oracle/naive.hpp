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

// Naive reference model for the fault campaign. Shares no code with the
// library: words are vectors of bits, cells are evaluated gate by gate, and
// every operator schedule is written out again from its description.

#ifndef SCK_TESTS_ORACLE_NAIVE_HPP_
#define SCK_TESTS_ORACLE_NAIVE_HPP_

#include <array>
#include <cstdint>
#include <vector>

namespace oracle {

using Bits = std::vector<int>;  // index 0 = least significant

struct Fault {
  int cell = -1;          // -1 = fault-free
  bool net_fault = true;  // else a minterm inversion
  int net = 0;            // a, b, cin, p, g, pc, s, cout
  int value = 0;
  int minterm = 0;
  int line = 0;  // 0 = sum, 1 = carry
};

/// Same order as the library's enumeration, rebuilt independently.
std::vector<Fault> faults(int n);

struct CellOut {
  int s;
  int c;
};
CellOut cell(int a, int b, int cin, const Fault& f, int index);

Bits to_bits(long long v, int n);
long long to_unsigned(const Bits& b);
long long to_signed(const Bits& b);

struct Chain {
  Bits sum;
  int cout;
};
Chain ripple(const Bits& a, const Bits& b, int cin, const Fault& f);

struct Unit {
  int n;
  Fault f;
  Bits add(const Bits& a, const Bits& b) const;
  Bits sub(const Bits& a, const Bits& b) const;
  Bits neg(const Bits& a) const;
  Bits mul(const Bits& a, const Bits& b) const;
  // {quotient, remainder}; only called on valid operands
  std::array<Bits, 2> div(const Bits& a, const Bits& b) const;
};

enum Op { kAdd, kSub, kMul, kDiv };
enum Tech { kTech1, kTech2, kBoth };

/// 0 correct_silent, 1 detected_silent, 2 detected_erroneous, 3 masked.
int classify(Op op, Tech t, bool same_unit, int n, const Fault& f, long long x, long long y);

bool valid(Op op, int n, long long x, long long y);

struct Counts {
  std::array<long long, 4> c{};
  long long skipped = 0;
};
Counts campaign(Op op, Tech t, bool same_unit, int n);

}  // namespace oracle

#endif  // SCK_TESTS_ORACLE_NAIVE_HPP_
