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

#include <gtest/gtest.h>

#include <string>
#include <tuple>

#include "naive.hpp"
#include "sck/bitsim.hpp"
#include "sck/coverage.hpp"

namespace {

using sck::CheckTechnique;
using sck::Operator;
using sck::Word;
using sck::coverage::CampaignSpec;
using sck::coverage::Mode;

oracle::Op to_oracle(Operator op) {
  switch (op) {
    case Operator::add: return oracle::kAdd;
    case Operator::sub: return oracle::kSub;
    case Operator::mul: return oracle::kMul;
    case Operator::div: return oracle::kDiv;
  }
  return oracle::kAdd;
}

oracle::Tech to_oracle(CheckTechnique t) {
  switch (t) {
    case CheckTechnique::tech1: return oracle::kTech1;
    case CheckTechnique::tech2: return oracle::kTech2;
    case CheckTechnique::both: return oracle::kBoth;
  }
  return oracle::kTech1;
}

TEST(OracleFaults, TruthTablesAgreeCellByCell) {
  for (int n : {1, 3}) {
    const auto lib = sck::bitsim::enumerate_faults(n);
    const auto ref = oracle::faults(n);
    ASSERT_EQ(lib.size(), ref.size());
    for (std::size_t i = 0; i < lib.size(); ++i) {
      ASSERT_EQ(lib[i].cell, ref[i].cell);
      const auto table = sck::bitsim::cell_table(&lib[i]);
      for (int m = 0; m < 8; ++m) {
        const auto o = oracle::cell(m >> 2, (m >> 1) & 1, m & 1, ref[i], ref[i].cell);
        EXPECT_EQ(table[m], o.c * 2 + o.s) << "fault " << i << " minterm " << m;
      }
    }
  }
}

TEST(OracleFaults, EveryFaultIsEffective) {
  for (const auto& f : sck::bitsim::enumerate_faults(2)) {
    EXPECT_NE(sck::bitsim::activating_minterms(f), 0) << sck::bitsim::to_string(f);
  }
}

using Param = std::tuple<Operator, CheckTechnique, Mode, int>;

class OracleEquivalence : public ::testing::TestWithParam<Param> {};

TEST_P(OracleEquivalence, EverySituationClassifiesIdentically) {
  const auto [op, tech, mode, n] = GetParam();
  CampaignSpec spec{op, tech, n, mode};
  const auto faults = sck::bitsim::enumerate_faults(n);
  const auto ref = oracle::faults(n);
  for (std::size_t f = 0; f < faults.size(); ++f) {
    for (long long x = 0; x < (1LL << n); ++x) {
      for (long long y = 0; y < (1LL << n); ++y) {
        const Word a = Word::from_bits(static_cast<std::uint64_t>(x), n);
        const Word b = Word::from_bits(static_cast<std::uint64_t>(y), n);
        const bool valid = oracle::valid(to_oracle(op), n, x, y);
        ASSERT_EQ(valid, sck::coverage::operands_valid(op, a, b));
        if (!valid) continue;
        const int want = oracle::classify(to_oracle(op), to_oracle(tech),
                                          mode == Mode::same_unit, n, ref[f], x, y);
        const auto got = sck::coverage::classify(spec, faults[f], a, b);
        ASSERT_EQ(static_cast<int>(got), want)
            << sck::bitsim::to_string(faults[f]) << " op1=" << x << " op2=" << y;
      }
    }
  }
  const auto counts = sck::coverage::run_exhaustive(spec, {.threads = 2}).counts;
  const auto oc = oracle::campaign(to_oracle(op), to_oracle(tech), mode == Mode::same_unit, n);
  EXPECT_EQ(counts.correct_silent, static_cast<std::uint64_t>(oc.c[0]));
  EXPECT_EQ(counts.detected_silent, static_cast<std::uint64_t>(oc.c[1]));
  EXPECT_EQ(counts.detected_erroneous, static_cast<std::uint64_t>(oc.c[2]));
  EXPECT_EQ(counts.masked, static_cast<std::uint64_t>(oc.c[3]));
}

std::vector<Param> params() {
  std::vector<Param> out;
  for (int n : {1, 2, 3}) {
    for (Operator op : {Operator::add, Operator::sub, Operator::mul, Operator::div}) {
      for (CheckTechnique t : {CheckTechnique::tech1, CheckTechnique::tech2, CheckTechnique::both}) {
        if (op == Operator::div && t == CheckTechnique::both) continue;
        for (Mode m : {Mode::same_unit, Mode::cross_unit}) out.emplace_back(op, t, m, n);
      }
    }
  }
  return out;
}

std::string name(const ::testing::TestParamInfo<Param>& info) {
  const auto [op, tech, mode, n] = info.param;
  std::string s = std::string(sck::to_string(op)) + "_" + std::string(sck::to_string(tech)) +
                  "_" + (mode == Mode::same_unit ? "same" : "cross") + "_n" + std::to_string(n);
  return s;
}

INSTANTIATE_TEST_SUITE_P(AllOperators, OracleEquivalence, ::testing::ValuesIn(params()), name);

}  // namespace
