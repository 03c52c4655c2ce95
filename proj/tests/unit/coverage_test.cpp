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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iterator>
#include <random>
#include <stdexcept>
#include <vector>

#include "sck/bitsim.hpp"
#include "sck/coverage.hpp"

namespace {

using sck::CheckTechnique;
using sck::Operator;
using sck::Word;
using namespace sck::coverage;
namespace bitsim = sck::bitsim;

CampaignSpec spec(Operator op, CheckTechnique t, int n, Mode m = Mode::same_unit) {
  return {op, t, n, m, Exhaustive{}};
}

CampaignSpec sampled(Operator op, CheckTechnique t, int n, std::uint64_t count,
                     std::uint64_t seed) {
  return {op, t, n, Mode::same_unit, Sampled{count, seed}};
}

constexpr Operator kOps[] = {Operator::add, Operator::sub, Operator::mul, Operator::div};
constexpr CheckTechnique kTechs[] = {CheckTechnique::tech1, CheckTechnique::tech2,
                                     CheckTechnique::both};

TEST(SituationCount, Formula) {
  EXPECT_EQ(situation_count(1), 128u);
  EXPECT_EQ(situation_count(2), 1024u);
  EXPECT_EQ(situation_count(3), 6144u);
  EXPECT_EQ(situation_count(4), 32768u);
  EXPECT_EQ(situation_count(8), 16u << 20);
  EXPECT_EQ(situation_count(27), 32ull * 27 * (1ull << 54));
  EXPECT_THROW(situation_count(28), std::overflow_error);
  EXPECT_THROW(situation_count(0), std::invalid_argument);
}

TEST(Budget, Limits) {
  EXPECT_TRUE(within_budget(8, kDefaultBudget));
  EXPECT_FALSE(within_budget(16, kDefaultBudget));
  EXPECT_FALSE(within_budget(30, ~std::uint64_t{0}));
  EXPECT_THROW(run_exhaustive(spec(Operator::add, CheckTechnique::tech1, 4), {1, 1000}),
               BudgetExceeded);
  EXPECT_NO_THROW(run_exhaustive(spec(Operator::add, CheckTechnique::tech1, 4), {1, 32768}));
}

TEST(Budget, FromEnvironment) {
  ::unsetenv("SCK_BUDGET");
  EXPECT_EQ(budget_from_environment(), kDefaultBudget);
  ::setenv("SCK_BUDGET", "12345", 1);
  EXPECT_EQ(budget_from_environment(), 12345u);
  for (const char* bad : {"0", "-4", "12x", "abc"}) {
    ::setenv("SCK_BUDGET", bad, 1);
    EXPECT_THROW(budget_from_environment(), std::invalid_argument) << bad;
  }
  ::unsetenv("SCK_BUDGET");
}

TEST(CampaignSpec, Validation) {
  EXPECT_THROW(spec(Operator::div, CheckTechnique::both, 2).validate(), std::invalid_argument);
  EXPECT_THROW(spec(Operator::add, CheckTechnique::tech1, 33).validate(), std::invalid_argument);
  EXPECT_THROW(sampled(Operator::add, CheckTechnique::tech1, 8, kMinSamples - 1, 1).validate(),
               std::invalid_argument);
  EXPECT_NO_THROW(sampled(Operator::add, CheckTechnique::tech1, 8, kMinSamples, 1).validate());
  EXPECT_THROW(run_sampled(spec(Operator::add, CheckTechnique::tech1, 2)), std::invalid_argument);
}

TEST(ModeNames, RoundTrip) {
  for (Mode m : {Mode::same_unit, Mode::cross_unit}) EXPECT_EQ(parse_mode(to_string(m)), m);
  EXPECT_FALSE(parse_mode("other"));
}

TEST(Classify, CrossUnitAddDetectsEveryWrongSum) {
  const auto s = spec(Operator::add, CheckTechnique::tech1, 3, Mode::cross_unit);
  for (const auto& f : bitsim::enumerate_faults(3)) {
    const bitsim::FaultyEngine unit(3, f);
    for (std::uint32_t a = 0; a < 8; ++a) {
      for (std::uint32_t b = 0; b < 8; ++b) {
        const Word x = Word::from_bits(a, 3), y = Word::from_bits(b, 3);
        const auto c = classify(s, f, x, y);
        if (unit.add(x, y).bits() != ((a + b) & 7u)) {
          ASSERT_EQ(c, OutcomeClass::detected_erroneous);
        } else {
          ASSERT_EQ(c, OutcomeClass::correct_silent);
        }
      }
    }
  }
}

TEST(Classify, UnexercisedFaultIsCorrectSilent) {
  const bitsim::FaultDescriptor f{0, bitsim::MintermForce{7, bitsim::OutputLine::sum, false}};
  const auto s = spec(Operator::add, CheckTechnique::tech1, 1);
  EXPECT_EQ(classify(s, f, Word::zero(1), Word::zero(1)), OutcomeClass::correct_silent);
  ClassCounts counts;
  counts.add(classify(s, f, Word::zero(1), Word::zero(1)));
  CampaignResult r{s, counts, 0, std::nullopt};
  EXPECT_EQ(detection_tally(r).detections, 0u);
}

TEST(Classify, OverloadsAgree) {
  const auto s = spec(Operator::mul, CheckTechnique::both, 3);
  for (const auto& f : bitsim::enumerate_faults(3)) {
    const bitsim::FaultyEngine unit(3, f);
    for (std::uint32_t a = 0; a < 8; ++a) {
      for (std::uint32_t b = 0; b < 8; ++b) {
        const Word x = Word::from_bits(a, 3), y = Word::from_bits(b, 3);
        ASSERT_EQ(classify(s, f, x, y), classify(s, unit, x, y));
      }
    }
  }
}

TEST(Classify, RejectsDivisionPreconditions) {
  const auto s = spec(Operator::div, CheckTechnique::tech1, 3);
  const auto f = bitsim::enumerate_faults(3).front();
  EXPECT_THROW(classify(s, f, Word::from_bits(3, 3), Word::zero(3)), std::invalid_argument);
  EXPECT_THROW(classify(s, f, Word::min_signed(3), Word::from_signed(-1, 3)),
               std::invalid_argument);
  EXPECT_FALSE(operands_valid(Operator::div, Word::from_bits(3, 3), Word::zero(3)));
  EXPECT_TRUE(operands_valid(Operator::add, Word::from_bits(3, 3), Word::zero(3)));
}

TEST(RunExhaustive, TwoBitSameUnitAddGolden) {
  const auto r = run_exhaustive(spec(Operator::add, CheckTechnique::tech1, 2));
  EXPECT_EQ(r.total(), 1024u);
  EXPECT_EQ(r.counts, (ClassCounts{592, 180, 216, 36}));
  EXPECT_DOUBLE_EQ(r.coverage(), 1.0 - 36.0 / 1024.0);
  EXPECT_FALSE(r.confidence);
  const auto both = run_exhaustive(spec(Operator::add, CheckTechnique::both, 2));
  EXPECT_EQ(both.counts, (ClassCounts{528, 244, 232, 20}));
}

TEST(RunExhaustive, CrossUnitAddIsComplete) {
  const auto r = run_exhaustive(spec(Operator::add, CheckTechnique::tech1, 4, Mode::cross_unit));
  EXPECT_EQ(r.counts.masked, 0u);
  EXPECT_EQ(r.coverage(), 1.0);
}

TEST(RunExhaustive, DivisionSkipsPreconditionPairs) {
  for (int n = 1; n <= 3; ++n) {
    const auto r = run_exhaustive(spec(Operator::div, CheckTechnique::tech1, n));
    const std::uint64_t per_fault_skips = (1u << n) + 1;
    EXPECT_EQ(r.skipped, 32u * n * per_fault_skips);
    EXPECT_EQ(r.total() + r.skipped, situation_count(n));
  }
}

TEST(RunExhaustive, IndependentOfThreadCount) {
  const auto s = spec(Operator::mul, CheckTechnique::tech2, 4);
  const auto one = run_exhaustive(s, {1, kDefaultBudget});
  for (unsigned t : {2u, 3u, 7u}) EXPECT_EQ(run_exhaustive(s, {t, kDefaultBudget}), one);
}

TEST(TallyFaultRange, AnyPartitionSumsToExhaustive) {
  std::mt19937 rng(5);
  for (Operator op : kOps) {
    const auto s = spec(op, CheckTechnique::tech1, 3);
    const auto whole = run_exhaustive(s, {1, kDefaultBudget});
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<std::size_t> cuts = {0, 96};
      std::uniform_int_distribution<std::size_t> pick(0, 96);
      for (int k = 0; k < 4; ++k) cuts.push_back(pick(rng));
      std::sort(cuts.begin(), cuts.end());
      ClassCounts sum;
      std::uint64_t skipped = 0;
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        std::uint64_t part_skipped = 0;
        sum += tally_fault_range(s, cuts[i], cuts[i + 1], &part_skipped);
        skipped += part_skipped;
      }
      EXPECT_EQ(sum, whole.counts);
      EXPECT_EQ(skipped, whole.skipped);
    }
  }
}

TEST(MaskedSituations, BothIsIntersectionOfSingleTechniques) {
  for (int n = 1; n <= 2; ++n) {
    for (Operator op : {Operator::add, Operator::sub, Operator::mul}) {
      const auto t1 = masked_situations(spec(op, CheckTechnique::tech1, n));
      const auto t2 = masked_situations(spec(op, CheckTechnique::tech2, n));
      const auto both = masked_situations(spec(op, CheckTechnique::both, n));
      std::vector<std::uint64_t> meet;
      std::set_intersection(t1.begin(), t1.end(), t2.begin(), t2.end(),
                            std::back_inserter(meet));
      EXPECT_EQ(both, meet) << sck::to_string(op) << " n=" << n;
      EXPECT_EQ(t1.size(), run_exhaustive(spec(op, CheckTechnique::tech1, n)).counts.masked);
    }
  }
}

TEST(MaskedSituations, IdentifiersDecode) {
  const int n = 2;
  const auto faults = bitsim::enumerate_faults(n);
  const auto s = spec(Operator::add, CheckTechnique::tech1, n);
  for (std::uint64_t id : masked_situations(s)) {
    const std::uint64_t fault = id >> (2 * n);
    const auto op1 = static_cast<std::uint32_t>((id >> n) & 3u);
    const auto op2 = static_cast<std::uint32_t>(id & 3u);
    EXPECT_EQ(situation_id(n, fault, op1, op2), id);
    EXPECT_EQ(classify(s, faults[fault], Word::from_bits(op1, n), Word::from_bits(op2, n)),
              OutcomeClass::masked);
  }
}

TEST(RunSampled, DeterministicAcrossRunsAndThreads) {
  const auto s = sampled(Operator::add, CheckTechnique::both, 16, 200'000, 7);
  const auto a = run_sampled(s, {1, kDefaultBudget});
  EXPECT_EQ(a.total() + a.skipped, 200'000u);
  EXPECT_EQ(run_sampled(s, {1, kDefaultBudget}), a);
  EXPECT_EQ(run_sampled(s, {4, kDefaultBudget}), a);
  const auto other = run_sampled(sampled(Operator::add, CheckTechnique::both, 16, 200'000, 8));
  EXPECT_NE(other.counts, a.counts);
}

TEST(RunSampled, AgreesWithExhaustiveWithinThreeSigma) {
  const auto exact = run_exhaustive(spec(Operator::add, CheckTechnique::tech1, 3)).coverage();
  const auto r = run_sampled(sampled(Operator::add, CheckTechnique::tech1, 3, 1'000'000, 3));
  ASSERT_TRUE(r.confidence);
  const double sigma = std::sqrt(exact * (1 - exact) / static_cast<double>(r.total()));
  EXPECT_LE(std::abs(r.coverage() - exact), 3 * sigma);
  EXPECT_LE(r.confidence->low, r.coverage());
  EXPECT_GE(r.confidence->high, r.coverage());
}

TEST(RunSampled, DivisionSkipsInvalidDraws) {
  const auto r = run_sampled(sampled(Operator::div, CheckTechnique::tech2, 4, 50'000, 1));
  EXPECT_GT(r.skipped, 0u);
  EXPECT_EQ(r.total() + r.skipped, 50'000u);
}

TEST(RunCampaign, Dispatches) {
  const auto s = spec(Operator::sub, CheckTechnique::tech2, 2);
  EXPECT_EQ(run_campaign(s), run_exhaustive(s));
  const auto t = sampled(Operator::sub, CheckTechnique::tech2, 8, 20'000, 2);
  EXPECT_EQ(run_campaign(t), run_sampled(t));
}

TEST(DetectionTally, CountsClasses) {
  CampaignResult r{spec(Operator::add, CheckTechnique::tech1, 2), {592, 180, 216, 36}, 0, {}};
  const auto d = detection_tally(r);
  EXPECT_EQ(d.observable_errors, 252u);
  EXPECT_EQ(d.detections, 396u);
  EXPECT_EQ(d.silent_detections, 180u);
  EXPECT_DOUBLE_EQ(r.detection(), 396.0 / 1024.0);
}

TEST(OutcomeNames, Distinct) {
  EXPECT_EQ(to_string(OutcomeClass::masked), "masked");
  EXPECT_NE(to_string(OutcomeClass::correct_silent), to_string(OutcomeClass::detected_silent));
}

TEST(Coverage, AllTechniquesBoundedBelowByDetections) {
  for (CheckTechnique t : kTechs) {
    const auto r = run_exhaustive(spec(Operator::sub, t, 3));
    EXPECT_GE(r.coverage(), r.detection());
    EXPECT_LE(r.coverage(), 1.0);
  }
}

}  // namespace
