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

#include "sck/coverage.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <random>
#include <string>

#include "parallel.hpp"

namespace sck::coverage {

using bitsim::FaultDescriptor;
using bitsim::FaultyEngine;

std::string_view to_string(Mode m) noexcept {
  return m == Mode::same_unit ? "same-unit" : "cross-unit";
}

std::optional<Mode> parse_mode(std::string_view s) noexcept {
  if (s == "same-unit" || s == "same") return Mode::same_unit;
  if (s == "cross-unit" || s == "cross") return Mode::cross_unit;
  return std::nullopt;
}

std::string_view to_string(OutcomeClass c) noexcept {
  switch (c) {
    case OutcomeClass::correct_silent: return "correct_silent";
    case OutcomeClass::detected_silent: return "detected_silent";
    case OutcomeClass::detected_erroneous: return "detected_erroneous";
    case OutcomeClass::masked: return "masked";
  }
  return "?";
}

void CampaignSpec::validate() const {
  require_width(width);
  if (op == Operator::div && technique == CheckTechnique::both) {
    throw std::invalid_argument("division supports tech1 or tech2 only");
  }
  if (const auto* s = std::get_if<Sampled>(&sampling); s && s->count < kMinSamples) {
    throw std::invalid_argument("sample count must be at least " +
                                std::to_string(kMinSamples));
  }
}

void ClassCounts::add(OutcomeClass c) noexcept {
  switch (c) {
    case OutcomeClass::correct_silent: ++correct_silent; break;
    case OutcomeClass::detected_silent: ++detected_silent; break;
    case OutcomeClass::detected_erroneous: ++detected_erroneous; break;
    case OutcomeClass::masked: ++masked; break;
  }
}

ClassCounts& ClassCounts::operator+=(const ClassCounts& o) noexcept {
  correct_silent += o.correct_silent;
  detected_silent += o.detected_silent;
  detected_erroneous += o.detected_erroneous;
  masked += o.masked;
  return *this;
}

double CampaignResult::coverage() const noexcept {
  const std::uint64_t t = total();
  return t == 0 ? 1.0 : 1.0 - static_cast<double>(counts.masked) / static_cast<double>(t);
}

double CampaignResult::detection() const noexcept {
  const std::uint64_t t = total();
  return t == 0 ? 0.0
                : static_cast<double>(counts.detected_silent + counts.detected_erroneous) /
                      static_cast<double>(t);
}

std::uint64_t situation_count(int width) {
  require_width(width);
  if (width >= 28) {
    throw std::overflow_error("situation count for width " + std::to_string(width) +
                              " exceeds 64 bits");
  }
  return std::uint64_t{bitsim::kFaultsPerCell} * static_cast<std::uint64_t>(width)
         << (2 * width);
}

bool within_budget(int width, std::uint64_t budget) noexcept {
  if (width < kMinWidth || width >= 28) return false;
  return situation_count(width) <= budget;
}

std::uint64_t budget_from_environment() {
  const char* raw = std::getenv("SCK_BUDGET");
  if (raw == nullptr || *raw == '\0') return kDefaultBudget;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (errno != 0 || end == raw || *end != '\0' || v == 0 || raw[0] == '-') {
    throw std::invalid_argument(std::string("SCK_BUDGET is not a positive integer: ") + raw);
  }
  return v;
}

bool operands_valid(Operator op, Word op1, Word op2) noexcept {
  return op != Operator::div || division_precondition(op1, op2) == DivStatus::ok;
}

namespace {

Word reference_result(Operator op, Word a, Word b) {
  const int n = a.width();
  switch (op) {
    case Operator::add: return Word::from_bits(std::uint64_t{a.bits()} + b.bits(), n);
    case Operator::sub: return Word::from_bits(std::uint64_t{a.bits()} - b.bits(), n);
    case Operator::mul: return Word::from_bits(std::uint64_t{a.bits()} * b.bits(), n);
    case Operator::div: return Word::from_signed(a.to_signed() / b.to_signed(), n);
  }
  return a;
}

OutcomeClass classify_with(const CampaignSpec& spec, const FaultyEngine& faulty,
                           const ArithmeticEngine& control, Word op1, Word op2) {
  Word ris;
  std::optional<Word> rem;
  switch (spec.op) {
    case Operator::add: ris = faulty.add(op1, op2); break;
    case Operator::sub: ris = faulty.sub(op1, op2); break;
    case Operator::mul: ris = faulty.mul(op1, op2); break;
    case Operator::div: {
      const DivResult qr = faulty.divrem(op1, op2);
      ris = qr.quotient;
      rem = qr.remainder;
      break;
    }
  }
  const bool correct = ris == reference_result(spec.op, op1, op2);
  const bool pass = run_check(spec.op, spec.technique, op1, op2, ris, rem, control);
  if (correct) return pass ? OutcomeClass::correct_silent : OutcomeClass::detected_silent;
  return pass ? OutcomeClass::masked : OutcomeClass::detected_erroneous;
}

void require_domain(const CampaignSpec& spec, Word op1, Word op2, int width) {
  if (op1.width() != width || op2.width() != width) {
    throw std::invalid_argument("operand width does not match campaign width");
  }
  if (!operands_valid(spec.op, op1, op2)) {
    throw std::invalid_argument("operands outside the division domain");
  }
}

// Visits every valid (op1, op2) of a fault; returns the skipped count.
template <class Visit>
std::uint64_t for_each_pair(const CampaignSpec& spec, Visit&& visit) {
  const int n = spec.width;
  const std::uint32_t last = width_mask(n);
  std::uint64_t skipped = 0;
  for (std::uint64_t a = 0; a <= last; ++a) {
    const Word op1 = Word::from_bits(a, n);
    for (std::uint64_t b = 0; b <= last; ++b) {
      const Word op2 = Word::from_bits(b, n);
      if (!operands_valid(spec.op, op1, op2)) {
        ++skipped;
        continue;
      }
      visit(op1, op2);
    }
  }
  return skipped;
}

}  // namespace

OutcomeClass classify(const CampaignSpec& spec, const FaultyEngine& faulty, Word op1,
                      Word op2) {
  require_domain(spec, op1, op2, faulty.width());
  if (spec.mode == Mode::same_unit) return classify_with(spec, faulty, faulty, op1, op2);
  const ReferenceEngine reference(faulty.width());
  return classify_with(spec, faulty, reference, op1, op2);
}

OutcomeClass classify(const CampaignSpec& spec, const FaultDescriptor& fault, Word op1,
                      Word op2) {
  spec.validate();
  return classify(spec, FaultyEngine(spec.width, fault), op1, op2);
}

ClassCounts tally_fault_range(const CampaignSpec& spec, std::size_t first, std::size_t last,
                              std::uint64_t* skipped) {
  spec.validate();
  const std::vector<FaultDescriptor> faults = bitsim::enumerate_faults(spec.width);
  if (first > last || last > faults.size()) {
    throw std::out_of_range("fault range outside the fault universe");
  }
  const ReferenceEngine reference(spec.width);
  ClassCounts counts;
  std::uint64_t skip = 0;
  for (std::size_t f = first; f < last; ++f) {
    const FaultyEngine faulty(spec.width, faults[f]);
    const ArithmeticEngine& control =
        spec.mode == Mode::same_unit ? static_cast<const ArithmeticEngine&>(faulty)
                                     : reference;
    skip += for_each_pair(spec, [&](Word op1, Word op2) {
      counts.add(classify_with(spec, faulty, control, op1, op2));
    });
  }
  if (skipped != nullptr) *skipped = skip;
  return counts;
}

CampaignResult run_exhaustive(const CampaignSpec& spec, const RunOptions& options) {
  spec.validate();
  if (!spec.exhaustive()) throw std::invalid_argument("campaign is sampled");
  if (!within_budget(spec.width, options.budget)) {
    throw BudgetExceeded("exhaustive " + std::to_string(spec.width) +
                         "-bit campaign exceeds the enumeration budget of " +
                         std::to_string(options.budget) +
                         " situations; use sampling (--sample N --seed S) instead");
  }
  const std::size_t fault_count =
      static_cast<std::size_t>(spec.width) * bitsim::kFaultsPerCell;
  std::vector<ClassCounts> per_fault(fault_count);
  std::vector<std::uint64_t> skipped(fault_count, 0);
  detail::parallel_for(fault_count, options.threads, [&](std::size_t f) {
    per_fault[f] = tally_fault_range(spec, f, f + 1, &skipped[f]);
  });
  CampaignResult result{spec, {}, 0, std::nullopt};
  for (std::size_t f = 0; f < fault_count; ++f) {
    result.counts += per_fault[f];
    result.skipped += skipped[f];
  }
  return result;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

Interval wald_interval(double p, std::uint64_t n) {
  if (n == 0) return {0.0, 1.0};
  const double half = 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return {std::max(0.0, p - half), std::min(1.0, p + half)};
}

}  // namespace

CampaignResult run_sampled(const CampaignSpec& spec, const RunOptions& options) {
  spec.validate();
  const auto* sampling = std::get_if<Sampled>(&spec.sampling);
  if (sampling == nullptr) throw std::invalid_argument("campaign is exhaustive");

  const int n = spec.width;
  const std::vector<FaultDescriptor> faults = bitsim::enumerate_faults(n);
  const std::uint64_t blocks = (sampling->count + kSampleBlock - 1) / kSampleBlock;
  std::vector<ClassCounts> per_block(blocks);
  std::vector<std::uint64_t> skipped(blocks, 0);

  detail::parallel_for(blocks, options.threads, [&](std::size_t b) {
    std::mt19937_64 rng(splitmix64(sampling->seed ^ splitmix64(b)));
    std::uniform_int_distribution<std::size_t> pick_fault(0, faults.size() - 1);
    std::uniform_int_distribution<std::uint32_t> pick_operand(0, width_mask(n));
    const ReferenceEngine reference(n);
    const std::uint64_t begin = b * kSampleBlock;
    const std::uint64_t end = std::min(sampling->count, begin + kSampleBlock);
    ClassCounts counts;
    std::uint64_t skip = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      const std::size_t f = pick_fault(rng);
      const Word op1 = Word::from_bits(pick_operand(rng), n);
      const Word op2 = Word::from_bits(pick_operand(rng), n);
      if (!operands_valid(spec.op, op1, op2)) {
        ++skip;
        continue;
      }
      const FaultyEngine faulty(n, faults[f]);
      const ArithmeticEngine& control =
          spec.mode == Mode::same_unit ? static_cast<const ArithmeticEngine&>(faulty)
                                       : reference;
      counts.add(classify_with(spec, faulty, control, op1, op2));
    }
    per_block[b] = counts;
    skipped[b] = skip;
  });

  CampaignResult result{spec, {}, 0, std::nullopt};
  for (std::uint64_t b = 0; b < blocks; ++b) {
    result.counts += per_block[b];
    result.skipped += skipped[b];
  }
  result.confidence = wald_interval(result.coverage(), result.total());
  return result;
}

CampaignResult run_campaign(const CampaignSpec& spec, const RunOptions& options) {
  return spec.exhaustive() ? run_exhaustive(spec, options) : run_sampled(spec, options);
}

std::vector<std::uint64_t> masked_situations(const CampaignSpec& spec) {
  spec.validate();
  if (!spec.exhaustive()) throw std::invalid_argument("campaign is sampled");
  if (!within_budget(spec.width, kDefaultBudget)) {
    throw BudgetExceeded("masked situation sets are limited to enumerable widths");
  }
  const std::vector<FaultDescriptor> faults = bitsim::enumerate_faults(spec.width);
  const ReferenceEngine reference(spec.width);
  std::vector<std::uint64_t> ids;
  for (std::size_t f = 0; f < faults.size(); ++f) {
    const FaultyEngine faulty(spec.width, faults[f]);
    const ArithmeticEngine& control =
        spec.mode == Mode::same_unit ? static_cast<const ArithmeticEngine&>(faulty)
                                     : reference;
    for_each_pair(spec, [&](Word op1, Word op2) {
      if (classify_with(spec, faulty, control, op1, op2) == OutcomeClass::masked) {
        ids.push_back(situation_id(spec.width, f, op1.bits(), op2.bits()));
      }
    });
  }
  return ids;  // generated in increasing id order
}

DetectionTally detection_tally(const CampaignResult& result) {
  const ClassCounts& c = result.counts;
  return {c.detected_erroneous + c.masked, c.detected_silent + c.detected_erroneous,
          c.detected_silent};
}

}  // namespace sck::coverage
