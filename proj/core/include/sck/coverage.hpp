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

#ifndef SCK_COVERAGE_HPP_
#define SCK_COVERAGE_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <variant>
#include <vector>

#include "sck/bitsim.hpp"
#include "sck/checked.hpp"
#include "sck/engine.hpp"

namespace sck::coverage {

/// Whether the controls run on the faulty unit that produced the nominal
/// result (worst case) or on an independent fault-free unit.
enum class Mode : std::uint8_t { same_unit, cross_unit };

std::string_view to_string(Mode m) noexcept;
std::optional<Mode> parse_mode(std::string_view s) noexcept;

struct Exhaustive {
  friend bool operator==(const Exhaustive&, const Exhaustive&) = default;
};

struct Sampled {
  std::uint64_t count = 0;  // >= kMinSamples
  std::uint64_t seed = 0;
  friend bool operator==(const Sampled&, const Sampled&) = default;
};

inline constexpr std::uint64_t kMinSamples = 10'000;
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 34;
/// Samples per independently seeded block of the sampling stream.
inline constexpr std::uint64_t kSampleBlock = std::uint64_t{1} << 16;

struct CampaignSpec {
  Operator op = Operator::add;
  CheckTechnique technique = CheckTechnique::tech1;
  int width = 1;
  Mode mode = Mode::same_unit;
  std::variant<Exhaustive, Sampled> sampling = Exhaustive{};

  bool exhaustive() const noexcept {
    return std::holds_alternative<Exhaustive>(sampling);
  }
  /// Throws std::invalid_argument on a bad width, division with `both`, or
  /// too few samples.
  void validate() const;

  friend bool operator==(const CampaignSpec&, const CampaignSpec&) = default;
};

enum class OutcomeClass : std::uint8_t {
  correct_silent,      // result correct, every control passed
  detected_silent,     // result correct, a control failed
  detected_erroneous,  // result wrong, a control failed
  masked,              // result wrong, every control passed
};

std::string_view to_string(OutcomeClass c) noexcept;

struct ClassCounts {
  std::uint64_t correct_silent = 0;
  std::uint64_t detected_silent = 0;
  std::uint64_t detected_erroneous = 0;
  std::uint64_t masked = 0;

  std::uint64_t total() const noexcept {
    return correct_silent + detected_silent + detected_erroneous + masked;
  }
  void add(OutcomeClass c) noexcept;
  ClassCounts& operator+=(const ClassCounts& o) noexcept;
  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

struct Interval {
  double low = 0;
  double high = 0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct CampaignResult {
  CampaignSpec spec;
  ClassCounts counts;
  /// Division operand pairs outside the operator's domain; not situations.
  std::uint64_t skipped = 0;
  /// 95% normal-approximation interval on coverage; sampled runs only.
  std::optional<Interval> confidence;

  std::uint64_t total() const noexcept { return counts.total(); }
  /// 1 - masked / total.
  double coverage() const noexcept;
  /// (detected_silent + detected_erroneous) / total.
  double detection() const noexcept;

  friend bool operator==(const CampaignResult&, const CampaignResult&) = default;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 32 * n * 4^n. Throws std::overflow_error when that does not fit 64 bits
/// (n >= 28).
std::uint64_t situation_count(int width);

bool within_budget(int width, std::uint64_t budget) noexcept;

/// Budget from the SCK_BUDGET environment variable, else kDefaultBudget.
/// Throws std::invalid_argument when the variable is not a positive integer.
std::uint64_t budget_from_environment();

/// Situation identifier: (fault_index * 2^n + op1) * 2^n + op2.
constexpr std::uint64_t situation_id(int width, std::uint64_t fault_index,
                                     std::uint32_t op1, std::uint32_t op2) noexcept {
  return (((fault_index << width) | op1) << width) | op2;
}

/// False for the division pairs that are error preconditions.
bool operands_valid(Operator op, Word op1, Word op2) noexcept;

/// Classifies one situation. Throws std::invalid_argument for operands
/// outside the operator's domain.
OutcomeClass classify(const CampaignSpec& spec,
                      const bitsim::FaultDescriptor& fault, Word op1, Word op2);

/// Same, with a prebuilt faulty engine (the campaign hot path).
OutcomeClass classify(const CampaignSpec& spec,
                      const bitsim::FaultyEngine& faulty, Word op1, Word op2);

struct RunOptions {
  unsigned threads = 0;  // 0 = hardware concurrency
  std::uint64_t budget = kDefaultBudget;
};

/// Every (fault, op1, op2) triple. Throws BudgetExceeded when
/// situation_count(width) > budget.
CampaignResult run_exhaustive(const CampaignSpec& spec,
                              const RunOptions& options = {});

/// Uniform independent draws from the situation space. Block b of the stream
/// is seeded from (seed, b), so results do not depend on the thread count.
CampaignResult run_sampled(const CampaignSpec& spec,
                           const RunOptions& options = {});

/// Dispatches on spec.sampling.
CampaignResult run_campaign(const CampaignSpec& spec,
                            const RunOptions& options = {});

/// Tallies faults [first, last) of enumerate_faults(width) sequentially.
/// Summing the tallies of any partition of [0, 32n) reproduces
/// run_exhaustive's counts.
ClassCounts tally_fault_range(const CampaignSpec& spec, std::size_t first,
                              std::size_t last, std::uint64_t* skipped = nullptr);

/// Sorted identifiers of every masked situation of an exhaustive campaign.
std::vector<std::uint64_t> masked_situations(const CampaignSpec& spec);

struct DetectionTally {
  std::uint64_t observable_errors = 0;  // detected_erroneous + masked
  std::uint64_t detections = 0;         // detected_silent + detected_erroneous
  std::uint64_t silent_detections = 0;  // detected_silent only
};

DetectionTally detection_tally(const CampaignResult& result);

}  // namespace sck::coverage

#endif  // SCK_COVERAGE_HPP_
