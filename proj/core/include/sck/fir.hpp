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

#ifndef SCK_FIR_HPP_
#define SCK_FIR_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sck/bitsim.hpp"
#include "sck/checked.hpp"
#include "sck/coverage.hpp"
#include "sck/engine.hpp"

namespace sck::fir {

enum class Variant : std::uint8_t { plain, checked, embedded };

std::string_view to_string(Variant v) noexcept;

/// 16-tap symmetric low-pass used by the overhead benchmark.
std::span<const std::int64_t> default_taps() noexcept;

struct FirConfig {
  std::vector<std::int64_t> taps;
  int width = 16;
  std::size_t input_length = 4096;
  CheckPolicy policy = CheckPolicy::uniform(CheckTechnique::tech1);
  Variant variant = Variant::checked;

  /// Throws std::invalid_argument on empty taps, a bad width, a coefficient
  /// outside the signed n-bit range, or a division-`both` policy.
  void validate() const;

  std::vector<Word> tap_words() const;

  /// 16 taps, 4096 samples, 16 bits.
  static FirConfig benchmark_default();
  /// 3 taps, 8 bits, both controls: the fault-injection workload.
  static FirConfig campaign_default();
};

struct FirOutput {
  std::vector<Word> output;
  std::vector<bool> flags;

  friend bool operator==(const FirOutput&, const FirOutput&) = default;
};

// y[k] = sum_{j <= min(k, taps-1)} taps[j] * x[k - j], accumulated left to
// right starting from the j = 0 product. Every multiply and add goes through
// the engine.

std::vector<Word> fir_plain(const FirConfig& cfg, std::span<const Word> input,
                            const ArithmeticEngine& engine);

/// Same dataflow on CheckedValue operations; each output carries the sticky
/// error bit of everything that reached it.
FirOutput fir_checked(const FirConfig& cfg, std::span<const CheckedValue> input,
                      const ArithmeticEngine& nominal, const ArithmeticEngine& control);

/// fir_checked with the controls written out inline on raw words.
FirOutput fir_embedded(const FirConfig& cfg, std::span<const CheckedValue> input,
                       const ArithmeticEngine& nominal, const ArithmeticEngine& control);

std::vector<CheckedValue> to_checked(std::span<const Word> input);

inline FirOutput fir_checked(const FirConfig& cfg, std::span<const Word> input,
                             const ArithmeticEngine& engine) {
  const auto in = to_checked(input);
  return fir_checked(cfg, in, engine, engine);
}
inline FirOutput fir_embedded(const FirConfig& cfg, std::span<const Word> input,
                              const ArithmeticEngine& engine) {
  const auto in = to_checked(input);
  return fir_embedded(cfg, in, engine, engine);
}

// The same three kernels bound statically to the reference engine, so every
// operation compiles to native integer arithmetic. Used for timing.
std::vector<Word> fir_plain(const FirConfig& cfg, std::span<const Word> input,
                            const ReferenceEngine& engine);
FirOutput fir_checked(const FirConfig& cfg, std::span<const CheckedValue> input,
                      const ReferenceEngine& engine);
FirOutput fir_embedded(const FirConfig& cfg, std::span<const CheckedValue> input,
                       const ReferenceEngine& engine);

/// Runs the configured variant.
FirOutput run_variant(const FirConfig& cfg, std::span<const CheckedValue> input,
                      const ArithmeticEngine& nominal, const ArithmeticEngine& control);

struct FirCampaignReport {
  std::uint64_t runs = 0;
  std::uint64_t erroneous_outputs = 0;  // output stream differs from fault-free
  std::uint64_t flagged_runs = 0;       // any output flag raised
  std::uint64_t flagged_erroneous = 0;  // both of the above

  /// flagged_erroneous / erroneous_outputs; 1 when nothing was erroneous.
  double end_to_end_detection() const noexcept;

  friend bool operator==(const FirCampaignReport&, const FirCampaignReport&) = default;
};

/// `count` uniformly random inputs of `length` samples.
std::vector<std::vector<Word>> make_corpus(std::size_t count, std::size_t length, int width,
                                           std::uint64_t seed);

/// One filter run per (fault, input). Nominal operations run on the faulty
/// chain; controls run there too (same unit) or on a fault-free unit.
FirCampaignReport fir_fault_campaign(const FirConfig& cfg,
                                     std::span<const bitsim::FaultDescriptor> sweep,
                                     std::span<const std::vector<Word>> corpus,
                                     coverage::Mode mode = coverage::Mode::same_unit,
                                     unsigned threads = 0);

struct OverheadReport {
  std::size_t repetitions = 0;
  double plain_seconds = 0;
  double checked_seconds = 0;
  double embedded_seconds = 0;

  double checked_ratio() const noexcept { return checked_seconds / plain_seconds; }
  double embedded_ratio() const noexcept { return embedded_seconds / plain_seconds; }
};

/// Median wall-clock of each variant on the reference engine over
/// `repetitions` runs of one random input of cfg.input_length samples.
OverheadReport measure_overhead(const FirConfig& cfg, std::size_t repetitions,
                                std::uint64_t seed = 1);

/// Malformed or unreadable input; `line` is 1-based, 0 when not applicable.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct IntegerRange {
  std::int64_t low = std::numeric_limits<std::int64_t>::min();
  std::int64_t high = std::numeric_limits<std::int64_t>::max();
};

/// Inclusive range of the n-bit two's-complement integers.
IntegerRange signed_range(int width);

/// One decimal integer per line; blank lines and '#' comments are skipped.
/// Values outside `range` are rejected with their line number.
std::vector<std::int64_t> read_integers(const std::filesystem::path& path,
                                        IntegerRange range = {});
std::vector<std::int64_t> parse_integers(std::string_view text, IntegerRange range = {});

std::string to_csv(const FirCampaignReport& r, const FirConfig& cfg, coverage::Mode mode);
std::string to_json(const FirCampaignReport& r, const FirConfig& cfg, coverage::Mode mode);
std::string to_csv(const OverheadReport& r);
std::string to_json(const OverheadReport& r);

}  // namespace sck::fir

#endif  // SCK_FIR_HPP_
