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

#include "sck/fir.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <chrono>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "parallel.hpp"

namespace sck::fir {

namespace {

constexpr std::int64_t kDefaultTaps[] = {-12, -31, -38, 0,   105, 262, 418, 512,
                                         512, 418, 262, 105, 0,   -38, -31, -12};

}  // namespace

std::string_view to_string(Variant v) noexcept {
  switch (v) {
    case Variant::plain: return "plain";
    case Variant::checked: return "checked";
    case Variant::embedded: return "embedded";
  }
  return "?";
}

std::span<const std::int64_t> default_taps() noexcept { return kDefaultTaps; }

void FirConfig::validate() const {
  const IntegerRange r = signed_range(width);
  if (taps.empty()) throw std::invalid_argument("FIR needs at least one tap");
  for (std::size_t i = 0; i < taps.size(); ++i) {
    if (taps[i] < r.low || taps[i] > r.high) {
      throw std::invalid_argument(fmt::format("tap {} = {} does not fit {} signed bits", i,
                                              taps[i], width));
    }
  }
  policy.validate();
}

std::vector<Word> FirConfig::tap_words() const {
  std::vector<Word> out;
  out.reserve(taps.size());
  for (std::int64_t t : taps) out.push_back(Word::from_signed(t, width));
  return out;
}

FirConfig FirConfig::benchmark_default() {
  FirConfig cfg;
  cfg.taps.assign(std::begin(kDefaultTaps), std::end(kDefaultTaps));
  return cfg;
}

FirConfig FirConfig::campaign_default() {
  FirConfig cfg;
  cfg.taps = {3, -5, 7};
  cfg.width = 8;
  cfg.input_length = 16;
  cfg.policy = CheckPolicy::uniform(CheckTechnique::both);
  cfg.variant = Variant::checked;
  return cfg;
}

std::vector<CheckedValue> to_checked(std::span<const Word> input) {
  std::vector<CheckedValue> out;
  out.reserve(input.size());
  for (Word w : input) out.emplace_back(w);
  return out;
}

namespace {

template <class E>
std::vector<Word> plain_kernel(const FirConfig& cfg, std::span<const Word> input,
                               const E& engine) {
  const std::vector<Word> taps = cfg.tap_words();
  std::vector<Word> out(input.size());
  for (std::size_t k = 0; k < input.size(); ++k) {
    Word acc = engine.mul(taps[0], input[k]);
    const std::size_t reach = std::min(k, taps.size() - 1);
    for (std::size_t j = 1; j <= reach; ++j) {
      acc = engine.add(acc, engine.mul(taps[j], input[k - j]));
    }
    out[k] = acc;
  }
  return out;
}

template <class N, class C, class Techniques>
FirOutput checked_kernel(const FirConfig& cfg, std::span<const CheckedValue> input,
                         const N& nominal, const C& control, Techniques tech) {
  CheckPolicy policy = cfg.policy;
  policy.add = tech.add;
  policy.mul = tech.mul;
  std::vector<CheckedValue> taps;
  taps.reserve(cfg.taps.size());
  for (Word w : cfg.tap_words()) taps.emplace_back(w);

  FirOutput out{std::vector<Word>(input.size()), std::vector<bool>(input.size())};
  for (std::size_t k = 0; k < input.size(); ++k) {
    CheckedValue acc = checked_mul(taps[0], input[k], policy, nominal, control);
    const std::size_t reach = std::min(k, taps.size() - 1);
    for (std::size_t j = 1; j <= reach; ++j) {
      acc = checked_add(acc, checked_mul(taps[j], input[k - j], policy, nominal, control),
                        policy, nominal, control);
    }
    out.output[k] = acc.word();
    out.flags[k] = acc.error();
  }
  return out;
}

// Hand-inlined controls on raw words, same recipes as run_check.
template <class C>
inline bool mul_ok(CheckTechnique t, Word a, Word b, Word p, const C& c) {
  bool ok = true;
  if (t != CheckTechnique::tech2) ok = c.add(p, c.mul(c.neg(a), b)).bits() == 0;
  if (t != CheckTechnique::tech1) ok = (c.add(p, c.mul(a, c.neg(b))).bits() == 0) & ok;
  return ok;
}

template <class C>
inline bool add_ok(CheckTechnique t, Word a, Word b, Word s, const C& c) {
  bool ok = true;
  if (t != CheckTechnique::tech2) ok = c.sub(s, a) == b;
  if (t != CheckTechnique::tech1) ok = (c.sub(s, b) == a) & ok;
  return ok;
}

template <class N, class C, class Techniques>
FirOutput embedded_kernel(const FirConfig& cfg, std::span<const CheckedValue> input,
                          const N& nominal, const C& control, Techniques tech) {
  const std::vector<Word> taps = cfg.tap_words();
  const CheckTechnique tm = tech.mul, ta = tech.add;
  const int n = cfg.width;
  if (nominal.width() != n || control.width() != n) {
    throw std::invalid_argument("engine width does not match the filter width");
  }

  FirOutput out{std::vector<Word>(input.size()), std::vector<bool>(input.size())};
  for (std::size_t k = 0; k < input.size(); ++k) {
    if (input[k].width() != n) throw std::invalid_argument("sample width mismatch");
    Word acc = nominal.mul(taps[0], input[k].word());
    bool err = !mul_ok(tm, taps[0], input[k].word(), acc, control) | input[k].error();
    const std::size_t reach = std::min(k, taps.size() - 1);
    for (std::size_t j = 1; j <= reach; ++j) {
      const Word x = input[k - j].word();
      const Word p = nominal.mul(taps[j], x);
      const bool p_err = !mul_ok(tm, taps[j], x, p, control) | input[k - j].error();
      const Word s = nominal.add(acc, p);
      err = !add_ok(ta, acc, p, s, control) | err | p_err;
      acc = s;
    }
    out.output[k] = acc;
    out.flags[k] = err;
  }
  return out;
}

// Add and mul techniques known at compile time, so the per-operation
// technique dispatch folds away in the kernels.
template <CheckTechnique A, CheckTechnique M>
struct FixedTechniques {
  static constexpr CheckTechnique add = A;
  static constexpr CheckTechnique mul = M;
};

template <class Run>
FirOutput with_fixed_techniques(const CheckPolicy& p, Run&& run) {
  using T = CheckTechnique;
  auto by_mul = [&]<T A>() {
    switch (p.mul) {
      case T::tech1: return run(FixedTechniques<A, T::tech1>{});
      case T::tech2: return run(FixedTechniques<A, T::tech2>{});
      case T::both: break;
    }
    return run(FixedTechniques<A, T::both>{});
  };
  switch (p.add) {
    case T::tech1: return by_mul.template operator()<T::tech1>();
    case T::tech2: return by_mul.template operator()<T::tech2>();
    case T::both: break;
  }
  return by_mul.template operator()<T::both>();
}

}  // namespace

std::vector<Word> fir_plain(const FirConfig& cfg, std::span<const Word> input,
                            const ArithmeticEngine& engine) {
  return plain_kernel(cfg, input, engine);
}

std::vector<Word> fir_plain(const FirConfig& cfg, std::span<const Word> input,
                            const ReferenceEngine& engine) {
  return plain_kernel(cfg, input, engine);
}

FirOutput fir_checked(const FirConfig& cfg, std::span<const CheckedValue> input,
                      const ArithmeticEngine& nominal, const ArithmeticEngine& control) {
  return checked_kernel(cfg, input, nominal, control, cfg.policy);
}

FirOutput fir_checked(const FirConfig& cfg, std::span<const CheckedValue> input,
                      const ReferenceEngine& engine) {
  return with_fixed_techniques(cfg.policy, [&](auto tech) {
    return checked_kernel(cfg, input, engine, engine, tech);
  });
}

FirOutput fir_embedded(const FirConfig& cfg, std::span<const CheckedValue> input,
                       const ArithmeticEngine& nominal, const ArithmeticEngine& control) {
  return embedded_kernel(cfg, input, nominal, control, cfg.policy);
}

FirOutput fir_embedded(const FirConfig& cfg, std::span<const CheckedValue> input,
                       const ReferenceEngine& engine) {
  return with_fixed_techniques(cfg.policy, [&](auto tech) {
    return embedded_kernel(cfg, input, engine, engine, tech);
  });
}

FirOutput run_variant(const FirConfig& cfg, std::span<const CheckedValue> input,
                      const ArithmeticEngine& nominal, const ArithmeticEngine& control) {
  switch (cfg.variant) {
    case Variant::checked: return fir_checked(cfg, input, nominal, control);
    case Variant::embedded: return fir_embedded(cfg, input, nominal, control);
    case Variant::plain: break;
  }
  std::vector<Word> raw;
  raw.reserve(input.size());
  for (const CheckedValue& v : input) raw.push_back(v.word());
  FirOutput out{fir_plain(cfg, raw, nominal), {}};
  out.flags.assign(out.output.size(), false);
  return out;
}

double FirCampaignReport::end_to_end_detection() const noexcept {
  if (erroneous_outputs == 0) return 1.0;
  return static_cast<double>(flagged_erroneous) / static_cast<double>(erroneous_outputs);
}

std::vector<std::vector<Word>> make_corpus(std::size_t count, std::size_t length, int width,
                                           std::uint64_t seed) {
  require_width(width);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, width_mask(width));
  std::vector<std::vector<Word>> corpus(count);
  for (auto& input : corpus) {
    input.reserve(length);
    for (std::size_t i = 0; i < length; ++i) input.push_back(Word::from_bits(pick(rng), width));
  }
  return corpus;
}

FirCampaignReport fir_fault_campaign(const FirConfig& cfg,
                                     std::span<const bitsim::FaultDescriptor> sweep,
                                     std::span<const std::vector<Word>> corpus,
                                     coverage::Mode mode, unsigned threads) {
  cfg.validate();
  if (cfg.variant == Variant::plain) {
    throw std::invalid_argument("fault campaigns need the checked or embedded variant");
  }
  const ReferenceEngine reference(cfg.width);
  std::vector<std::vector<Word>> golden;
  std::vector<std::vector<CheckedValue>> inputs;
  golden.reserve(corpus.size());
  inputs.reserve(corpus.size());
  for (const auto& input : corpus) {
    golden.push_back(fir_plain(cfg, input, reference));
    inputs.push_back(to_checked(input));
  }

  std::vector<FirCampaignReport> per_fault(sweep.size());
  detail::parallel_for(sweep.size(), threads, [&](std::size_t f) {
    const bitsim::FaultyEngine faulty(cfg.width, sweep[f]);
    const ArithmeticEngine& control = mode == coverage::Mode::same_unit
                                          ? static_cast<const ArithmeticEngine&>(faulty)
                                          : reference;
    FirCampaignReport r;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const FirOutput got = run_variant(cfg, inputs[i], faulty, control);
      const bool erroneous = got.output != golden[i];
      const bool flagged = std::find(got.flags.begin(), got.flags.end(), true) != got.flags.end();
      ++r.runs;
      r.erroneous_outputs += erroneous;
      r.flagged_runs += flagged;
      r.flagged_erroneous += erroneous && flagged;
    }
    per_fault[f] = r;
  });

  FirCampaignReport total;
  for (const FirCampaignReport& r : per_fault) {
    total.runs += r.runs;
    total.erroneous_outputs += r.erroneous_outputs;
    total.flagged_runs += r.flagged_runs;
    total.flagged_erroneous += r.flagged_erroneous;
  }
  return total;
}

OverheadReport measure_overhead(const FirConfig& cfg, std::size_t repetitions,
                                std::uint64_t seed) {
  cfg.validate();
  if (repetitions == 0) throw std::invalid_argument("repetitions must be positive");
  const ReferenceEngine engine(cfg.width);
  const std::vector<Word> input = make_corpus(1, cfg.input_length, cfg.width, seed).front();
  const std::vector<CheckedValue> checked_input = to_checked(input);

  using clock = std::chrono::steady_clock;
  auto seconds = [](auto&& run) {
    const auto start = clock::now();
    run();
    return std::chrono::duration<double>(clock::now() - start).count();
  };
  auto median = [](std::vector<double>& v) {
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
  };

  // Variants run round-robin inside each repetition so that drift in machine
  // load affects all three alike. The sink keeps results live.
  volatile std::uint32_t sink = 0;
  std::vector<double> plain, checked, embedded;
  for (std::size_t r = 0; r < repetitions; ++r) {
    plain.push_back(seconds([&] { sink = sink + fir_plain(cfg, input, engine).back().bits(); }));
    checked.push_back(seconds(
        [&] { sink = sink + fir_checked(cfg, checked_input, engine).output.back().bits(); }));
    embedded.push_back(seconds(
        [&] { sink = sink + fir_embedded(cfg, checked_input, engine).output.back().bits(); }));
  }
  OverheadReport report;
  report.repetitions = repetitions;
  report.plain_seconds = median(plain);
  report.checked_seconds = median(checked);
  report.embedded_seconds = median(embedded);
  return report;
}

IntegerRange signed_range(int width) {
  require_width(width);
  return {-(std::int64_t{1} << (width - 1)), (std::int64_t{1} << (width - 1)) - 1};
}

std::vector<std::int64_t> parse_integers(std::string_view text, IntegerRange range) {
  std::vector<std::int64_t> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    ++line_no;
    pos = eol + 1;
    line = line.substr(0, line.find('#'));
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
      if (eol == text.size()) break;
      continue;
    }
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    std::string_view digits = line;
    if (digits.front() == '+' && digits.size() > 1 && digits[1] != '-') digits.remove_prefix(1);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw InputError(fmt::format("line {}: not a decimal integer: '{}'", line_no, line),
                       line_no);
    }
    if (v < range.low || v > range.high) {
      throw InputError(fmt::format("line {}: {} outside [{}, {}]", line_no, v, range.low,
                                   range.high),
                       line_no);
    }
    out.push_back(v);
    if (eol == text.size()) break;
  }
  return out;
}

std::vector<std::int64_t> read_integers(const std::filesystem::path& path,
                                        IntegerRange range) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string(), 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_integers(buf.str(), range);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what(), e.line());
  }
}

std::string to_csv(const FirCampaignReport& r, const FirConfig& cfg, coverage::Mode mode) {
  return fmt::format(
      "variant,mode,width,taps,add_tech,mul_tech,runs,erroneous_outputs,flagged_runs,"
      "flagged_erroneous,end_to_end_detection_pct\n"
      "{},{},{},{},{},{},{},{},{},{},{:.6f}\n",
      to_string(cfg.variant), coverage::to_string(mode), cfg.width, cfg.taps.size(),
      to_string(cfg.policy.add), to_string(cfg.policy.mul), r.runs, r.erroneous_outputs,
      r.flagged_runs, r.flagged_erroneous, 100.0 * r.end_to_end_detection());
}

std::string to_json(const FirCampaignReport& r, const FirConfig& cfg, coverage::Mode mode) {
  nlohmann::ordered_json j;
  j["variant"] = to_string(cfg.variant);
  j["mode"] = coverage::to_string(mode);
  j["width"] = cfg.width;
  j["taps"] = cfg.taps;
  j["add_tech"] = to_string(cfg.policy.add);
  j["mul_tech"] = to_string(cfg.policy.mul);
  j["runs"] = r.runs;
  j["erroneous_outputs"] = r.erroneous_outputs;
  j["flagged_runs"] = r.flagged_runs;
  j["flagged_erroneous"] = r.flagged_erroneous;
  j["end_to_end_detection_pct"] = std::round(1e8 * r.end_to_end_detection()) / 1e6;
  return j.dump(2) + "\n";
}

std::string to_csv(const OverheadReport& r) {
  return fmt::format(
      "repetitions,plain_s,checked_s,embedded_s,checked_over_plain,embedded_over_plain\n"
      "{},{:.9f},{:.9f},{:.9f},{:.4f},{:.4f}\n",
      r.repetitions, r.plain_seconds, r.checked_seconds, r.embedded_seconds, r.checked_ratio(),
      r.embedded_ratio());
}

std::string to_json(const OverheadReport& r) {
  nlohmann::ordered_json j;
  j["repetitions"] = r.repetitions;
  j["plain_s"] = r.plain_seconds;
  j["checked_s"] = r.checked_seconds;
  j["embedded_s"] = r.embedded_seconds;
  j["checked_over_plain"] = r.checked_ratio();
  j["embedded_over_plain"] = r.embedded_ratio();
  return j.dump(2) + "\n";
}

}  // namespace sck::fir
