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

// sck: command-line front end for coverage campaigns, the width sweep of the
// self-checking adder, FIR fault campaigns and overhead measurements.
//
// Exit status: 0 success, 2 usage or input error, 3 budget refusal.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>

#include "sck/bitsim.hpp"
#include "sck/checked.hpp"
#include "sck/coverage.hpp"
#include "sck/fir.hpp"
#include "sck/report.hpp"
#include "sck/table2.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string format = "text";
  std::string output;
  unsigned threads = 0;
};

void add_common(CLI::App& cmd, Common& c) {
  cmd.add_option("--format", c.format, "text, csv or json")->capture_default_str();
  cmd.add_option("--output,-o", c.output, "write the report here instead of stdout");
  cmd.add_option("--threads", c.threads, "worker threads, 0 = all cores")
      ->capture_default_str();
}

sck::report::Format format_of(const Common& c) {
  const auto f = sck::report::parse_format(c.format);
  if (!f) throw UsageError("unknown format '" + c.format + "' (text, csv, json)");
  return *f;
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream out(c.output, std::ios::binary | std::ios::trunc);
  if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size()))) {
    throw sck::fir::InputError("cannot write " + c.output, 0);
  }
}

sck::coverage::RunOptions run_options(unsigned threads) {
  return {threads, sck::coverage::budget_from_environment()};
}

sck::CheckTechnique technique_of(const std::string& s) {
  const auto t = sck::parse_technique(s);
  if (!t) throw UsageError("unknown technique '" + s + "' (tech1, tech2, both)");
  return *t;
}

sck::coverage::Mode mode_of(const std::string& s) {
  const auto m = sck::coverage::parse_mode(s);
  if (!m) throw UsageError("unknown mode '" + s + "' (same-unit, cross-unit)");
  return *m;
}

// coverage ------------------------------------------------------------------

struct CoverageArgs {
  Common common;
  std::string op = "add";
  std::string tech = "tech1";
  std::string mode = "same-unit";
  int bits = 2;
  bool exhaustive = false;
  std::optional<std::uint64_t> sample;
  std::optional<std::uint64_t> seed;
};

int run_coverage(const CoverageArgs& a) {
  const auto op = sck::parse_operator(a.op);
  if (!op) throw UsageError("unknown operator '" + a.op + "' (add, sub, mul, div)");
  sck::coverage::CampaignSpec spec{*op, technique_of(a.tech), a.bits, mode_of(a.mode)};
  if (a.sample) spec.sampling = sck::coverage::Sampled{*a.sample, a.seed.value_or(0)};
  const auto format = format_of(a.common);
  spec.validate();
  const auto result = sck::coverage::run_campaign(spec, run_options(a.common.threads));
  emit(a.common, sck::report::render(std::span(&result, 1), format));
  return kOk;
}

// table2 --------------------------------------------------------------------

struct AddTableArgs {
  Common common;
  bool full = false;
  std::uint64_t samples = 10'000'000;
  std::uint64_t seed = 42;
};

int run_table2(const AddTableArgs& a) {
  const auto format = format_of(a.common);
  sck::table2::Options opt;
  opt.full = a.full;
  opt.samples = a.samples;
  opt.seed = a.seed;
  opt.run = run_options(a.common.threads);
  const auto rows = sck::table2::run(opt);
  switch (format) {
    case sck::report::Format::csv: emit(a.common, sck::table2::to_csv(rows)); break;
    case sck::report::Format::json: emit(a.common, sck::table2::to_json(rows)); break;
    case sck::report::Format::text: emit(a.common, sck::table2::to_text(rows)); break;
  }
  return kOk;
}

// fir -----------------------------------------------------------------------

struct FirArgs {
  Common common;
  bool campaign = false;
  bool bench = false;
  std::string taps;
  std::string input;
  std::optional<int> bits;
  std::optional<std::string> policy;
  std::string mode = "same-unit";
  std::size_t inputs = 100;
  std::optional<std::size_t> length;
  std::uint64_t seed = 1;
  std::size_t reps = 101;
};

std::string campaign_text(const sck::fir::FirCampaignReport& r, const sck::fir::FirConfig& cfg,
                          sck::coverage::Mode mode, std::size_t faults) {
  return fmt::format(
      "FIR fault campaign: {} taps, {} bits, {} variant, {}, add {} / mul {}\n"
      "faults {}, runs {}\n"
      "erroneous outputs   {}\n"
      "flagged runs        {}\n"
      "flagged erroneous   {}\n"
      "end-to-end detection {:.2f}%\n",
      cfg.taps.size(), cfg.width, sck::fir::to_string(cfg.variant),
      sck::coverage::to_string(mode), sck::to_string(cfg.policy.add),
      sck::to_string(cfg.policy.mul), faults, r.runs, r.erroneous_outputs, r.flagged_runs,
      r.flagged_erroneous, 100.0 * r.end_to_end_detection());
}

std::string overhead_text(const sck::fir::OverheadReport& r, const sck::fir::FirConfig& cfg) {
  return fmt::format(
      "FIR overhead: {} taps, {} samples, {} bits, add {} / mul {}, median of {} runs\n"
      "plain     {:>12.3f} us\n"
      "checked   {:>12.3f} us   x{:.3f}\n"
      "embedded  {:>12.3f} us   x{:.3f}\n",
      cfg.taps.size(), cfg.input_length, cfg.width, sck::to_string(cfg.policy.add),
      sck::to_string(cfg.policy.mul), r.repetitions, r.plain_seconds * 1e6,
      r.checked_seconds * 1e6, r.checked_ratio(), r.embedded_seconds * 1e6,
      r.embedded_ratio());
}

int run_fir(const FirArgs& a) {
  const auto format = format_of(a.common);
  const bool bench = a.bench;
  sck::fir::FirConfig cfg =
      bench ? sck::fir::FirConfig::benchmark_default() : sck::fir::FirConfig::campaign_default();
  if (a.bits) cfg.width = *a.bits;
  sck::require_width(cfg.width);
  if (a.policy) cfg.policy = sck::CheckPolicy::uniform(technique_of(*a.policy));
  if (a.length) cfg.input_length = *a.length;
  if (!a.taps.empty()) {
    cfg.taps = sck::fir::read_integers(a.taps, sck::fir::signed_range(cfg.width));
  }
  std::optional<std::vector<sck::Word>> given;
  if (!a.input.empty()) {
    std::vector<sck::Word> samples;
    for (std::int64_t v : sck::fir::read_integers(a.input, sck::fir::signed_range(cfg.width))) {
      samples.push_back(sck::Word::from_signed(v, cfg.width));
    }
    if (samples.empty()) throw sck::fir::InputError(a.input + ": no samples", 0);
    cfg.input_length = samples.size();
    given = std::move(samples);
  }
  cfg.validate();

  if (bench) {
    if (a.reps == 0) throw UsageError("--reps must be positive");
    const auto r = sck::fir::measure_overhead(cfg, a.reps, a.seed);
    switch (format) {
      case sck::report::Format::csv: emit(a.common, sck::fir::to_csv(r)); break;
      case sck::report::Format::json: emit(a.common, sck::fir::to_json(r)); break;
      case sck::report::Format::text: emit(a.common, overhead_text(r, cfg)); break;
    }
    return kOk;
  }

  const auto mode = mode_of(a.mode);
  const auto corpus = given ? std::vector<std::vector<sck::Word>>{*given}
                            : sck::fir::make_corpus(a.inputs, cfg.input_length, cfg.width,
                                                    a.seed);
  const auto sweep = sck::bitsim::enumerate_faults(cfg.width);
  const auto r = sck::fir::fir_fault_campaign(cfg, sweep, corpus, mode, a.common.threads);
  switch (format) {
    case sck::report::Format::csv: emit(a.common, sck::fir::to_csv(r, cfg, mode)); break;
    case sck::report::Format::json: emit(a.common, sck::fir::to_json(r, cfg, mode)); break;
    case sck::report::Format::text:
      emit(a.common, campaign_text(r, cfg, mode, sweep.size()));
      break;
  }
  return kOk;
}

// bench ---------------------------------------------------------------------

struct BenchArgs {
  Common common;
  std::size_t reps = 101;
  int bits = 6;
};

int run_bench(const BenchArgs& a) {
  const auto format = format_of(a.common);
  if (a.reps == 0) throw UsageError("--reps must be positive");
  const sck::fir::FirConfig cfg = sck::fir::FirConfig::benchmark_default();
  const auto overhead = sck::fir::measure_overhead(cfg, a.reps);

  const sck::coverage::CampaignSpec spec{sck::Operator::add, sck::CheckTechnique::both, a.bits,
                                         sck::coverage::Mode::same_unit};
  const auto start = std::chrono::steady_clock::now();
  const auto result = sck::coverage::run_exhaustive(spec, run_options(a.common.threads));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double rate = static_cast<double>(result.total()) / secs;

  switch (format) {
    case sck::report::Format::csv:
      emit(a.common,
           fmt::format("measure,value\nplain_s,{:.9f}\nchecked_s,{:.9f}\nembedded_s,{:.9f}\n"
                       "checked_over_plain,{:.4f}\nembedded_over_plain,{:.4f}\n"
                       "campaign_bits,{}\ncampaign_situations,{}\ncampaign_s,{:.6f}\n"
                       "situations_per_s,{:.0f}\n",
                       overhead.plain_seconds, overhead.checked_seconds,
                       overhead.embedded_seconds, overhead.checked_ratio(),
                       overhead.embedded_ratio(), a.bits, result.total(), secs, rate));
      break;
    case sck::report::Format::json: {
      nlohmann::ordered_json j;
      j["overhead"] = nlohmann::ordered_json::parse(sck::fir::to_json(overhead));
      j["campaign"] = {{"bits", a.bits},
                       {"situations", result.total()},
                       {"seconds", secs},
                       {"situations_per_s", rate}};
      emit(a.common, j.dump(2) + "\n");
      break;
    }
    case sck::report::Format::text:
      emit(a.common, overhead_text(overhead, cfg) +
                         fmt::format("campaign: {} situations ({} bits, add, both) in {:.3f} s, "
                                     "{:.3g} situations/s\n",
                                     result.total(), a.bits, secs, rate));
      break;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-checking arithmetic toolkit: fault coverage campaigns and FIR benchmarks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sck 1.0.0");

  CoverageArgs cov;
  auto* c = app.add_subcommand("coverage", "run one fault-injection campaign");
  c->add_option("--op", cov.op, "add, sub, mul or div")->capture_default_str();
  c->add_option("--bits,-n", cov.bits, "operand width, 1..32")->capture_default_str();
  c->add_option("--tech", cov.tech, "tech1, tech2 or both")->capture_default_str();
  c->add_option("--mode", cov.mode, "same-unit or cross-unit")->capture_default_str();
  auto* ex = c->add_flag("--exhaustive", cov.exhaustive, "enumerate every situation (default)");
  auto* sm = c->add_option("--sample", cov.sample, "draw this many situations at random");
  auto* sd = c->add_option("--seed", cov.seed, "seed for --sample");
  ex->excludes(sm);
  sd->needs(sm);
  add_common(*c, cov.common);

  AddTableArgs t2;
  auto* t = app.add_subcommand("table2", "coverage of the checked + across widths 1, 2, 3, 4, 8");
  t->add_flag("--full", t2.full, "add a sampled 16-bit row");
  t->add_option("--samples", t2.samples, "draws per technique for sampled rows")
      ->capture_default_str();
  t->add_option("--seed", t2.seed, "seed for sampled rows")->capture_default_str();
  add_common(*t, t2.common);

  FirArgs fa;
  auto* f = app.add_subcommand("fir", "FIR fault campaign (default) or overhead measurement");
  auto* fc = f->add_flag("--campaign", fa.campaign, "single-fault sweep over every chain fault");
  auto* fb = f->add_flag("--bench", fa.bench, "time plain, checked and embedded filters");
  fc->excludes(fb);
  f->add_option("--taps", fa.taps, "coefficient file, one integer per line");
  f->add_option("--input", fa.input, "sample file, one integer per line");
  f->add_option("--bits,-n", fa.bits, "sample width, 1..32");
  f->add_option("--policy", fa.policy, "tech1, tech2 or both for + and *");
  f->add_option("--mode", fa.mode, "same-unit or cross-unit")->capture_default_str();
  f->add_option("--inputs", fa.inputs, "random inputs in the campaign corpus")
      ->capture_default_str();
  f->add_option("--length", fa.length, "samples per input");
  f->add_option("--seed", fa.seed, "corpus seed")->capture_default_str();
  f->add_option("--reps", fa.reps, "timed repetitions for --bench")->capture_default_str();
  add_common(*f, fa.common);

  BenchArgs ba;
  auto* b = app.add_subcommand("bench", "FIR overhead plus campaign throughput");
  b->add_option("--reps", ba.reps, "timed repetitions")->capture_default_str();
  b->add_option("--bits,-n", ba.bits, "width of the timed exhaustive campaign")
      ->capture_default_str();
  add_common(*b, ba.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (c->parsed()) return run_coverage(cov);
    if (t->parsed()) return run_table2(t2);
    if (f->parsed()) return run_fir(fa);
    if (b->parsed()) return run_bench(ba);
  } catch (const sck::coverage::BudgetExceeded& e) {
    std::cerr << "sck: " << e.what() << "\n";
    return kBudget;
  } catch (const sck::fir::InputError& e) {
    std::cerr << "sck: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "sck: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "sck: " << e.what() << "\n";
    return kUsage;
  } catch (const std::overflow_error& e) {
    std::cerr << "sck: " << e.what() << "\n";
    return kBudget;
  }
  return kUsage;
}
