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

#include "sck/report.hpp"

#include <fmt/format.h>

#include <cmath>
#include <nlohmann/json.hpp>

namespace sck::report {

using coverage::CampaignResult;
using coverage::Sampled;

std::optional<Format> parse_format(std::string_view s) noexcept {
  if (s == "text") return Format::text;
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  return std::nullopt;
}

namespace {

double pct(double fraction) { return 100.0 * fraction; }

double round6(double v) { return std::round(v * 1e6) / 1e6; }

const Sampled* sampling_of(const CampaignResult& r) {
  return std::get_if<Sampled>(&r.spec.sampling);
}

}  // namespace

std::string csv_header() {
  return "operator,technique,mode,width,total,correct_silent,detected_silent,"
         "detected_erroneous,masked,skipped,coverage_pct,detection_pct,"
         "sample_count,seed,ci_low,ci_high";
}

std::string csv_row(const CampaignResult& r) {
  const Sampled* s = sampling_of(r);
  std::string out = fmt::format(
      "{},{},{},{},{},{},{},{},{},{},{:.6f},{:.6f},{},", to_string(r.spec.op),
      to_string(r.spec.technique), to_string(r.spec.mode), r.spec.width, r.total(),
      r.counts.correct_silent, r.counts.detected_silent, r.counts.detected_erroneous,
      r.counts.masked, r.skipped, pct(r.coverage()), pct(r.detection()),
      s != nullptr ? s->count : 0);
  if (s != nullptr) out += std::to_string(s->seed);
  out += ',';
  if (r.confidence) {
    out += fmt::format("{:.6f},{:.6f}", pct(r.confidence->low), pct(r.confidence->high));
  } else {
    out += ',';
  }
  return out;
}

std::string to_csv(std::span<const CampaignResult> results) {
  std::string out = csv_header() + "\n";
  for (const CampaignResult& r : results) out += csv_row(r) + "\n";
  return out;
}

std::string to_json(std::span<const CampaignResult> results) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const CampaignResult& r : results) {
    const Sampled* s = sampling_of(r);
    nlohmann::ordered_json j;
    j["operator"] = to_string(r.spec.op);
    j["technique"] = to_string(r.spec.technique);
    j["mode"] = to_string(r.spec.mode);
    j["width"] = r.spec.width;
    j["total"] = r.total();
    j["correct_silent"] = r.counts.correct_silent;
    j["detected_silent"] = r.counts.detected_silent;
    j["detected_erroneous"] = r.counts.detected_erroneous;
    j["masked"] = r.counts.masked;
    j["skipped"] = r.skipped;
    j["coverage_pct"] = round6(pct(r.coverage()));
    j["detection_pct"] = round6(pct(r.detection()));
    j["sample_count"] = s != nullptr ? s->count : 0;
    j["seed"] = s != nullptr ? nlohmann::ordered_json(s->seed) : nlohmann::ordered_json();
    j["ci_low"] = r.confidence ? nlohmann::ordered_json(round6(pct(r.confidence->low)))
                               : nlohmann::ordered_json();
    j["ci_high"] = r.confidence ? nlohmann::ordered_json(round6(pct(r.confidence->high)))
                                : nlohmann::ordered_json();
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string to_text(std::span<const CampaignResult> results) {
  std::string out = fmt::format("{:<4} {:<6} {:<10} {:>5} {:>14} {:>14} {:>12} {:>12} {:>10} {:>9} {:>9}\n",
                                "op", "tech", "mode", "bits", "total", "correct_silent",
                                "det_silent", "det_erroneous", "masked", "coverage", "detection");
  for (const CampaignResult& r : results) {
    out += fmt::format("{:<4} {:<6} {:<10} {:>5} {:>14} {:>14} {:>12} {:>12} {:>10} {:>8.2f}% {:>8.2f}%\n",
                       symbol(r.spec.op), to_string(r.spec.technique), to_string(r.spec.mode),
                       r.spec.width, r.total(), r.counts.correct_silent, r.counts.detected_silent,
                       r.counts.detected_erroneous, r.counts.masked, pct(r.coverage()),
                       pct(r.detection()));
    if (r.skipped != 0) {
      out += fmt::format("     skipped {} division operand pairs (zero divisor or overflow)\n",
                         r.skipped);
    }
    if (const Sampled* s = sampling_of(r); s != nullptr && r.confidence) {
      out += fmt::format("     sampled {} draws, seed {}, 95% CI [{:.2f}%, {:.2f}%]\n", s->count,
                         s->seed, pct(r.confidence->low), pct(r.confidence->high));
    }
  }
  return out;
}

std::string render(std::span<const CampaignResult> results, Format format) {
  switch (format) {
    case Format::text: return to_text(results);
    case Format::csv: return to_csv(results);
    case Format::json: return to_json(results);
  }
  return {};
}

}  // namespace sck::report
