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

#ifndef SCK_REPORT_HPP_
#define SCK_REPORT_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "sck/coverage.hpp"

namespace sck::report {

enum class Format { text, csv, json };

std::optional<Format> parse_format(std::string_view s) noexcept;

/// operator,technique,mode,width,total,correct_silent,detected_silent,
/// detected_erroneous,masked,skipped,coverage_pct,detection_pct,sample_count,
/// seed,ci_low,ci_high
std::string csv_header();
/// One CSV line (no trailing newline). Percentages carry 6 decimals; seed and
/// interval columns are empty for exhaustive runs.
std::string csv_row(const coverage::CampaignResult& r);

std::string to_csv(std::span<const coverage::CampaignResult> results);
/// A JSON array with one object per campaign, same fields as the CSV.
std::string to_json(std::span<const coverage::CampaignResult> results);
/// Aligned human-readable table, percentages to 2 decimals.
std::string to_text(std::span<const coverage::CampaignResult> results);

std::string render(std::span<const coverage::CampaignResult> results, Format format);

}  // namespace sck::report

#endif  // SCK_REPORT_HPP_
