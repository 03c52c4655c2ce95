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

#ifndef SCK_TABLE2_HPP_
#define SCK_TABLE2_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sck/coverage.hpp"

namespace sck::table2 {

/// Published coverage figures for the self-checking + operator on a
/// ripple-carry adder, same functional unit for the nominal and control
/// operations.
struct PublishedRow {
  int width;
  std::string_view printed_total;           // as printed
  std::optional<std::uint64_t> total_value;  // when printed as a plain number
  std::array<double, 3> coverage_pct;       // tech1, tech2, both
};

std::span<const PublishedRow> published_rows() noexcept;
const PublishedRow* published_row(int width) noexcept;

/// Published 2-bit detection figures: observable errors and detections per
/// technique.
inline constexpr std::uint64_t kPublishedObservable2Bit = 216;
inline constexpr std::array<std::uint64_t, 3> kPublishedDetections2Bit = {352, 384, 428};

inline constexpr std::array<CheckTechnique, 3> kTechniques = {
    CheckTechnique::tech1, CheckTechnique::tech2, CheckTechnique::both};

struct Options {
  std::vector<int> widths = {1, 2, 3, 4, 8};
  bool full = false;  // adds a sampled 16-bit row
  std::uint64_t samples = 10'000'000;
  std::uint64_t seed = 42;
  coverage::RunOptions run;
};

struct Row {
  int width;
  bool sampled;
  std::array<coverage::CampaignResult, 3> results;  // kTechniques order
  const PublishedRow* published;                    // may be null
};

std::vector<Row> run(const Options& options);

std::string to_text(std::span<const Row> rows);
/// Campaign CSV columns plus published_pct and delta_pp.
std::string to_csv(std::span<const Row> rows);
std::string to_json(std::span<const Row> rows);

}  // namespace sck::table2

#endif  // SCK_TABLE2_HPP_
