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

#include "sck/table2.hpp"

#include <fmt/format.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "sck/report.hpp"

namespace sck::table2 {

using coverage::CampaignResult;
using coverage::CampaignSpec;

namespace {

constexpr std::array<PublishedRow, 6> kPublished = {{
    {1, "128", 128, {95.31, 96.88, 97.66}},
    {2, "1024", 1024, {96.88, 98.44, 98.83}},
    {3, "6144", 6144, {97.40, 98.96, 99.22}},
    {4, "7808", 7808, {97.66, 99.22, 99.41}},
    {8, "16x2^20", std::uint64_t{16} << 20, {98.05, 99.61, 99.71}},
    {16, "6x2^30", std::uint64_t{6} << 30, {98.18, 99.74, 99.80}},
}};

constexpr std::array<std::string_view, 3> kColumnNames = {"Tech1", "Tech2", "Tech 1&2"};

double pct(double f) { return 100.0 * f; }

}  // namespace

std::span<const PublishedRow> published_rows() noexcept { return kPublished; }

const PublishedRow* published_row(int width) noexcept {
  for (const PublishedRow& r : kPublished) {
    if (r.width == width) return &r;
  }
  return nullptr;
}

std::vector<Row> run(const Options& options) {
  std::vector<int> widths = options.widths;
  if (options.full) widths.push_back(16);
  std::vector<Row> rows;
  for (int n : widths) {
    const bool sampled = !coverage::within_budget(n, options.run.budget);
    Row row{n, sampled, {}, published_row(n)};
    for (std::size_t t = 0; t < kTechniques.size(); ++t) {
      CampaignSpec spec{Operator::add, kTechniques[t], n, coverage::Mode::same_unit,
                        coverage::Exhaustive{}};
      if (sampled) spec.sampling = coverage::Sampled{options.samples, options.seed};
      row.results[t] = coverage::run_campaign(spec, options.run);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string to_text(std::span<const Row> rows) {
  std::string out =
      "Fault coverage of the self-checking + operator, ripple-carry adder, same unit\n"
      "(published value and delta in percentage points alongside)\n\n";
  out += fmt::format("{:>6} | {:>20} |", "# bits", "# fault situations");
  for (std::string_view name : kColumnNames) out += fmt::format(" {:>26} |", name);
  out += "\n" + std::string(6 + 3 + 20 + 2 + 3 * 29, '-') + "\n";
  std::string notes;
  for (const Row& row : rows) {
    std::string total = std::to_string(row.results[0].total());
    if (row.sampled) total = "~" + std::to_string(row.results[0].total()) + " sampled";
    out += fmt::format("{:>6} | {:>20} |", row.width, total);
    for (std::size_t t = 0; t < kTechniques.size(); ++t) {
      const double ours = pct(row.results[t].coverage());
      if (row.published != nullptr) {
        const double theirs = row.published->coverage_pct[t];
        out += fmt::format(" {:>6.2f}% [{:>6.2f}%, {:+5.2f}] |", ours, theirs, ours - theirs);
      } else {
        out += fmt::format(" {:>6.2f}% {:>18} |", ours, "");
      }
    }
    out += "\n";
    if (row.published != nullptr && !row.sampled) {
      const std::uint64_t formula = coverage::situation_count(row.width);
      if (row.published->total_value != formula) {
        notes += fmt::format(
            "note: published total for {} bits is {}, but 32 * n * 4^n = {}; the formula "
            "defines the enumerated space\n",
            row.width, row.published->printed_total, formula);
      }
    }
    if (row.sampled) {
      const auto& s = std::get<coverage::Sampled>(row.results[0].spec.sampling);
      notes += fmt::format("note: {} bits sampled with {} draws per technique, seed {}\n",
                           row.width, s.count, s.seed);
    }
  }
  if (!notes.empty()) out += "\n" + notes;
  return out;
}

std::string to_csv(std::span<const Row> rows) {
  std::string out = report::csv_header() + ",published_pct,delta_pp\n";
  for (const Row& row : rows) {
    for (std::size_t t = 0; t < kTechniques.size(); ++t) {
      out += report::csv_row(row.results[t]);
      if (row.published != nullptr) {
        const double theirs = row.published->coverage_pct[t];
        out += fmt::format(",{:.2f},{:.6f}\n", theirs, pct(row.results[t].coverage()) - theirs);
      } else {
        out += ",,\n";
      }
    }
  }
  return out;
}

std::string to_json(std::span<const Row> rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Row& row : rows) {
    const std::string campaigns = report::to_json(row.results);
    nlohmann::ordered_json parsed = nlohmann::ordered_json::parse(campaigns);
    for (std::size_t t = 0; t < kTechniques.size(); ++t) {
      nlohmann::ordered_json& j = parsed[t];
      if (row.published != nullptr) {
        const double theirs = row.published->coverage_pct[t];
        j["published_pct"] = theirs;
        j["delta_pp"] = std::round((pct(row.results[t].coverage()) - theirs) * 1e6) / 1e6;
        j["published_total"] = row.published->printed_total;
      }
      arr.push_back(std::move(j));
    }
  }
  return arr.dump(2) + "\n";
}

}  // namespace sck::table2
