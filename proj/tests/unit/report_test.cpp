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
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "sck/coverage.hpp"
#include "sck/report.hpp"
#include "sck/table2.hpp"

namespace {

using sck::CheckTechnique;
using sck::Operator;
using namespace sck::coverage;
namespace report = sck::report;
namespace table2 = sck::table2;

CampaignResult exhaustive(Operator op, CheckTechnique t, int n) {
  return run_exhaustive({op, t, n, Mode::same_unit, Exhaustive{}});
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(Csv, HeaderAndExhaustiveRow) {
  EXPECT_EQ(report::csv_header(),
            "operator,technique,mode,width,total,correct_silent,detected_silent,"
            "detected_erroneous,masked,skipped,coverage_pct,detection_pct,sample_count,"
            "seed,ci_low,ci_high");
  EXPECT_EQ(report::csv_row(exhaustive(Operator::add, CheckTechnique::tech1, 2)),
            "add,tech1,same-unit,2,1024,592,180,216,36,0,96.484375,38.671875,0,,,");
}

TEST(Csv, SampledRowCarriesSeedAndInterval) {
  const auto r = run_sampled(
      {Operator::add, CheckTechnique::tech1, 8, Mode::same_unit, Sampled{10'000, 3}});
  const auto row = report::csv_row(r);
  EXPECT_NE(row.find(",10000,3,"), std::string::npos) << row;
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 15);
  EXPECT_NE(row.back(), ',');
}

TEST(Csv, DocumentHasHeaderThenRows) {
  const std::vector<CampaignResult> rs = {exhaustive(Operator::add, CheckTechnique::tech1, 1),
                                          exhaustive(Operator::sub, CheckTechnique::both, 1)};
  const auto ls = lines(report::to_csv(rs));
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[0], report::csv_header());
  EXPECT_EQ(ls[2], report::csv_row(rs[1]));
}

TEST(Json, FieldsMatchResult) {
  const std::vector<CampaignResult> rs = {exhaustive(Operator::div, CheckTechnique::tech2, 2)};
  const auto doc = nlohmann::json::parse(report::to_json(rs));
  ASSERT_TRUE(doc.is_array());
  ASSERT_EQ(doc.size(), 1u);
  const auto& o = doc[0];
  EXPECT_EQ(o["operator"], "div");
  EXPECT_EQ(o["technique"], "tech2");
  EXPECT_EQ(o["width"], 2);
  EXPECT_EQ(o["total"].get<std::uint64_t>(), rs[0].total());
  EXPECT_EQ(o["masked"].get<std::uint64_t>(), rs[0].counts.masked);
  EXPECT_EQ(o["skipped"].get<std::uint64_t>(), rs[0].skipped);
  EXPECT_NEAR(o["coverage_pct"].get<double>(), 100.0 * rs[0].coverage(), 1e-6);
  EXPECT_TRUE(o["seed"].is_null());
}

TEST(Text, MentionsEveryRow) {
  const std::vector<CampaignResult> rs = {exhaustive(Operator::mul, CheckTechnique::tech1, 2)};
  const auto text = report::to_text(rs);
  EXPECT_NE(text.find("same-unit"), std::string::npos);
  EXPECT_NE(text.find("1024"), std::string::npos);
  EXPECT_EQ(report::render(rs, report::Format::csv), report::to_csv(rs));
  EXPECT_EQ(report::render(rs, report::Format::text), text);
}

TEST(Format, Parse) {
  EXPECT_EQ(report::parse_format("csv"), report::Format::csv);
  EXPECT_EQ(report::parse_format("json"), report::Format::json);
  EXPECT_EQ(report::parse_format("text"), report::Format::text);
  EXPECT_FALSE(report::parse_format("xml"));
}

TEST(AddCoverageTable, PublishedRows) {
  ASSERT_NE(table2::published_row(1), nullptr);
  EXPECT_DOUBLE_EQ(table2::published_row(1)->coverage_pct[0], 95.31);
  EXPECT_EQ(table2::published_row(4)->total_value, 7808u);
  EXPECT_EQ(table2::published_row(8)->total_value, situation_count(8));
  EXPECT_EQ(table2::published_row(5), nullptr);
}

TEST(AddCoverageTable, RowsEqualExhaustiveCampaigns) {
  table2::Options opt;
  opt.widths = {1, 2, 3, 4};
  const auto rows = table2::run(opt);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& row : rows) {
    EXPECT_FALSE(row.sampled);
    for (std::size_t t = 0; t < 3; ++t) {
      EXPECT_EQ(row.results[t], exhaustive(Operator::add, table2::kTechniques[t], row.width));
    }
  }
  EXPECT_EQ(lines(table2::to_csv(rows)).size(), 1u + 4u * 3u);
  const auto text = table2::to_text(rows);
  EXPECT_NE(text.find("7808"), std::string::npos);
  EXPECT_NE(text.find("32768"), std::string::npos);
  const auto doc = nlohmann::json::parse(table2::to_json(rows));
  EXPECT_FALSE(doc.empty());
}

TEST(AddCoverageTable, OverBudgetWidthIsSampled) {
  table2::Options opt;
  opt.widths = {9};
  opt.samples = 20'000;
  opt.run.budget = 1'000'000;
  const auto rows = table2::run(opt);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].sampled);
  EXPECT_TRUE(rows[0].results[0].confidence);
}

}  // namespace
