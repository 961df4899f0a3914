// Copyright 2026 The rptree Authors.
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

#ifndef RPTREE_FORMATS_HPP_
#define RPTREE_FORMATS_HPP_

#include <Eigen/Dense>

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rptree/salience.hpp"
#include "rptree/stats.hpp"
#include "rptree/tree.hpp"

namespace rpt {

inline constexpr std::string_view kToolName = "rpt";
inline constexpr std::string_view kToolVersion = "1.0.0";

// Ordered key/value pairs describing how an output was produced. Written as a
// "provenance" object in JSON outputs and as leading "# key: value" lines in
// CSV outputs. Never contains timestamps, so reruns are byte-identical.
using Provenance = std::vector<std::pair<std::string, std::string>>;

// Shortest round-trip decimal representation, independent of locale.
std::string format_double(double v);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

// ---- CSV -----------------------------------------------------------------
// Comma separated, '.' decimal point, optional double-quoted fields. Lines
// starting with '#' and blank lines are skipped.
using CsvRow = std::vector<std::string>;
std::vector<CsvRow> parse_csv(std::string_view text);
std::string csv_escape(std::string_view field);

/// Numeric matrix rows; a leading non-numeric row is taken as a header.
std::vector<Eigen::VectorXd> parse_reference_inputs(std::string_view text);
/// Two-column (item, score) table with a header row.
std::map<std::string, double> parse_score_table(std::string_view text);
/// One item per line; blanks and '#' comments ignored.
std::set<std::string> parse_item_list(std::string_view text);
/// Values of `column` (by header name) or, if empty, of the first column that
/// is named p_value, else the first column.
std::vector<double> parse_value_column(std::string_view text, std::string_view column = {});

// ---- Tree file -------------------------------------------------------------
std::string serialize_tree(const RankProjectionTree& tree, const Provenance& provenance = {});
RankProjectionTree parse_tree(std::string_view text);

// ---- Groups file -----------------------------------------------------------
std::string serialize_groups(const std::vector<GroupRecord>& groups,
                             const Provenance& provenance = {});
std::string serialize_groups(const std::vector<GeneGroupRecord>& groups,
                             const Provenance& provenance = {});
// Reads either flavour. Integer members are rendered as decimal strings.
std::vector<GeneGroupRecord> parse_groups(std::string_view text);
std::vector<GroupRecord> parse_index_groups(std::string_view text);

// ---- Module map --------------------------------------------------------------
ModuleMap parse_module_map(std::string_view text);
std::string serialize_module_map(const ModuleMap& modules);

// ---- Salience CSV ------------------------------------------------------------
// Columns input_index,score,covered,aggregator; one row per input in index
// order.
std::string serialize_salience(const SalienceMap& map, const Provenance& provenance = {});
SalienceMap parse_salience(std::string_view text);
std::string serialize_ranked_inputs(const std::vector<std::pair<int, double>>& ranked,
                                    const Provenance& provenance = {});

// ---- Statistics outputs ------------------------------------------------------
std::string serialize_comparison(const RankingComparison& cmp, const Provenance& provenance = {});
RankingComparison parse_comparison(std::string_view text);
std::string serialize_enrichment(const std::vector<GroupEnrichment>& rows,
                                 const Provenance& provenance = {});
std::vector<GroupEnrichment> parse_enrichment(std::string_view text);
std::string serialize_ks(const KsResult& result, const Provenance& provenance = {});
KsResult parse_ks(std::string_view text);
std::string serialize_ecdf(const std::vector<std::pair<double, double>>& points,
                           const Provenance& provenance = {});
std::vector<std::pair<double, double>> parse_ecdf(std::string_view text);

}  // namespace rpt

#endif  // RPTREE_FORMATS_HPP_
