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

#include "rptree/formats.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rptree/error.hpp"

namespace rpt {
namespace {

using json = nlohmann::json;

constexpr int kFormatVersion = 1;

json provenance_json(const Provenance& provenance) {
  json p = json::object();
  p["tool"] = std::string(kToolName);
  p["version"] = std::string(kToolVersion);
  for (const auto& [k, v] : provenance) p[k] = v;
  return p;
}

std::string provenance_csv(const Provenance& provenance) {
  std::string out = "# " + std::string(kToolName) + " " + std::string(kToolVersion) + "\n";
  for (const auto& [k, v] : provenance) out += "# " + k + ": " + v + "\n";
  return out;
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse, std::string(what) + ": " + e.what());
  }
}

template <typename T>
T get_field(const json& obj, const char* key, const char* what) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(Errc::parse, std::string(what) + "." + key + ": missing");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(Errc::parse, std::string(what) + "." + key + ": " + e.what());
  }
}

void check_version(const json& doc, const char* what) {
  if (get_field<int>(doc, "format_version", what) != kFormatVersion) {
    throw Error(Errc::parse, std::string(what) + ".format_version: unsupported");
  }
}

double parse_double(std::string_view s, const std::string& where) {
  // Trim surrounding whitespace.
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(Errc::parse, where + ": '" + std::string(s) + "' is not a number");
  }
  return v;
}

int parse_int(std::string_view s, const std::string& where) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(Errc::parse, where + ": '" + std::string(s) + "' is not an integer");
  }
  return v;
}

bool is_number(std::string_view s) {
  double v = 0.0;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
}

json path_json(const TreePath& p) { return json(p.indices); }

TreePath path_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw Error(Errc::parse, std::string(what) + ".path: expected an array");
  TreePath p;
  for (const auto& b : j) {
    if (!b.is_number_integer()) throw Error(Errc::parse, std::string(what) + ".path: expected integers");
    p.indices.push_back(b.get<int>());
  }
  return p;
}

TreePath path_from_string(std::string_view s) {
  return path_from_json(parse_json(s, "path"), "path");
}

std::size_t column_index(const CsvRow& header, std::string_view name, const char* what) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(Errc::parse, std::string(what) + ": missing column '" + std::string(name) + "'");
}

const std::string& cell(const CsvRow& row, std::size_t i, std::size_t line, const char* what) {
  if (i >= row.size()) {
    throw Error(Errc::parse, std::string(what) + " row " + std::to_string(line) + ": too few fields");
  }
  return row[i];
}

template <typename Record>
json group_json(const Record& g) {
  json j;
  j["path"] = path_json(g.path);
  j["layer"] = g.layer;
  j["node_index"] = g.mapped_node.index;
  j["s_plus"] = g.s_plus;
  j["s_minus"] = g.s_minus;
  return j;
}

template <typename Record>
std::string groups_document(const std::vector<Record>& groups, const Provenance& provenance) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["provenance"] = provenance_json(provenance);
  json arr = json::array();
  for (const auto& g : groups) arr.push_back(group_json(g));
  doc["groups"] = std::move(arr);
  return doc.dump(2) + "\n";
}

const json& groups_array(const json& doc) {
  if (doc.is_array()) return doc;
  check_version(doc, "groups file");
  const json& arr = doc.at("groups");
  if (!arr.is_array()) throw Error(Errc::parse, "groups file.groups: expected an array");
  return arr;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error(Errc::io, "cannot format number");
  return std::string(buf, ptr);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(Errc::io, "write failed for " + path.string());
}

std::vector<CsvRow> parse_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::size_t next = eol + 1;
    if (line.empty() || line.front() == '#') {
      pos = next;
      continue;
    }
    // Quoted fields never span lines in the files this tool reads or writes.
    CsvRow row;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          field.push_back(c);
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        row.push_back(std::move(field));
        field.clear();
      } else {
        field.push_back(c);
      }
    }
    if (quoted) throw Error(Errc::parse, "csv: unterminated quote in '" + std::string(line) + "'");
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
    pos = next;
  }
  return rows;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

std::vector<Eigen::VectorXd> parse_reference_inputs(std::string_view text) {
  auto rows = parse_csv(text);
  std::size_t first = 0;
  if (!rows.empty() && !std::all_of(rows[0].begin(), rows[0].end(), is_number)) first = 1;
  std::vector<Eigen::VectorXd> out;
  for (std::size_t r = first; r < rows.size(); ++r) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(rows[r].size()));
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      v(static_cast<Eigen::Index>(c)) =
          parse_double(rows[r][c], "reference inputs row " + std::to_string(r + 1));
    }
    if (!v.allFinite()) {
      throw Error(Errc::non_finite, "reference inputs row " + std::to_string(r + 1));
    }
    if (!out.empty() && v.size() != out.front().size()) {
      throw Error(Errc::shape_mismatch,
                  "reference inputs row " + std::to_string(r + 1) + " has a different length");
    }
    out.push_back(std::move(v));
  }
  if (out.empty()) throw Error(Errc::parse, "reference inputs: no rows");
  return out;
}

std::map<std::string, double> parse_score_table(std::string_view text) {
  auto rows = parse_csv(text);
  if (rows.empty()) throw Error(Errc::parse, "score table: missing header");
  std::map<std::string, double> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& id = cell(rows[r], 0, r, "score table");
    const double v = parse_double(cell(rows[r], 1, r, "score table"),
                                  "score table row " + std::to_string(r));
    if (!out.emplace(id, v).second) {
      throw Error(Errc::parse, "score table: duplicate item '" + id + "'");
    }
  }
  return out;
}

std::set<std::string> parse_item_list(std::string_view text) {
  std::set<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.pop_back();
    }
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    out.insert(line.substr(start));
  }
  return out;
}

std::vector<double> parse_value_column(std::string_view text, std::string_view column) {
  auto rows = parse_csv(text);
  if (rows.empty()) throw Error(Errc::parse, "value list: empty");
  std::size_t col = 0;
  std::size_t first = 0;
  if (!is_number(rows[0].front())) {
    first = 1;
    if (!column.empty()) {
      col = column_index(rows[0], column, "value list");
    } else {
      for (std::size_t i = 0; i < rows[0].size(); ++i) {
        if (rows[0][i] == "p_value") col = i;
      }
    }
  } else if (!column.empty()) {
    throw Error(Errc::parse, "value list: no header row to find column '" + std::string(column) + "'");
  }
  std::vector<double> out;
  for (std::size_t r = first; r < rows.size(); ++r) {
    out.push_back(parse_double(cell(rows[r], col, r, "value list"),
                               "value list row " + std::to_string(r)));
  }
  if (out.empty()) throw Error(Errc::parse, "value list: no values");
  return out;
}

std::string serialize_tree(const RankProjectionTree& tree, const Provenance& provenance) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["provenance"] = provenance_json(provenance);
  doc["network_digest"] = tree.network_digest();
  json spec;
  spec["kind"] = std::string(to_string(tree.spec().kind));
  spec["seed"] = tree.spec().seed;
  json refs = json::array();
  for (const auto& x : tree.spec().reference_inputs) {
    refs.push_back(std::vector<double>(x.data(), x.data() + x.size()));
  }
  spec["reference_inputs"] = std::move(refs);
  doc["spec"] = std::move(spec);
  doc["half_branch"] = tree.half_branch();
  doc["layer_sizes"] = tree.layer_sizes();
  json nodes = json::array();
  for (int d = 0; d <= tree.depth(); ++d) {
    const auto& level = tree.nodes_at(d);
    for (std::size_t k = 0; k < level.size(); ++k) {
      json n;
      n["path"] = path_json(tree.path_at(d, k));
      n["layer"] = level[k].layer;
      n["node_index"] = level[k].index;
      nodes.push_back(std::move(n));
    }
  }
  doc["nodes"] = std::move(nodes);
  return doc.dump(2) + "\n";
}

RankProjectionTree parse_tree(std::string_view text) {
  const json doc = parse_json(text, "tree file");
  check_version(doc, "tree file");
  const int half_branch = get_field<int>(doc, "half_branch", "tree file");
  const auto sizes = get_field<std::vector<int>>(doc, "layer_sizes", "tree file");
  if (half_branch < 1 || sizes.empty()) throw Error(Errc::parse, "tree file: bad header");

  const json& spec_json = doc.at("spec");
  RankingSpec spec;
  spec.kind = parse_rank_kind(get_field<std::string>(spec_json, "kind", "tree file.spec"));
  spec.seed = get_field<std::uint64_t>(spec_json, "seed", "tree file.spec");
  for (const auto& row : get_field<std::vector<std::vector<double>>>(spec_json, "reference_inputs",
                                                                     "tree file.spec")) {
    spec.reference_inputs.push_back(Eigen::Map<const Eigen::VectorXd>(
        row.data(), static_cast<Eigen::Index>(row.size())));
  }

  const int depth = static_cast<int>(sizes.size()) - 1;
  const auto fan = static_cast<std::size_t>(2 * half_branch);
  std::vector<std::vector<NodeRef>> images(sizes.size());
  std::vector<std::vector<bool>> seen(sizes.size());
  std::size_t width = 1;
  for (int d = 0; d <= depth; ++d) {
    images[static_cast<std::size_t>(d)].assign(width, NodeRef{-1, 0});
    seen[static_cast<std::size_t>(d)].assign(width, false);
    if (d < depth) width *= fan;
  }
  const json& nodes = doc.at("nodes");
  if (!nodes.is_array()) throw Error(Errc::parse, "tree file.nodes: expected an array");
  for (const auto& n : nodes) {
    const TreePath path = path_from_json(n.at("path"), "tree file.nodes");
    if (path.depth() > depth) throw Error(Errc::parse, "tree file: path " + to_string(path) + " too deep");
    std::size_t slot = 0;
    for (int b : path.indices) slot = slot * fan + static_cast<std::size_t>(slot_of_branch(b, half_branch));
    const auto d = static_cast<std::size_t>(path.depth());
    if (seen[d][slot]) throw Error(Errc::parse, "tree file: duplicate path " + to_string(path));
    seen[d][slot] = true;
    images[d][slot] = NodeRef{get_field<int>(n, "layer", "tree file.nodes"),
                              get_field<int>(n, "node_index", "tree file.nodes")};
  }
  for (const auto& level : seen) {
    if (std::find(level.begin(), level.end(), false) != level.end()) {
      throw Error(Errc::parse, "tree file: incomplete node list");
    }
  }
  return RankProjectionTree(half_branch, sizes, std::move(spec),
                            get_field<std::string>(doc, "network_digest", "tree file"),
                            std::move(images));
}

std::string serialize_groups(const std::vector<GroupRecord>& groups, const Provenance& provenance) {
  return groups_document(groups, provenance);
}

std::string serialize_groups(const std::vector<GeneGroupRecord>& groups,
                             const Provenance& provenance) {
  return groups_document(groups, provenance);
}

std::vector<GeneGroupRecord> parse_groups(std::string_view text) {
  const json doc = parse_json(text, "groups file");
  std::vector<GeneGroupRecord> out;
  auto members = [](const json& arr) {
    std::vector<std::string> s;
    if (!arr.is_array()) throw Error(Errc::parse, "groups file: member list must be an array");
    for (const auto& v : arr) {
      if (v.is_string()) {
        s.push_back(v.get<std::string>());
      } else if (v.is_number_integer()) {
        s.push_back(std::to_string(v.get<long long>()));
      } else {
        throw Error(Errc::parse, "groups file: members must be strings or integers");
      }
    }
    return s;
  };
  for (const auto& g : groups_array(doc)) {
    GeneGroupRecord rec;
    rec.path = path_from_json(g.at("path"), "groups file");
    rec.layer = get_field<int>(g, "layer", "groups file");
    rec.mapped_node = NodeRef{rec.layer, get_field<int>(g, "node_index", "groups file")};
    rec.s_plus = members(g.at("s_plus"));
    rec.s_minus = members(g.at("s_minus"));
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<GroupRecord> parse_index_groups(std::string_view text) {
  const json doc = parse_json(text, "groups file");
  std::vector<GroupRecord> out;
  for (const auto& g : groups_array(doc)) {
    GroupRecord rec;
    rec.path = path_from_json(g.at("path"), "groups file");
    rec.layer = get_field<int>(g, "layer", "groups file");
    rec.mapped_node = NodeRef{rec.layer, get_field<int>(g, "node_index", "groups file")};
    rec.s_plus = get_field<std::vector<int>>(g, "s_plus", "groups file");
    rec.s_minus = get_field<std::vector<int>>(g, "s_minus", "groups file");
    out.push_back(std::move(rec));
  }
  return out;
}

ModuleMap parse_module_map(std::string_view text) {
  const json doc = parse_json(text, "module map");
  if (!doc.is_object()) throw Error(Errc::parse, "module map: expected an object");
  ModuleMap out;
  for (const auto& [key, value] : doc.items()) {
    const int index = parse_int(key, "module map key");
    if (index < 1) throw Error(Errc::parse, "module map key " + key + ": inputs are 1-based");
    Module m;
    m.module_id = get_field<std::string>(value, "module_id", "module map entry");
    m.genes = get_field<std::vector<std::string>>(value, "genes", "module map entry");
    out.emplace(index, std::move(m));
  }
  return out;
}

std::string serialize_module_map(const ModuleMap& modules) {
  json doc = json::object();
  for (const auto& [index, m] : modules) {
    doc[std::to_string(index)] = json{{"module_id", m.module_id}, {"genes", m.genes}};
  }
  return doc.dump(2) + "\n";
}

std::string serialize_salience(const SalienceMap& map, const Provenance& provenance) {
  std::string out = provenance_csv(provenance);
  out += "input_index,score,covered,aggregator\n";
  for (std::size_t i = 0; i < map.scores.size(); ++i) {
    out += std::to_string(i + 1) + "," + format_double(map.scores[i]) + "," +
           (map.covered[i] ? "1" : "0") + "," + csv_escape(map.method) + "\n";
  }
  return out;
}

SalienceMap parse_salience(std::string_view text) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw Error(Errc::parse, "salience file: missing header");
  const auto& header = rows[0];
  const auto c_index = column_index(header, "input_index", "salience file");
  const auto c_score = column_index(header, "score", "salience file");
  const auto c_cov = column_index(header, "covered", "salience file");
  const auto c_agg = column_index(header, "aggregator", "salience file");
  SalienceMap map;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const int index = parse_int(cell(rows[r], c_index, r, "salience file"), "salience input_index");
    if (index != static_cast<int>(r)) {
      throw Error(Errc::parse, "salience file: rows must list inputs 1..N in order");
    }
    map.scores.push_back(parse_double(cell(rows[r], c_score, r, "salience file"), "salience score"));
    map.covered.push_back(cell(rows[r], c_cov, r, "salience file") == "1");
    const auto& method = cell(rows[r], c_agg, r, "salience file");
    if (r == 1) {
      map.method = method;
    } else if (method != map.method) {
      throw Error(Errc::parse, "salience file: mixed aggregators");
    }
  }
  map.rank_by_magnitude = map.method.rfind("signed-", 0) == 0;
  return map;
}

std::string serialize_ranked_inputs(const std::vector<std::pair<int, double>>& ranked,
                                    const Provenance& provenance) {
  std::string out = provenance_csv(provenance);
  out += "rank,input_index,score\n";
  for (std::size_t p = 0; p < ranked.size(); ++p) {
    out += std::to_string(p + 1) + "," + std::to_string(ranked[p].first) + "," +
           format_double(ranked[p].second) + "\n";
  }
  return out;
}

std::string serialize_comparison(const RankingComparison& cmp, const Provenance& provenance) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["provenance"] = provenance_json(provenance);
  doc["k"] = cmp.k;
  doc["raw_l1"] = cmp.raw_l1;
  doc["normalizer"] = cmp.normalizer;
  doc["normalized"] = cmp.normalized;
  doc["items"] = cmp.items;
  doc["truth_ranks"] = cmp.truth_ranks;
  doc["missing_truth"] = cmp.missing_truth;
  return doc.dump(2) + "\n";
}

RankingComparison parse_comparison(std::string_view text) {
  const json doc = parse_json(text, "comparison");
  check_version(doc, "comparison");
  RankingComparison cmp;
  cmp.k = get_field<int>(doc, "k", "comparison");
  cmp.raw_l1 = get_field<long long>(doc, "raw_l1", "comparison");
  cmp.normalizer = get_field<long long>(doc, "normalizer", "comparison");
  cmp.normalized = get_field<double>(doc, "normalized", "comparison");
  cmp.items = get_field<std::vector<std::string>>(doc, "items", "comparison");
  cmp.truth_ranks = get_field<std::vector<int>>(doc, "truth_ranks", "comparison");
  cmp.missing_truth = get_field<std::vector<std::string>>(doc, "missing_truth", "comparison");
  return cmp;
}

std::string serialize_enrichment(const std::vector<GroupEnrichment>& rows,
                                 const Provenance& provenance) {
  std::string out = provenance_csv(provenance);
  out += "path,layer,node_index,sign,population,successes,sample,observed,p_value\n";
  for (const auto& r : rows) {
    out += csv_escape(to_string(r.path)) + "," + std::to_string(r.layer) + "," +
           std::to_string(r.mapped_node.index) + "," + r.sign + "," +
           std::to_string(r.result.population) + "," + std::to_string(r.result.successes) + "," +
           std::to_string(r.result.sample) + "," + std::to_string(r.result.observed) + "," +
           format_double(r.result.p_value) + "\n";
  }
  return out;
}

std::vector<GroupEnrichment> parse_enrichment(std::string_view text) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw Error(Errc::parse, "enrichment file: missing header");
  std::vector<GroupEnrichment> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 9) throw Error(Errc::parse, "enrichment row " + std::to_string(r) + ": expected 9 fields");
    GroupEnrichment g;
    g.path = path_from_string(row[0]);
    g.layer = parse_int(row[1], "enrichment layer");
    g.mapped_node = NodeRef{g.layer, parse_int(row[2], "enrichment node_index")};
    if (row[3] != "+" && row[3] != "-") throw Error(Errc::parse, "enrichment sign must be + or -");
    g.sign = row[3][0];
    g.result.population = parse_int(row[4], "enrichment population");
    g.result.successes = parse_int(row[5], "enrichment successes");
    g.result.sample = parse_int(row[6], "enrichment sample");
    g.result.observed = parse_int(row[7], "enrichment observed");
    g.result.p_value = parse_double(row[8], "enrichment p_value");
    out.push_back(std::move(g));
  }
  return out;
}

std::string serialize_ks(const KsResult& result, const Provenance& provenance) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["provenance"] = provenance_json(provenance);
  doc["direction"] = std::string(to_string(result.direction));
  doc["size_a"] = result.size_a;
  doc["size_b"] = result.size_b;
  doc["statistic"] = result.statistic;
  doc["p_value"] = result.p_value;
  return doc.dump(2) + "\n";
}

KsResult parse_ks(std::string_view text) {
  const json doc = parse_json(text, "ks result");
  check_version(doc, "ks result");
  KsResult r;
  r.direction = parse_ks_direction(get_field<std::string>(doc, "direction", "ks result"));
  r.size_a = get_field<std::size_t>(doc, "size_a", "ks result");
  r.size_b = get_field<std::size_t>(doc, "size_b", "ks result");
  r.statistic = get_field<double>(doc, "statistic", "ks result");
  r.p_value = get_field<double>(doc, "p_value", "ks result");
  return r;
}

std::string serialize_ecdf(const std::vector<std::pair<double, double>>& points,
                           const Provenance& provenance) {
  std::string out = provenance_csv(provenance);
  out += "x,F\n";
  for (const auto& [x, f] : points) out += format_double(x) + "," + format_double(f) + "\n";
  return out;
}

std::vector<std::pair<double, double>> parse_ecdf(std::string_view text) {
  const auto rows = parse_csv(text);
  std::vector<std::pair<double, double>> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    out.emplace_back(parse_double(cell(rows[r], 0, r, "ecdf"), "ecdf x"),
                     parse_double(cell(rows[r], 1, r, "ecdf"), "ecdf F"));
  }
  return out;
}

}  // namespace rpt
