#include "coshare/graph/io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <string>

#include "coshare/common/error.hpp"
#include "coshare/common/format.hpp"

namespace coshare::graph {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  return in;
}

[[noreturn]] void bad_row(const std::filesystem::path& path, std::size_t line) {
  throw DataError(path.string() + ":" + std::to_string(line) + ": malformed row");
}

}  // namespace

void write_edges_tsv(const std::filesystem::path& path, const CoShareGraph& graph,
                     const std::vector<EdgeScore>& scores) {
  auto out = open_out(path);
  out << "fake_url\treliable_url\tweight\tsignificance\tscore\n";
  for (const auto& s : scores) {
    const auto& e = graph.edges().at(s.edge);
    out << graph.fake_urls()[e.fake] << '\t' << graph.reliable_urls()[e.reliable] << '\t'
        << e.weight << '\t' << format_double(s.significance) << '\t' << format_double(s.score)
        << '\n';
  }
}

ScoredGraph read_edges_tsv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  std::getline(in, line);
  struct Row {
    CoShareEdge edge;
    double significance;
    double score;
  };
  std::vector<Row> rows;
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    auto f = split(line, '\t');
    if (f.size() != 5) bad_row(path, n);
    auto w = parse_int(f[2]);
    auto sig = parse_double(f[3]);
    auto sc = parse_double(f[4]);
    if (!w || *w < 1 || !sig || !sc) bad_row(path, n);
    rows.push_back({{std::string(f[0]), std::string(f[1]), static_cast<std::uint64_t>(*w)}, *sig, *sc});
  }
  std::vector<CoShareEdge> edges;
  edges.reserve(rows.size());
  for (const auto& r : rows) edges.push_back(r.edge);
  ScoredGraph sg;
  sg.graph = CoShareGraph::from_edges(std::move(edges));
  sg.scores.resize(rows.size());
  const auto& ge = sg.graph.edges();
  for (const auto& r : rows) {
    const auto f = *sg.graph.find_fake(r.edge.fake_url);
    const auto rel = *sg.graph.find_reliable(r.edge.reliable_url);
    auto it = std::lower_bound(ge.begin(), ge.end(), std::pair{f, rel},
                               [](const CoShareGraph::Edge& e, const std::pair<std::uint32_t, std::uint32_t>& key) {
                                 return e.fake != key.first ? e.fake < key.first : e.reliable < key.second;
                               });
    const auto idx = static_cast<std::uint32_t>(it - ge.begin());
    sg.scores[idx] = {idx, r.significance, r.score};
  }
  return sg;
}

void write_thresholds_json(const std::filesystem::path& path,
                           const std::vector<ThresholdEstimate>& thresholds) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& t : thresholds) {
    nlohmann::ordered_json o;
    o["quantile"] = t.quantile;
    o["point"] = t.point;
    o["ci_low"] = t.ci_low;
    o["ci_high"] = t.ci_high;
    o["n_samples"] = t.n_samples;
    o["sample_dim"] = t.sample_dim;
    o["seed"] = t.seed;
    arr.push_back(std::move(o));
  }
  nlohmann::ordered_json doc;
  doc["thresholds"] = std::move(arr);
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

std::vector<ThresholdEstimate> read_thresholds_json(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<ThresholdEstimate> out;
  try {
    const auto doc = nlohmann::json::parse(in);
    for (const auto& o : doc.at("thresholds")) {
      ThresholdEstimate t;
      t.quantile = o.at("quantile").get<double>();
      t.point = o.at("point").get<double>();
      t.ci_low = o.at("ci_low").get<double>();
      t.ci_high = o.at("ci_high").get<double>();
      t.n_samples = o.at("n_samples").get<std::size_t>();
      t.sample_dim = o.at("sample_dim").get<std::size_t>();
      t.seed = o.at("seed").get<std::uint64_t>();
      out.push_back(t);
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return out;
}

void write_groups_tsv(const std::filesystem::path& path, const std::vector<GroupAssignment>& groups) {
  auto out = open_out(path);
  out << "url\tdomain\tgroup\tmax_score\tagg_score\n";
  for (const auto& g : groups) {
    out << g.url << '\t' << g.domain << '\t' << to_string(g.group) << '\t'
        << format_double(g.max_score) << '\t' << format_double(g.agg_score) << '\n';
  }
}

std::vector<GroupAssignment> read_groups_tsv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  std::getline(in, line);
  std::vector<GroupAssignment> out;
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    auto f = split(line, '\t');
    if (f.size() != 5) bad_row(path, n);
    auto g = parse_group(f[2]);
    auto mx = parse_double(f[3]);
    auto ag = parse_double(f[4]);
    if (!g || !mx || !ag) bad_row(path, n);
    out.push_back({std::string(f[0]), std::string(f[1]), *g, *mx, *ag});
  }
  return out;
}

}  // namespace coshare::graph
