#include "coshare/graph/coshare_graph.hpp"

#include <algorithm>
#include <limits>

#include "coshare/common/error.hpp"

namespace coshare::graph {

namespace {

void build_csr(std::size_t nodes, const std::vector<CoShareGraph::Edge>& edges, bool fake_side,
               std::vector<std::uint32_t>& offsets, std::vector<std::uint32_t>& adj) {
  offsets.assign(nodes + 1, 0);
  for (const auto& e : edges) ++offsets[(fake_side ? e.fake : e.reliable) + 1];
  for (std::size_t i = 0; i < nodes; ++i) offsets[i + 1] += offsets[i];
  adj.assign(edges.size(), 0);
  auto cursor = offsets;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto v = fake_side ? edges[i].fake : edges[i].reliable;
    adj[cursor[v]++] = static_cast<std::uint32_t>(i);
  }
}

std::optional<std::uint32_t> find_sorted(const std::vector<std::string>& v, std::string_view url) {
  auto it = std::lower_bound(v.begin(), v.end(), url);
  if (it == v.end() || *it != url) return std::nullopt;
  return static_cast<std::uint32_t>(it - v.begin());
}

}  // namespace

CoShareGraph::CoShareGraph(std::vector<std::string> fake_urls,
                           std::vector<std::string> reliable_urls, std::vector<Edge> edges)
    : fake_urls_(std::move(fake_urls)),
      reliable_urls_(std::move(reliable_urls)),
      edges_(std::move(edges)) {
  if (edges_.size() > std::numeric_limits<std::uint32_t>::max())
    throw DataError("co-share graph has too many edges");
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.fake != b.fake ? a.fake < b.fake : a.reliable < b.reliable;
  });
  fake_degree_.assign(fake_urls_.size(), 0);
  reliable_degree_.assign(reliable_urls_.size(), 0);
  for (const auto& e : edges_) {
    total_weight_ += e.weight;
    fake_degree_[e.fake] += e.weight;
    reliable_degree_[e.reliable] += e.weight;
  }
  build_csr(fake_urls_.size(), edges_, true, fake_offsets_, fake_adj_);
  build_csr(reliable_urls_.size(), edges_, false, reliable_offsets_, reliable_adj_);
}

CoShareGraph CoShareGraph::from_edges(std::vector<CoShareEdge> edges) {
  std::vector<std::string> fakes;
  std::vector<std::string> reliables;
  for (const auto& e : edges) {
    if (e.weight == 0) continue;
    fakes.push_back(e.fake_url);
    reliables.push_back(e.reliable_url);
  }
  std::sort(fakes.begin(), fakes.end());
  fakes.erase(std::unique(fakes.begin(), fakes.end()), fakes.end());
  std::sort(reliables.begin(), reliables.end());
  reliables.erase(std::unique(reliables.begin(), reliables.end()), reliables.end());

  std::vector<Edge> compact;
  compact.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.weight == 0) continue;
    compact.push_back({*find_sorted(fakes, e.fake_url), *find_sorted(reliables, e.reliable_url),
                       e.weight});
  }
  CoShareGraph g(std::move(fakes), std::move(reliables), std::move(compact));
  for (std::size_t i = 1; i < g.edges_.size(); ++i) {
    if (g.edges_[i].fake == g.edges_[i - 1].fake &&
        g.edges_[i].reliable == g.edges_[i - 1].reliable)
      throw DataError("duplicate co-share edge " + g.fake_urls_[g.edges_[i].fake] + " -> " +
                      g.reliable_urls_[g.edges_[i].reliable]);
  }
  return g;
}

std::span<const std::uint32_t> CoShareGraph::edges_of_fake(std::uint32_t v) const {
  return {fake_adj_.data() + fake_offsets_[v], fake_offsets_[v + 1] - fake_offsets_[v]};
}

std::span<const std::uint32_t> CoShareGraph::edges_of_reliable(std::uint32_t v) const {
  return {reliable_adj_.data() + reliable_offsets_[v],
          reliable_offsets_[v + 1] - reliable_offsets_[v]};
}

std::optional<std::uint32_t> CoShareGraph::find_fake(std::string_view url) const {
  return find_sorted(fake_urls_, url);
}

std::optional<std::uint32_t> CoShareGraph::find_reliable(std::string_view url) const {
  return find_sorted(reliable_urls_, url);
}

CoShareEdge CoShareGraph::edge(std::size_t index) const {
  const auto& e = edges_.at(index);
  return {fake_urls_[e.fake], reliable_urls_[e.reliable], e.weight};
}

std::vector<CoShareEdge> CoShareGraph::edge_list() const {
  std::vector<CoShareEdge> out;
  out.reserve(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) out.push_back(edge(i));
  return out;
}

CoShareGraph build_bipartite_coshare(const std::vector<corpus::ShareRecord>& records,
                                     const UrlClassifier& classify) {
  // Classify each distinct URL once.
  std::unordered_map<std::string_view, corpus::OutletKind> kinds;
  for (const auto& r : records) {
    if (!kinds.contains(r.url)) kinds.emplace(r.url, classify(r.url));
  }
  std::vector<std::string> fakes;
  std::vector<std::string> reliables;
  for (const auto& [url, kind] : kinds) {
    if (kind == corpus::OutletKind::fake) fakes.emplace_back(url);
    else if (kind == corpus::OutletKind::reliable) reliables.emplace_back(url);
  }
  std::sort(fakes.begin(), fakes.end());
  std::sort(reliables.begin(), reliables.end());

  struct UserShares {
    std::vector<std::uint32_t> fake;
    std::vector<std::uint32_t> reliable;
  };
  std::unordered_map<std::string_view, UserShares> users;
  for (const auto& r : records) {
    const auto kind = kinds.at(r.url);
    if (kind == corpus::OutletKind::fake) {
      users[r.user_id].fake.push_back(*find_sorted(fakes, r.url));
    } else if (kind == corpus::OutletKind::reliable) {
      users[r.user_id].reliable.push_back(*find_sorted(reliables, r.url));
    }
  }

  std::unordered_map<std::uint64_t, std::uint64_t> weights;
  for (auto& [user, s] : users) {
    if (s.fake.empty() || s.reliable.empty()) continue;
    std::sort(s.fake.begin(), s.fake.end());
    s.fake.erase(std::unique(s.fake.begin(), s.fake.end()), s.fake.end());
    std::sort(s.reliable.begin(), s.reliable.end());
    s.reliable.erase(std::unique(s.reliable.begin(), s.reliable.end()), s.reliable.end());
    for (auto f : s.fake)
      for (auto r : s.reliable) ++weights[(static_cast<std::uint64_t>(f) << 32) | r];
  }

  std::vector<CoShareGraph::Edge> edges;
  edges.reserve(weights.size());
  for (const auto& [key, w] : weights)
    edges.push_back({static_cast<std::uint32_t>(key >> 32),
                     static_cast<std::uint32_t>(key & 0xffffffffu), w});

  // Keep only nodes that carry at least one edge.
  std::vector<char> fake_used(fakes.size(), 0);
  std::vector<char> rel_used(reliables.size(), 0);
  for (const auto& e : edges) {
    fake_used[e.fake] = 1;
    rel_used[e.reliable] = 1;
  }
  std::vector<std::uint32_t> fake_map(fakes.size());
  std::vector<std::uint32_t> rel_map(reliables.size());
  std::vector<std::string> fake_nodes;
  std::vector<std::string> rel_nodes;
  for (std::size_t i = 0; i < fakes.size(); ++i) {
    if (!fake_used[i]) continue;
    fake_map[i] = static_cast<std::uint32_t>(fake_nodes.size());
    fake_nodes.push_back(std::move(fakes[i]));
  }
  for (std::size_t i = 0; i < reliables.size(); ++i) {
    if (!rel_used[i]) continue;
    rel_map[i] = static_cast<std::uint32_t>(rel_nodes.size());
    rel_nodes.push_back(std::move(reliables[i]));
  }
  for (auto& e : edges) {
    e.fake = fake_map[e.fake];
    e.reliable = rel_map[e.reliable];
  }
  return CoShareGraph(std::move(fake_nodes), std::move(rel_nodes), std::move(edges));
}

CoShareGraph build_bipartite_coshare(const std::vector<corpus::ShareRecord>& records,
                                     const corpus::DomainCatalog& catalog) {
  return build_bipartite_coshare(
      records, [&](std::string_view url) { return catalog.classify_url(url).kind; });
}

}  // namespace coshare::graph
