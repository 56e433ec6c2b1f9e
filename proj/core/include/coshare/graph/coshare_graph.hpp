#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "coshare/corpus/catalog.hpp"
#include "coshare/corpus/records.hpp"

namespace coshare::graph {

/// Fake URL x reliable URL pair with the number of distinct users who shared both.
struct CoShareEdge {
  std::string fake_url;
  std::string reliable_url;
  std::uint64_t weight = 0;

  friend bool operator==(const CoShareEdge&, const CoShareEdge&) = default;
};

/// Bipartite weighted graph in compact form. Node ids index the sorted URL
/// lists of each side; edges are sorted by (fake, reliable).
class CoShareGraph {
 public:
  struct Edge {
    std::uint32_t fake = 0;
    std::uint32_t reliable = 0;
    std::uint64_t weight = 0;
  };

  CoShareGraph() = default;

  /// Builds from an explicit edge list. Duplicate pairs are a DataError,
  /// zero weights are dropped.
  static CoShareGraph from_edges(std::vector<CoShareEdge> edges);

  [[nodiscard]] const std::vector<std::string>& fake_urls() const { return fake_urls_; }
  [[nodiscard]] const std::vector<std::string>& reliable_urls() const { return reliable_urls_; }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] bool empty() const { return edges_.empty(); }

  /// T, the total edge weight.
  [[nodiscard]] std::uint64_t total_weight() const { return total_weight_; }
  [[nodiscard]] std::uint64_t fake_degree(std::uint32_t v) const { return fake_degree_[v]; }
  [[nodiscard]] std::uint64_t reliable_degree(std::uint32_t v) const { return reliable_degree_[v]; }

  /// Edge indices incident to a node.
  [[nodiscard]] std::span<const std::uint32_t> edges_of_fake(std::uint32_t v) const;
  [[nodiscard]] std::span<const std::uint32_t> edges_of_reliable(std::uint32_t v) const;

  [[nodiscard]] std::optional<std::uint32_t> find_fake(std::string_view url) const;
  [[nodiscard]] std::optional<std::uint32_t> find_reliable(std::string_view url) const;

  [[nodiscard]] CoShareEdge edge(std::size_t index) const;
  [[nodiscard]] std::vector<CoShareEdge> edge_list() const;

  /// Internal constructor used by the builders.
  CoShareGraph(std::vector<std::string> fake_urls, std::vector<std::string> reliable_urls,
               std::vector<Edge> edges);

 private:
  std::vector<std::string> fake_urls_;
  std::vector<std::string> reliable_urls_;
  std::vector<Edge> edges_;
  std::uint64_t total_weight_ = 0;
  std::vector<std::uint64_t> fake_degree_;
  std::vector<std::uint64_t> reliable_degree_;
  std::vector<std::uint32_t> fake_offsets_;
  std::vector<std::uint32_t> fake_adj_;
  std::vector<std::uint32_t> reliable_offsets_;
  std::vector<std::uint32_t> reliable_adj_;
};

using UrlClassifier = std::function<corpus::OutletKind(std::string_view url)>;

/// Weight of (f, r) = number of distinct users who shared both f and r.
/// URLs classified `unknown` are ignored.
CoShareGraph build_bipartite_coshare(const std::vector<corpus::ShareRecord>& records,
                                     const UrlClassifier& classify);

CoShareGraph build_bipartite_coshare(const std::vector<corpus::ShareRecord>& records,
                                     const corpus::DomainCatalog& catalog);

}  // namespace coshare::graph
