#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coshare/narrative/embeddings.hpp"
#include "coshare/narrative/roles.hpp"

namespace coshare::narrative {

struct ClusterOptions {
  int max_iterations = 100;
  double tolerance = 1e-8;  // max centroid shift (Euclidean) to stop
};

class ClusterModel {
 public:
  ClusterModel() = default;
  ClusterModel(Eigen::MatrixXd centroids, std::vector<std::string> labels,
               std::map<std::string, std::uint32_t> membership, std::vector<std::size_t> sizes);

  /// Fixed phrase -> label table with no centroids (used for hand-made
  /// assignments and tests).
  static ClusterModel from_assignment(const std::map<std::string, std::string>& phrase_to_label);

  [[nodiscard]] int k() const { return static_cast<int>(labels_.size()); }
  [[nodiscard]] const Eigen::MatrixXd& centroids() const { return centroids_; }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] const std::map<std::string, std::uint32_t>& membership() const { return membership_; }
  /// Occurrence count of member phrases per cluster.
  [[nodiscard]] const std::vector<std::size_t>& sizes() const { return sizes_; }

  /// Nearest centroid, ties to the lowest index.
  [[nodiscard]] std::optional<std::uint32_t> nearest(const Eigen::VectorXd& v) const;

  /// Training member -> its cluster label; names pass through; otherwise the
  /// nearest centroid of the phrase vector; otherwise the normalized phrase.
  [[nodiscard]] std::string label_for(const Phrase& phrase, const EmbeddingModel* model) const;

 private:
  Eigen::MatrixXd centroids_;
  std::vector<std::string> labels_;
  std::map<std::string, std::uint32_t> membership_;
  std::vector<std::size_t> sizes_;
};

struct KMeansResult {
  Eigen::MatrixXd centroids;
  std::vector<std::uint32_t> assignment;
  int iterations = 0;
};

/// k-means++ seeding then Lloyd iterations. Rows of `points` are the data.
/// An empty cluster takes the point farthest from its centroid in the
/// largest cluster.
KMeansResult kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, const ClusterOptions& options = {});

/// Clusters the distinct non-named phrases (keyed by normalized form) of the
/// given role occurrences. Errors when k exceeds the number of distinct
/// phrases.
ClusterModel cluster_roles(const std::vector<Phrase>& phrases, const EmbeddingModel& model, int k,
                           std::uint64_t seed, const ClusterOptions& options = {});

/// Number of distinct clusterable phrases (the upper bound for k).
std::size_t distinct_clusterable(const std::vector<Phrase>& phrases);

/// <stem>.bin holds the centroids ("CSCEN001" layout, see write_matrix);
/// <stem>.json holds labels, sizes and the membership table.
void save_clusters(const ClusterModel& model, const std::filesystem::path& stem);
ClusterModel load_clusters(const std::filesystem::path& stem);

}  // namespace coshare::narrative
