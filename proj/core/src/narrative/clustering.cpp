#include "coshare/narrative/clustering.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>

#include "coshare/common/error.hpp"
#include "coshare/common/rng.hpp"

namespace coshare::narrative {

ClusterModel::ClusterModel(Eigen::MatrixXd centroids, std::vector<std::string> labels,
                           std::map<std::string, std::uint32_t> membership, std::vector<std::size_t> sizes)
    : centroids_(std::move(centroids)),
      labels_(std::move(labels)),
      membership_(std::move(membership)),
      sizes_(std::move(sizes)) {
  for (const auto& [phrase, c] : membership_)
    if (c >= labels_.size()) throw DataError("cluster membership of '" + phrase + "' out of range");
}

ClusterModel ClusterModel::from_assignment(const std::map<std::string, std::string>& phrase_to_label) {
  std::vector<std::string> labels;
  for (const auto& [phrase, label] : phrase_to_label) labels.push_back(label);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  std::map<std::string, std::uint32_t> membership;
  std::vector<std::size_t> sizes(labels.size(), 0);
  for (const auto& [phrase, label] : phrase_to_label) {
    const auto c = static_cast<std::uint32_t>(std::lower_bound(labels.begin(), labels.end(), label) - labels.begin());
    membership.emplace(phrase, c);
    ++sizes[c];
  }
  return ClusterModel(Eigen::MatrixXd(), std::move(labels), std::move(membership), std::move(sizes));
}

std::optional<std::uint32_t> ClusterModel::nearest(const Eigen::VectorXd& v) const {
  if (centroids_.rows() == 0 || centroids_.cols() != v.size()) return std::nullopt;
  std::uint32_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Eigen::Index c = 0; c < centroids_.rows(); ++c) {
    const double d = (centroids_.row(c).transpose() - v).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = static_cast<std::uint32_t>(c);
    }
  }
  return best;
}

std::string ClusterModel::label_for(const Phrase& phrase, const EmbeddingModel* model) const {
  const std::string key = phrase.normalized();
  if (auto it = membership_.find(key); it != membership_.end()) return labels_[it->second];
  if (phrase.is_named) return key;
  if (model != nullptr) {
    const Eigen::VectorXd v = model->phrase_vector(phrase);
    if (v.squaredNorm() > 0.0)
      if (auto c = nearest(v)) return labels_[*c];
  }
  return key;
}

namespace {

std::uint32_t closest(const Eigen::MatrixXd& centroids, const Eigen::RowVectorXd& p, double& dist) {
  std::uint32_t best = 0;
  dist = std::numeric_limits<double>::infinity();
  for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
    const double d = (centroids.row(c) - p).squaredNorm();
    if (d < dist) {
      dist = d;
      best = static_cast<std::uint32_t>(c);
    }
  }
  return best;
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, const ClusterOptions& options) {
  const auto n = static_cast<std::size_t>(points.rows());
  if (k < 1) throw ConfigError("cluster count K must be >= 1");
  if (static_cast<std::size_t>(k) > n)
    throw ConfigError("cluster count K=" + std::to_string(k) + " exceeds the " + std::to_string(n) +
                      " distinct phrases; use a smaller K");
  KMeansResult out;
  out.assignment.assign(n, 0);
  if (static_cast<std::size_t>(k) == n) {
    out.centroids = points;
    for (std::size_t i = 0; i < n; ++i) out.assignment[i] = static_cast<std::uint32_t>(i);
    return out;
  }

  // k-means++ seeding.
  Rng rng(seed);
  Eigen::MatrixXd centroids(k, points.cols());
  std::vector<bool> chosen(n, false);
  std::size_t first = static_cast<std::size_t>(uniform_below(rng, n));
  centroids.row(0) = points.row(static_cast<Eigen::Index>(first));
  chosen[first] = true;
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = (points.row(static_cast<Eigen::Index>(i)) - centroids.row(0)).squaredNorm();
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += chosen[i] ? 0.0 : d2[i];
    std::size_t pick = n;
    if (total > 0.0) {
      double r = uniform01(rng) * total;
      for (std::size_t i = 0; i < n; ++i) {
        if (chosen[i] || d2[i] <= 0.0) continue;
        pick = i;
        r -= d2[i];
        if (r < 0.0) break;
      }
    }
    if (pick == n) {
      // Remaining points coincide with chosen centers: take the first unused.
      pick = static_cast<std::size_t>(std::find(chosen.begin(), chosen.end(), false) - chosen.begin());
    }
    chosen[pick] = true;
    centroids.row(c) = points.row(static_cast<Eigen::Index>(pick));
    for (std::size_t i = 0; i < n; ++i)
      d2[i] = std::min(d2[i], (points.row(static_cast<Eigen::Index>(i)) - centroids.row(c)).squaredNorm());
  }

  std::vector<double> dist(n);
  for (int it = 0; it < options.max_iterations; ++it) {
    out.iterations = it + 1;
    std::vector<std::size_t> count(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < n; ++i) {
      out.assignment[i] = closest(centroids, points.row(static_cast<Eigen::Index>(i)), dist[i]);
      ++count[out.assignment[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (count[static_cast<std::size_t>(c)] > 0) continue;
      const auto largest = static_cast<std::uint32_t>(std::max_element(count.begin(), count.end()) - count.begin());
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i)
        if (out.assignment[i] == largest && (far == n || dist[i] > dist[far])) far = i;
      out.assignment[far] = static_cast<std::uint32_t>(c);
      dist[far] = 0.0;
      --count[largest];
      ++count[static_cast<std::size_t>(c)];
    }
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(k, points.cols());
    for (std::size_t i = 0; i < n; ++i) next.row(out.assignment[i]) += points.row(static_cast<Eigen::Index>(i));
    for (int c = 0; c < k; ++c) next.row(c) /= static_cast<double>(count[static_cast<std::size_t>(c)]);
    double shift = 0.0;
    for (int c = 0; c < k; ++c) shift = std::max(shift, (next.row(c) - centroids.row(c)).norm());
    centroids = std::move(next);
    if (shift <= options.tolerance) break;
  }
  out.centroids = std::move(centroids);
  return out;
}

std::size_t distinct_clusterable(const std::vector<Phrase>& phrases) {
  std::vector<std::string> keys;
  for (const auto& p : phrases)
    if (!p.empty() && !p.is_named) keys.push_back(p.normalized());
  std::sort(keys.begin(), keys.end());
  return static_cast<std::size_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
}

ClusterModel cluster_roles(const std::vector<Phrase>& phrases, const EmbeddingModel& model, int k,
                           std::uint64_t seed, const ClusterOptions& options) {
  // Distinct phrases in lexicographic order, with occurrence counts and a
  // representative for the vector.
  std::map<std::string, std::pair<std::size_t, const Phrase*>> distinct;
  for (const auto& p : phrases) {
    if (p.empty() || p.is_named) continue;
    auto [it, inserted] = distinct.try_emplace(p.normalized(), 0, &p);
    ++it->second.first;
  }
  if (distinct.empty()) throw DataError("no phrases to cluster");
  Eigen::MatrixXd points(static_cast<Eigen::Index>(distinct.size()), model.d());
  std::vector<std::string> keys;
  std::vector<std::size_t> freq;
  Eigen::Index row = 0;
  for (const auto& [key, entry] : distinct) {
    points.row(row++) = model.phrase_vector(*entry.second).transpose();
    keys.push_back(key);
    freq.push_back(entry.first);
  }

  const auto result = kmeans(points, k, seed, options);
  std::vector<std::string> labels(static_cast<std::size_t>(k));
  std::vector<std::size_t> best(static_cast<std::size_t>(k), 0);
  std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
  std::map<std::string, std::uint32_t> membership;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto c = result.assignment[i];
    membership.emplace(keys[i], c);
    sizes[c] += freq[i];
    // Keys arrive in lexicographic order, so strict > keeps the smallest on ties.
    if (labels[c].empty() || freq[i] > best[c]) {
      labels[c] = keys[i];
      best[c] = freq[i];
    }
  }
  return ClusterModel(result.centroids, std::move(labels), std::move(membership), std::move(sizes));
}

void save_clusters(const ClusterModel& model, const std::filesystem::path& stem) {
  auto bin = stem;
  bin += ".bin";
  write_matrix(bin, model.centroids(), "CSCEN001");
  nlohmann::ordered_json meta;
  meta["format"] = "CSCEN001 little-endian float64 row-major";
  meta["k"] = model.k();
  meta["labels"] = model.labels();
  meta["sizes"] = model.sizes();
  nlohmann::ordered_json members = nlohmann::ordered_json::object();
  for (const auto& [phrase, c] : model.membership()) members[phrase] = c;
  meta["membership"] = std::move(members);
  auto json = stem;
  json += ".json";
  std::ofstream out(json);
  if (!out) throw DataError("cannot write " + json.string());
  out << meta.dump(1) << '\n';
}

ClusterModel load_clusters(const std::filesystem::path& stem) {
  auto json = stem;
  json += ".json";
  std::ifstream in(json);
  if (!in) throw DataError("cannot read " + json.string());
  nlohmann::json meta;
  try {
    in >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(json.string() + ": " + e.what());
  }
  auto bin = stem;
  bin += ".bin";
  std::map<std::string, std::uint32_t> membership;
  for (const auto& [phrase, c] : meta.at("membership").items()) membership.emplace(phrase, c.get<std::uint32_t>());
  return ClusterModel(read_matrix(bin, "CSCEN001"), meta.at("labels").get<std::vector<std::string>>(),
                      std::move(membership), meta.at("sizes").get<std::vector<std::size_t>>());
}

}  // namespace coshare::narrative
