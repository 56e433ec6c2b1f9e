#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "coshare/narrative/roles.hpp"

namespace coshare::narrative {

struct EmbeddingOptions {
  int d = 100;
  int window = 5;
  std::uint64_t seed = 0;
  int power_iterations = 4;
  int oversample = 10;
};

class EmbeddingModel {
 public:
  EmbeddingModel() = default;
  /// `vocabulary` sorted and unique; `vectors` has one row per word.
  EmbeddingModel(std::vector<std::string> vocabulary, Eigen::MatrixXd vectors);

  [[nodiscard]] int d() const { return static_cast<int>(vectors_.cols()); }
  [[nodiscard]] std::size_t size() const { return vocabulary_.size(); }
  [[nodiscard]] const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  [[nodiscard]] const Eigen::MatrixXd& vectors() const { return vectors_; }

  [[nodiscard]] const std::uint32_t* find(std::string_view token) const;
  /// Zero vector for unknown tokens.
  [[nodiscard]] Eigen::VectorXd vector(std::string_view token) const;
  /// Mean of the member token vectors (surface token first, lemma as fallback).
  [[nodiscard]] Eigen::VectorXd phrase_vector(const Phrase& phrase) const;
  [[nodiscard]] double cosine(std::string_view a, std::string_view b) const;

 private:
  std::vector<std::string> vocabulary_;
  std::unordered_map<std::string, std::uint32_t> index_;
  Eigen::MatrixXd vectors_;
};

/// Sentences of each text as lowercase tokens with punctuation removed.
std::vector<std::vector<std::string>> embedding_corpus(const std::vector<std::string>& texts);

std::vector<std::string> build_vocabulary(const std::vector<std::vector<std::string>>& sentences);

/// Symmetric-window co-occurrence counts (each pair within `window` tokens
/// inside a sentence adds 1 to both (a,b) and (b,a)).
Eigen::SparseMatrix<double> cooccurrence_counts(const std::vector<std::vector<std::string>>& sentences,
                                                const std::vector<std::string>& vocabulary, int window);

/// max(0, log(c_ij * total / (row_i * col_j))).
Eigen::SparseMatrix<double> ppmi(const Eigen::SparseMatrix<double>& counts);

struct TruncatedSvd {
  Eigen::MatrixXd u;
  Eigen::VectorXd s;  // descending
  Eigen::MatrixXd v;
};

/// Randomized range finder with power iterations; exact when rank + oversample
/// covers the matrix.
TruncatedSvd truncated_svd(const Eigen::SparseMatrix<double>& m, int rank, std::uint64_t seed,
                           int power_iterations = 4, int oversample = 10);

/// Rows of U * sqrt(S), L2-normalized (all-zero rows stay zero). The
/// dimension is min(d, vocabulary size).
EmbeddingModel train_embeddings(const std::vector<std::vector<std::string>>& sentences,
                                const EmbeddingOptions& options);
EmbeddingModel train_embeddings(const std::vector<std::string>& texts, const EmbeddingOptions& options);

/// <stem>.bin: "CSEMB001", uint32 rows, uint32 cols, rows*cols float64
/// row-major, all little-endian. <stem>.json: vocabulary and metadata.
void save_embeddings(const EmbeddingModel& model, const std::filesystem::path& stem,
                     const EmbeddingOptions& options);
EmbeddingModel load_embeddings(const std::filesystem::path& stem);

/// Flat little-endian matrix IO shared by the model files.
void write_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m, std::string_view magic);
Eigen::MatrixXd read_matrix(const std::filesystem::path& path, std::string_view magic);

}  // namespace coshare::narrative
