#include "coshare/narrative/embeddings.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>

#include "coshare/common/error.hpp"
#include "coshare/common/log.hpp"
#include "coshare/common/rng.hpp"

namespace coshare::narrative {

EmbeddingModel::EmbeddingModel(std::vector<std::string> vocabulary, Eigen::MatrixXd vectors)
    : vocabulary_(std::move(vocabulary)), vectors_(std::move(vectors)) {
  if (static_cast<Eigen::Index>(vocabulary_.size()) != vectors_.rows())
    throw DataError("embedding vocabulary and vector rows differ");
  index_.reserve(vocabulary_.size());
  for (std::size_t i = 0; i < vocabulary_.size(); ++i) index_.emplace(vocabulary_[i], static_cast<std::uint32_t>(i));
}

const std::uint32_t* EmbeddingModel::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? nullptr : &it->second;
}

Eigen::VectorXd EmbeddingModel::vector(std::string_view token) const {
  if (const auto* i = find(token)) return vectors_.row(*i).transpose();
  return Eigen::VectorXd::Zero(vectors_.cols());
}

Eigen::VectorXd EmbeddingModel::phrase_vector(const Phrase& phrase) const {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(vectors_.cols());
  int found = 0;
  for (std::size_t k = 0; k < phrase.tokens.size(); ++k) {
    const std::uint32_t* i = find(phrase.tokens[k]);
    if (i == nullptr && k < phrase.lemmas.size()) i = find(phrase.lemmas[k]);
    if (i == nullptr) continue;
    sum += vectors_.row(*i).transpose();
    ++found;
  }
  if (found > 0) sum /= found;
  return sum;
}

double EmbeddingModel::cosine(std::string_view a, std::string_view b) const {
  const Eigen::VectorXd x = vector(a);
  const Eigen::VectorXd y = vector(b);
  const double nx = x.norm();
  const double ny = y.norm();
  if (nx == 0.0 || ny == 0.0) return 0.0;
  return x.dot(y) / (nx * ny);
}

std::vector<std::vector<std::string>> embedding_corpus(const std::vector<std::string>& texts) {
  std::vector<std::vector<std::string>> out;
  for (const auto& text : texts) {
    for (const auto& sentence : split_sentences(text)) {
      std::vector<std::string> words;
      for (const auto& token : tokenize(sentence.text)) {
        auto w = strip_punctuation(token.text);
        if (!w.empty()) words.push_back(std::move(w));
      }
      if (!words.empty()) out.push_back(std::move(words));
    }
  }
  return out;
}

std::vector<std::string> build_vocabulary(const std::vector<std::vector<std::string>>& sentences) {
  std::vector<std::string> vocab;
  for (const auto& s : sentences) vocab.insert(vocab.end(), s.begin(), s.end());
  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
  return vocab;
}

Eigen::SparseMatrix<double> cooccurrence_counts(const std::vector<std::vector<std::string>>& sentences,
                                                const std::vector<std::string>& vocabulary, int window) {
  if (window < 1) throw ConfigError("embedding window must be >= 1");
  std::unordered_map<std::string_view, int> index;
  index.reserve(vocabulary.size());
  for (std::size_t i = 0; i < vocabulary.size(); ++i) index.emplace(vocabulary[i], static_cast<int>(i));
  std::vector<Eigen::Triplet<double>> triplets;
  std::vector<int> ids;
  for (const auto& s : sentences) {
    ids.clear();
    for (const auto& w : s) {
      auto it = index.find(w);
      ids.push_back(it == index.end() ? -1 : it->second);
    }
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (ids[i] < 0) continue;
      const std::size_t end = std::min(ids.size(), i + 1 + static_cast<std::size_t>(window));
      for (std::size_t j = i + 1; j < end; ++j) {
        if (ids[j] < 0) continue;
        triplets.emplace_back(ids[i], ids[j], 1.0);
        triplets.emplace_back(ids[j], ids[i], 1.0);
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(vocabulary.size());
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

Eigen::SparseMatrix<double> ppmi(const Eigen::SparseMatrix<double>& counts) {
  Eigen::VectorXd row = Eigen::VectorXd::Zero(counts.rows());
  Eigen::VectorXd col = Eigen::VectorXd::Zero(counts.cols());
  double total = 0.0;
  for (int k = 0; k < counts.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(counts, k); it; ++it) {
      row[it.row()] += it.value();
      col[it.col()] += it.value();
      total += it.value();
    }
  }
  std::vector<Eigen::Triplet<double>> triplets;
  for (int k = 0; k < counts.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(counts, k); it; ++it) {
      if (it.value() <= 0.0) continue;
      const double pmi = std::log(it.value() * total / (row[it.row()] * col[it.col()]));
      if (pmi > 0.0) triplets.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), pmi);
    }
  }
  Eigen::SparseMatrix<double> out(counts.rows(), counts.cols());
  out.setFromTriplets(triplets.begin(), triplets.end());
  out.makeCompressed();
  return out;
}

namespace {

Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
  return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

}  // namespace

TruncatedSvd truncated_svd(const Eigen::SparseMatrix<double>& m, int rank, std::uint64_t seed,
                           int power_iterations, int oversample) {
  if (rank < 1) throw ConfigError("svd rank must be >= 1");
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  const Eigen::Index k = std::min<Eigen::Index>(std::min(rows, cols), rank + std::max(0, oversample));
  TruncatedSvd out;
  if (k == 0) return out;

  Rng rng(seed);
  Eigen::MatrixXd omega(cols, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < cols; ++i) omega(i, j) = standard_normal(rng);

  Eigen::MatrixXd q = orthonormal_basis(m * omega);
  for (int it = 0; it < power_iterations; ++it) {
    const Eigen::MatrixXd z = orthonormal_basis(m.transpose() * q);
    q = orthonormal_basis(m * z);
  }
  const Eigen::MatrixXd b = (m.transpose() * q).transpose();  // k x cols
  Eigen::BDCSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::Index r = std::min<Eigen::Index>(rank, svd.singularValues().size());
  out.u = (q * svd.matrixU()).leftCols(r);
  out.s = svd.singularValues().head(r);
  out.v = svd.matrixV().leftCols(r);
  return out;
}

EmbeddingModel train_embeddings(const std::vector<std::vector<std::string>>& sentences,
                                const EmbeddingOptions& options) {
  if (options.d < 1) throw ConfigError("embedding dimension d must be >= 1");
  auto vocab = build_vocabulary(sentences);
  if (vocab.empty()) throw DataError("embedding corpus is empty");
  const auto v = static_cast<int>(vocab.size());
  const int d = std::min(options.d, v);
  if (d < options.d) logger().info("embedding dimension reduced from {} to vocabulary size {}", options.d, v);

  const auto m = ppmi(cooccurrence_counts(sentences, vocab, options.window));
  Eigen::MatrixXd vectors = Eigen::MatrixXd::Zero(v, d);
  if (m.nonZeros() > 0) {
    const auto svd = truncated_svd(m, d, options.seed, options.power_iterations, options.oversample);
    const Eigen::Index r = svd.s.size();
    vectors.leftCols(r) = svd.u * svd.s.cwiseSqrt().asDiagonal();
  }
  for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
    const double norm = vectors.row(i).norm();
    if (norm > 0.0) vectors.row(i) /= norm;
  }
  return EmbeddingModel(std::move(vocab), std::move(vectors));
}

EmbeddingModel train_embeddings(const std::vector<std::string>& texts, const EmbeddingOptions& options) {
  return train_embeddings(embedding_corpus(texts), options);
}

namespace {

void put_u32(std::ostream& out, std::uint32_t x) {
  std::array<char, 4> b{};
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((x >> (8 * i)) & 0xFF);
  out.write(b.data(), 4);
}

void put_f64(std::ostream& out, double value) {
  const auto bits = std::bit_cast<std::uint64_t>(value);
  std::array<char, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
  out.write(b.data(), 8);
}

std::uint64_t get_le(std::istream& in, int bytes) {
  std::array<unsigned char, 8> b{};
  in.read(reinterpret_cast<char*>(b.data()), bytes);
  if (!in) throw DataError("truncated model file");
  std::uint64_t x = 0;
  for (int i = bytes - 1; i >= 0; --i) x = (x << 8) | b[i];
  return x;
}

}  // namespace

void write_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m, std::string_view magic) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(magic.data(), static_cast<std::streamsize>(magic.size()));
  put_u32(out, static_cast<std::uint32_t>(m.rows()));
  put_u32(out, static_cast<std::uint32_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) put_f64(out, m(i, j));
  if (!out) throw DataError("failed writing " + path.string());
}

Eigen::MatrixXd read_matrix(const std::filesystem::path& path, std::string_view magic) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::string header(magic.size(), '\0');
  in.read(header.data(), static_cast<std::streamsize>(header.size()));
  if (!in || header != magic) throw DataError(path.string() + ": bad magic");
  const auto rows = static_cast<Eigen::Index>(get_le(in, 4));
  const auto cols = static_cast<Eigen::Index>(get_le(in, 4));
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = std::bit_cast<double>(get_le(in, 8));
  return m;
}

void save_embeddings(const EmbeddingModel& model, const std::filesystem::path& stem,
                     const EmbeddingOptions& options) {
  auto bin = stem;
  bin += ".bin";
  write_matrix(bin, model.vectors(), "CSEMB001");
  nlohmann::ordered_json meta;
  meta["format"] = "CSEMB001 little-endian float64 row-major";
  meta["rows"] = model.size();
  meta["d"] = model.d();
  meta["window"] = options.window;
  meta["seed"] = options.seed;
  meta["power_iterations"] = options.power_iterations;
  meta["oversample"] = options.oversample;
  meta["vocabulary"] = model.vocabulary();
  auto json = stem;
  json += ".json";
  std::ofstream out(json);
  if (!out) throw DataError("cannot write " + json.string());
  out << meta.dump(1) << '\n';
}

EmbeddingModel load_embeddings(const std::filesystem::path& stem) {
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
  auto vectors = read_matrix(bin, "CSEMB001");
  return EmbeddingModel(meta.at("vocabulary").get<std::vector<std::string>>(), std::move(vectors));
}

}  // namespace coshare::narrative
