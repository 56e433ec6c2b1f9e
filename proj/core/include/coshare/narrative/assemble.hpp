#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "coshare/narrative/clustering.hpp"
#include "coshare/narrative/embeddings.hpp"
#include "coshare/narrative/roles.hpp"

namespace coshare::narrative {

enum class Dimensionality { low, high };

std::string to_string(Dimensionality d);
Dimensionality parse_dimensionality(std::string_view s);

struct NarrativeLabel {
  std::string text;  // components joined by single spaces
  Dimensionality dimensionality = Dimensionality::low;
  std::vector<std::string> components;

  bool operator==(const NarrativeLabel&) const = default;
};

/// Role tuples of every sentence of a text; sentence ids are positions in
/// the sentence list.
std::vector<RoleTuple> extract_text_tuples(std::string_view text);

/// Labels at both dimensionalities (low first), deduplicated per
/// dimensionality in emission order. Incomplete tuples yield nothing.
std::vector<NarrativeLabel> assemble_narratives(const std::vector<RoleTuple>& tuples, const ClusterModel& low,
                                                const ClusterModel& high, const EmbeddingModel* model = nullptr);

/// Labels of one dimensionality only.
std::vector<NarrativeLabel> assemble_narratives(const std::vector<RoleTuple>& tuples, const ClusterModel& clusters,
                                                Dimensionality dimensionality, const EmbeddingModel* model = nullptr);

}  // namespace coshare::narrative
