#include "coshare/narrative/assemble.hpp"

#include <algorithm>
#include <set>

#include "coshare/common/error.hpp"

namespace coshare::narrative {

std::string to_string(Dimensionality d) { return d == Dimensionality::low ? "low" : "high"; }

Dimensionality parse_dimensionality(std::string_view s) {
  if (s == "low") return Dimensionality::low;
  if (s == "high") return Dimensionality::high;
  throw ConfigError("unknown dimensionality '" + std::string(s) + "' (expected low or high)");
}

std::vector<RoleTuple> extract_text_tuples(std::string_view text) {
  std::vector<RoleTuple> out;
  const auto sentences = split_sentences(text);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    auto tuples = extract_role_tuples(sentences[i].text, i);
    out.insert(out.end(), std::make_move_iterator(tuples.begin()), std::make_move_iterator(tuples.end()));
  }
  return out;
}

std::vector<NarrativeLabel> assemble_narratives(const std::vector<RoleTuple>& tuples, const ClusterModel& clusters,
                                                Dimensionality dimensionality, const EmbeddingModel* model) {
  std::vector<NarrativeLabel> out;
  std::set<std::string> seen;
  auto label_of = [&](const Phrase& p) { return clusters.label_for(p, model); };
  for (const auto& tuple : tuples) {
    if (!tuple.complete()) continue;
    for (auto& parts : label_components(tuple, label_of)) {
      NarrativeLabel label;
      for (const auto& part : parts) {
        if (!label.text.empty()) label.text += ' ';
        label.text += part;
      }
      if (!seen.insert(label.text).second) continue;
      label.dimensionality = dimensionality;
      label.components = std::move(parts);
      out.push_back(std::move(label));
    }
  }
  return out;
}

std::vector<NarrativeLabel> assemble_narratives(const std::vector<RoleTuple>& tuples, const ClusterModel& low,
                                                const ClusterModel& high, const EmbeddingModel* model) {
  auto out = assemble_narratives(tuples, low, Dimensionality::low, model);
  auto hi = assemble_narratives(tuples, high, Dimensionality::high, model);
  out.insert(out.end(), std::make_move_iterator(hi.begin()), std::make_move_iterator(hi.end()));
  return out;
}

}  // namespace coshare::narrative
