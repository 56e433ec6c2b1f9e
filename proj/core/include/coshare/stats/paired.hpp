#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "coshare/library/library.hpp"

namespace coshare::stats {

struct PairedSample {
  std::vector<std::string> labels;  // library order
  std::vector<double> l_cs;         // share of the co-shared collection
  std::vector<double> l_co;         // share of the control collection
};

/// Label occurrence counts of a group's narrative collection.
using LabelCounts = std::map<std::string, std::size_t>;

/// l[i] = count(label_i) / total count of all labels in the group; zero when
/// a group has no labels at all.
PairedSample build_paired_vectors(const library::NarrativeLibrary& library, const LabelCounts& coshared,
                                  const LabelCounts& control);

}  // namespace coshare::stats
